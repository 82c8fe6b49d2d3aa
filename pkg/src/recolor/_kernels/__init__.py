"""Search kernel backends: compiled when the extension built, else pure."""

from . import _pyconfig

try:
    from . import _cconfig  # type: ignore[attr-defined]
except ImportError:
    _cconfig = None

BACKEND = "py" if _cconfig is None else "c"

bfs_reach_dense = (_cconfig or _pyconfig).bfs_reach_dense
bfs_reach_sparse = _pyconfig.bfs_reach_sparse

STATUS_FOUND = _pyconfig.STATUS_FOUND
STATUS_EXHAUSTED = _pyconfig.STATUS_EXHAUSTED
STATUS_CAP = _pyconfig.STATUS_CAP


def available_backends() -> tuple[str, ...]:
    return ("py",) if _cconfig is None else ("c", "py")


def dense_kernel(name: str):
    """Fetch a specific backend's dense kernel (for benchmarks/tests)."""
    if name == "py":
        return _pyconfig.bfs_reach_dense
    if name == "c":
        if _cconfig is None:
            raise ValueError("compiled kernel unavailable")
        return _cconfig.bfs_reach_dense
    raise ValueError(f"unknown backend {name!r}")
