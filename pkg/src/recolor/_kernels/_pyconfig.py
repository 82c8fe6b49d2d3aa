"""Pure-Python search kernels over the configuration space.

States are proper palette-colorings of a graph encoded as mixed-radix
integers: node v contributes digit ``color(v) - 1`` with weight
``palette ** v``.  Moves recolor a single node while staying proper.

Kernels return ``(status, explored, dist)`` where status is 1 (target
found), 0 (component exhausted) or -1 (cap exceeded); ``explored``
counts states enqueued and ``dist`` is the move distance (-1 if not
found).  The compiled kernel module mirrors ``bfs_reach_dense`` exactly.
"""

from __future__ import annotations

STATUS_FOUND = 1
STATUS_EXHAUSTED = 0
STATUS_CAP = -1


def encode(digits, palette: int) -> int:
    code = 0
    for d in reversed(digits):
        code = code * palette + d
    return code


def decode(code: int, palette: int, n: int) -> list[int]:
    digits = []
    for _ in range(n):
        digits.append(code % palette)
        code //= palette
    return digits


def bfs_reach_dense(indptr, indices, palette, start_digits, target_digits):
    """Level-synchronous BFS with a flat bitmap over the nominal space."""
    n = len(start_digits)
    nominal = palette ** n
    start = encode(start_digits, palette)
    target = encode(target_digits, palette)
    if start == target:
        return STATUS_FOUND, 1, 0
    visited = bytearray((nominal + 7) // 8)
    visited[start >> 3] |= 1 << (start & 7)
    frontier = [start]
    explored = 1
    dist = 0
    weights = [palette ** v for v in range(n)]
    while frontier:
        dist += 1
        nxt = []
        for code in frontier:
            digits = decode(code, palette, n)
            for v in range(n):
                old = digits[v]
                base = code - old * weights[v]
                nbr_digits = {digits[u] for u in
                              indices[indptr[v]:indptr[v + 1]]}
                for nd in range(palette):
                    if nd == old or nd in nbr_digits:
                        continue
                    new_code = base + nd * weights[v]
                    if visited[new_code >> 3] >> (new_code & 7) & 1:
                        continue
                    if new_code == target:
                        return STATUS_FOUND, explored + 1, dist
                    visited[new_code >> 3] |= 1 << (new_code & 7)
                    explored += 1
                    nxt.append(new_code)
        frontier = nxt
    return STATUS_EXHAUSTED, explored, -1


def bfs_reach_sparse(indptr, indices, palette, start_digits, target_digits,
                     cap):
    """Hash-set BFS for spaces too large for a bitmap, bounded by cap."""
    n = len(start_digits)
    start = encode(start_digits, palette)
    target = encode(target_digits, palette)
    if start == target:
        return STATUS_FOUND, 1, 0
    visited = {start}
    frontier = [start]
    dist = 0
    weights = [palette ** v for v in range(n)]
    while frontier:
        dist += 1
        nxt = []
        for code in frontier:
            digits = decode(code, palette, n)
            for v in range(n):
                old = digits[v]
                base = code - old * weights[v]
                nbr_digits = {digits[u] for u in
                              indices[indptr[v]:indptr[v + 1]]}
                for nd in range(palette):
                    if nd == old or nd in nbr_digits:
                        continue
                    new_code = base + nd * weights[v]
                    if new_code in visited:
                        continue
                    if new_code == target:
                        return STATUS_FOUND, len(visited) + 1, dist
                    if len(visited) >= cap:
                        return STATUS_CAP, len(visited), -1
                    visited.add(new_code)
                    nxt.append(new_code)
        frontier = nxt
    return STATUS_EXHAUSTED, len(visited), -1
