"""Build script for the optional compiled search kernel.

The package is pure Python except for one hot loop: the breadth-first
search over the configuration space of proper colorings.  If Cython and
a C compiler are available the kernel is compiled; otherwise the install
still succeeds and the pure-Python kernel is selected at import time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible, warn and continue if not."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: compiled kernel skipped ({exc}); "
                  "falling back to the pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "falling back to the pure-Python kernel")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "recolor._kernels._cconfig",
        ["src/recolor/_kernels/_cconfig.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
