"""Build script: compiles the optional accelerator extension.

The package is fully functional without the extension (a pure-numpy
fallback is selected at import time), so any compilation failure is
downgraded to a warning and the install proceeds pure-Python.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """build_ext that skips extensions when no working compiler is found."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing toolchain
            warnings.warn(f"skipping compiled kernels ({exc}); "
                          "falling back to pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"could not compile {ext.name} ({exc}); "
                          "falling back to pure Python")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython not available; building without compiled kernels")
        return []
    return cythonize(
        [
            Extension(
                "drkernel._kernels._core",
                ["src/drkernel/_kernels/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
