"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-Python twin of every kernel
is selected at import time), so a failed compile only costs speed.  Set
QUASIZEROS_NO_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """build_ext that degrades to the pure-Python backend on compile failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any toolchain failure is non-fatal
            print(f"warning: building quasizeros._kernels failed ({exc}); "
                  "falling back to the pure-Python kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: {ext.name} failed to compile ({exc}); "
                  "falling back to the pure-Python kernels")


extensions = []
if os.environ.get("QUASIZEROS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        extensions = cythonize(
            [
                Extension(
                    "quasizeros._kernels",
                    ["src/quasizeros/_kernels.pyx"],
                    # Bit-for-bit parity with the pure-Python backend:
                    # no FMA contraction, and no sin/cos -> sincos fusion
                    # (glibc sincos differs from sin+cos by 1 ulp for some
                    # large arguments).
                    extra_compile_args=["-O2", "-ffp-contract=off",
                                        "-fno-builtin-sin", "-fno-builtin-cos"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        print("warning: Cython not available; building without the compiled kernels")

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})
