"""Build script: compiles the optional Cython kernel.

The extension is a pure speed layer; if Cython or a C compiler is missing
the install falls back to the pure-Python kernel (treecross._pykernel).
Set TREECROSS_PURE=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Tolerate a failed extension build; the package still works without it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping compiled kernel ({exc}); "
                  "the pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); "
                  "the pure-Python fallback will be used")


ext_modules = []
cmdclass = {}
if os.environ.get("TREECROSS_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "treecross._native",
                    ["src/treecross/_native.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
        cmdclass = {"build_ext": OptionalBuildExt}
    except ImportError:
        print("warning: Cython not available; building without the compiled kernel")

setup(ext_modules=ext_modules, cmdclass=cmdclass)
