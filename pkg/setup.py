"""Build script: compiles the optional ranking kernel.

The package works without the extension (a pure-Python fallback is selected
at import time), so a missing compiler or Cython only costs speed.
Set ASRSPELL_SKIP_NATIVE=1 to force a pure-Python install.
"""
import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible; fall back to pure Python otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # toolchain missing
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"WARNING: native kernel build failed ({exc}); "
              f"installing with the pure-Python fallback")


ext_modules = []
if os.environ.get("ASRSPELL_SKIP_NATIVE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("asrspell._native", ["src/asrspell/_native.pyx"])],
            language_level="3",
        )
    except ImportError:
        print("WARNING: Cython not available; installing with the "
              "pure-Python fallback")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
