"""Build script: compiles the optional arithmetic kernel.

The extension is a performance twin of the pure-Python kernel; when Cython or
a C compiler is unavailable the build proceeds without it and the package
falls back to the pure lane at import time.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as e:  # compiler missing: ship pure-Python
            warnings.warn(f"skipping compiled kernel: {e}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as e:
            warnings.warn(f"skipping compiled kernel {ext.name}: {e}")


try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("cdgalab._kernel", ["src/cdgalab/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
