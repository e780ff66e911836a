"""Build script for the optional compiled search kernel.

The package works without the extension; icg.engine falls back to the
pure-Python kernel when the import fails.
"""

import os
import sys

from setuptools import Extension, setup


def extensions():
    if not os.path.exists("src/icg/_engine.pyx"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("icg: Cython not available, building without the compiled kernel",
              file=sys.stderr)
        return []
    ext = Extension(
        "icg._engine",
        ["src/icg/_engine.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=extensions())
