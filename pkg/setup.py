"""Build the optional C extension.

The package works without it (a pure-Python twin of every kernel ships in
hamlab._speedups_py); the extension just makes the exhaustive sweeps fast.
If Cython is missing or compilation fails we fall back to a pure build so
`pip install` never hard-fails on the compiler.
"""

import sys

from setuptools import Extension, setup


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("hamlab: Cython not available, building without the C kernel",
              file=sys.stderr)
        return []
    ext = Extension("hamlab._speedups", ["src/hamlab/_speedups.pyx"])
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions())
