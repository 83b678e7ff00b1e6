"""Build script: compiles the exact-arithmetic kernel when Cython and a C
compiler are available, otherwise installs the pure-Python fallback only.
Run `python setup.py build_ext --inplace` for a development checkout."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/supersix/_kernel.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    print("Cython not available; using the pure-Python kernel.")

setup(ext_modules=ext_modules)
