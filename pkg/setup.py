"""Build hooks for the optional compiled kernel extension.

The package is fully functional without the extension (a NumPy fallback is
selected at import time); building it just makes the hot evaluation loops
faster.  Build in place with:

    python setup.py build_ext --inplace

Set HARDYZ_NO_EXT=1 to skip the extension entirely.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("HARDYZ_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "hardyz._kernels._ckernels",
                    ["src/hardyz/_kernels/_ckernels.pyx"],
                    extra_compile_args=["-O3", "-funroll-loops"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
