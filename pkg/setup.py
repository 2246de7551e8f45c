"""Build script: compiles the optional fast kernel extension.

The package works without the extension (a pure-Python fallback is selected
at import time), so the build is marked optional and any compilation failure
is non-fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "eisdenom._kernels._fast",
                sources=["src/eisdenom/_kernels/_fast.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
