"""Build shim: compiles the optional C classification kernel.

The package works without the extension (a pure-Python backend is selected at
import time); building it makes censuses orders of magnitude faster.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "bpsw._speedups",
                sources=["src/bpsw/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
