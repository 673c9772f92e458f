"""Build script for the optional compiled stepping kernels.

The package is fully functional without the extension (a NumPy fallback is
selected at import time); building it just makes the grid solver faster.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("COLDPLASMA_SKIP_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "coldplasma.eulerian._kernels",
                    ["src/coldplasma/eulerian/_kernels.pyx"],
                    # -ffp-contract=off keeps the mirrored-stencil updates
                    # bitwise antisymmetric for odd data (no FMA contraction).
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
