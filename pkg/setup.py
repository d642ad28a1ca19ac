"""Build the optional compiled kernel core.

The extension accelerates the SVM epoch loop and per-sequence
featurization; the package falls back to the pure-Python twin when the
build is unavailable. FP contraction is disabled so both backends
produce bit-identical results.
"""

import os

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    extra = ["/O2", "/fp:precise"] if os.name == "nt" else ["-O3", "-ffp-contract=off"]
    ext_modules = cythonize(
        [
            Extension(
                "ppipred._kernels._fastcore",
                sources=["src/ppipred/_kernels/_fastcore.pyx"],
                extra_compile_args=extra,
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
