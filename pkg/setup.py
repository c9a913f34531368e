"""Builds the optional compiled kernels.

The package works without them (a pure numpy/python fallback is selected at
import time); compiling just makes the hot loops fast.
"""

import numpy as np
from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/treemetrics/_kernels/_ck.pyx"],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(
    ext_modules=ext_modules,
    include_dirs=[np.get_include()],
)
