"""Build the optional Cython kernel; the package falls back to numpy if it is absent."""

import sys

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "grassframe._jacobi",
        ["src/grassframe/_jacobi.pyx"],
        include_dirs=[np.get_include()],
        # plain complex multiply: C99 Annex G NaN recovery calls __muldc3 per product
        extra_compile_args=[] if sys.platform == "win32" else ["-O3", "-fcx-limited-range"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
)
