import numpy
from setuptools import setup
from setuptools.extension import Extension

# The compiled kernel is optional: transcene._kernels falls back to the
# pure-Python backend when the extension is missing.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "transcene._kernels._core",
                ["src/transcene/_kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
