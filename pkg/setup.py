from setuptools import Extension, setup

# The compiled kernels are a speedup, never a requirement: if Cython or a C
# compiler is missing the install still succeeds and mvsum falls back to the
# pure-Python kernels at import time.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "mvsum._kernels",
                ["src/mvsum/_kernels.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
