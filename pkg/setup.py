import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("BINDSUM_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "bindsum._ckernels",
                    ["src/bindsum/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # No Cython: install the pure-NumPy package; kernels fall back at import.
        ext_modules = []

setup(ext_modules=ext_modules)
