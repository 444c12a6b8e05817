import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SUBCUBIC_PACKING_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "subcubic_packing._kernels",
                    ["src/subcubic_packing/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)
