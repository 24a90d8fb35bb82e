"""Build script for the optional Cython kernels.

The extension is optional: when Cython or a compiler is missing the package
installs without it and ``rankone.kernels`` falls back to numpy code.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("RANKONE_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "rankone._kernels",
                    ["src/rankone/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # pragma: no cover - build environment dependent
        print(f"rankone: building without compiled kernels ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
