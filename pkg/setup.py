"""Build script: compiles the optional Cython kernels.

If Cython or a C compiler is unavailable the package installs without the
extension and falls back to the NumPy kernels at import time.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("SMOOTHNESS_LAB_NO_EXT", "") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension(
                "smoothness_lab._kernels",
                ["src/smoothness_lab/_kernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )],
            compiler_directives={"language_level": 3},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
