"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (a pure
numpy/heapq fallback is selected at import time); the build therefore
never fails hard when Cython or a C compiler is unavailable.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "occupaint._kernels._core",
                ["src/occupaint/_kernels/_core.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError as exc:  # pragma: no cover - build environment dependent
    sys.stderr.write(
        f"warning: building without compiled kernels ({exc}); "
        "the pure-Python fallback will be used\n"
    )

setup(ext_modules=ext_modules)
