"""Build script: compiles the optional training kernel.

The package works without the extension (a NumPy fallback is selected at
import time); the compiled kernel is just faster for repeated training runs.
"""
import sys

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "nonissue._svm_kernel",
                ["src/nonissue/_svm_kernel.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level="3",
    )
except Exception as exc:  # pragma: no cover - depends on build environment
    print(f"warning: skipping compiled kernel ({exc}); NumPy fallback will be used", file=sys.stderr)
    ext_modules = []

setup(ext_modules=ext_modules)
