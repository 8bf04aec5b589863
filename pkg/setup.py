"""Build script: compiles the optional speedup extension when Cython and a
C++ toolchain are available, and falls back to a pure-Python install
otherwise.  The package selects the backend at import time, so a failed
extension build never breaks the install.
"""

import os
import sys

from setuptools import setup

ext_modules = []
if not os.environ.get("LATNASH_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "latnash._kernels._speedups",
                    ["src/latnash/_kernels/_speedups.pyx"],
                    language="c++",
                    extra_compile_args=["-O2", "-std=c++17"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        print("latnash: Cython not found, installing pure-Python backend only",
              file=sys.stderr)

setup(ext_modules=ext_modules)
