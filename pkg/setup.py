import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "specaug._kernels",
                ["src/specaug/_kernels.pyx"],
                include_dirs=[np.get_include()],
                # -ffp-contract=off: no FMA contraction, so the C arithmetic
                # matches the pure-Python fallback bit for bit. Never add
                # -ffast-math or -funsafe-math-optimizations here.
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
