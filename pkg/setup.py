"""Build script for the optional compiled ray-tracing kernel.

The package is fully functional without the extension: ``bonnet.radon``
falls back to the pure-Python kernel at import time.  Building with
Cython just makes system-matrix assembly much faster (see
``benchmarks/bench_ray_trace.py``).
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "bonnet._ray_trace",
                ["src/bonnet/_ray_trace.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
