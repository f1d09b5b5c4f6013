from setuptools import Extension, setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "netlogit._kernels",
                ["src/netlogit/_kernels.pyx"],
                include_dirs=[np.get_include()],
                # -ffp-contract=off keeps the compiled kernels bit-identical
                # to the pure-Python fallback (no FMA contraction).
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level="3",
    )
except ImportError:
    # No Cython: install the pure-Python package; the fallback kernels are
    # selected automatically at import time.
    pass

setup(ext_modules=ext_modules)
