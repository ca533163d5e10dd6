import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python fallback is used at import time
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "mpcs._kernels",
                ["src/mpcs/_kernels.pyx"],
                include_dirs=[np.get_include()],
                # no FMA contraction and no fast-math: the keystream must be
                # bit-identical to the pure-Python path
                extra_compile_args=["-O2", "-ffp-contract=off", "-fno-fast-math"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
