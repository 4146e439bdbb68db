import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

ext_modules = cythonize(
    [Extension("hardylab._ckernels", ["src/hardylab/_ckernels.pyx"],
               include_dirs=[np.get_include()], extra_compile_args=["-O3"])],
    language_level=3,
)

setup(ext_modules=ext_modules)
