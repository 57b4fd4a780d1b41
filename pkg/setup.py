"""Build hook for the optional compiled kernels.

The package works without them; if Cython or a compiler is missing the
extension is skipped and the pure-Python kernels are used.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("gcone._kernels._ext", ["src/gcone/_kernels/_ext.pyx"],
                   include_dirs=[np.get_include()], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
