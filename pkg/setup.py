"""Builds the optional compiled kernel; the package works without it."""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("moyforge._kernels", ["src/moyforge/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
