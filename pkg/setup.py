import os

from setuptools import Extension, setup

# The compiled kernel is optional: without Cython (or with LEFDEFECT_NO_EXT
# set) the package installs pure-Python and selects the fallback at import.
ext_modules = []
if not os.environ.get("LEFDEFECT_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "lefdefect._kernels",
                    ["src/lefdefect/_kernels.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
