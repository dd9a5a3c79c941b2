from setuptools import Extension, setup

# The compiled c-separation kernel is optional: without Cython (or a C
# compiler) the package falls back to the pure-Python kernel at import time.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "cmgraph._csep",
                ["src/cmgraph/_csep.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
