from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "cooccurnet._ckernels",
                ["src/cooccurnet/_ckernels.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    # No Cython at build time: the package falls back to the pure-Python
    # kernels at import.
    extensions = []

setup(ext_modules=extensions)
