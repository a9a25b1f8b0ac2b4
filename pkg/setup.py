"""Build script.

Compiles the Monte-Carlo tally kernels as a C extension when Cython and a
compiler are available.  The package works without the extension: the
`semdisc.kernels` module falls back to a vectorized numpy implementation
selected at import time.
"""

from setuptools import Extension, setup


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "semdisc._mc_ext",
                ["src/semdisc/_mc_ext.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )


setup(ext_modules=extensions())
