"""Build shim for the optional compiled search kernel.

The package is pure Python except for ``womkit.search._speedups``, a Cython
translation of the hot branch-and-bound kernels in ``womkit.search._pure``.
If the extension fails to build or import, the package falls back to the
pure implementation at runtime, so the build is tolerated to fail.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("womkit.search._speedups", ["src/womkit/search/_speedups.pyx"])],
        language_level=3,
    )
except Exception:
    extensions = []

setup(ext_modules=extensions)
