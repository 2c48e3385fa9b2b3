"""Build hook for the optional compiled kernel backend.

The package is pure Python by contract; the Cython extension only shadows
starweyl.kernels.pure with a faster twin.  Set STARWEYL_NO_EXT=1 to skip the
build entirely (the import-time selector falls back to the pure backend).
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("STARWEYL_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "starweyl.kernels._ckern",
                    ["src/starweyl/kernels/_ckern.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # no Cython around: install works, pure backend is used
        ext_modules = []

setup(ext_modules=ext_modules)
