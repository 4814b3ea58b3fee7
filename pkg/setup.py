"""Build hook for the optional Cython chord-enumeration kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so a failed build is downgraded to a warning.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "anosovlab.chords._speedups",
                ["src/anosovlab/chords/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    import warnings

    warnings.warn("Cython not available; building without the compiled kernel")

setup(ext_modules=ext_modules)
