import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    USE_CYTHON = True
except ImportError:
    USE_CYTHON = False

# Set PANSHARP_NO_EXT=1 to install without the compiled kernels.
BUILD_EXT = os.environ.get("PANSHARP_NO_EXT", "0") != "1"

EXTENSIONS = []
if BUILD_EXT and USE_CYTHON:
    EXTENSIONS = cythonize(
        [
            Extension(
                "pansharp.interpolation._lmmse_ext",
                ["src/pansharp/interpolation/_lmmse_ext.pyx"],
                # keep IEEE evaluation order identical to the numpy fallback
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=EXTENSIONS)
