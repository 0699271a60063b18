from setuptools import Extension, setup

# The compiled kernels are optional: if Cython or a C compiler is missing the
# build falls back to the pure-NumPy implementation selected at import time.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "phwave._fbkernels",
                ["src/phwave/_fbkernels.pyx"],
                # -ffp-contract=off keeps the compiled kernels bit-identical
                # to the NumPy fallback (no FMA contraction).
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level="3",
    )
except ImportError:
    extensions = []

for ext in extensions:
    ext.optional = True

setup(ext_modules=extensions)
