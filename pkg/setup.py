import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LATTICE_CI_PURE", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "lattice_ci._kernels",
                    ["src/lattice_ci/_kernels.pyx"],
                    language="c++",
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
