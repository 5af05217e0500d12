from setuptools import Extension, setup

# The compiled kernel backend is optional: the package falls back to the
# pure-Python kernels in legheights._kernels_py when the extension is absent.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "legheights._ckernels",
                ["src/legheights/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # noqa: BLE001 - any build failure means "no extension"
    print(f"legheights: skipping compiled kernels ({exc})")

setup(ext_modules=ext_modules)
