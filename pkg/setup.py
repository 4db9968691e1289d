from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("regaut._speedups", ["src/regaut/_speedups.pyx"])],
        language_level=3, quiet=True)

setup(ext_modules=ext_modules)
