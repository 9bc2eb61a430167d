from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [Extension("shiftlab._dfs", ["src/shiftlab/_dfs.pyx"])],
        language_level=3,
    )
except ImportError:
    # the pure-Python fallback is selected at import when the extension
    # is missing, so building without Cython is fine
    ext_modules = []

setup(ext_modules=ext_modules)
