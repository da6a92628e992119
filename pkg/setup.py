"""Build the optional compiled kernels. Without Cython or a C compiler the
package installs pure-Python and selects the fallback at import time."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("arithdyn._kernels", ["src/arithdyn/_kernels.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except Exception as exc:  # no Cython: fall back silently
    print(f"arithdyn: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
