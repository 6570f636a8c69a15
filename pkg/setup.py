"""Builds the optional compiled arithmetic core.

The package works without it (see orbigw._kernels); any failure to find
Cython, GMP or a compiler only skips the extension.
"""

import glob
import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler or headers missing
            print(f"warning: compiled core not built ({exc}); using pure Python", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} not built ({exc}); using pure Python", file=sys.stderr)


def extensions():
    try:
        import gmpy2
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    # Link against the very libgmp gmpy2 uses: wheels bundle a private copy,
    # and mixing two GMPs (two allocators) on the same mpq objects crashes.
    bundled = sorted(glob.glob(os.path.join(os.path.dirname(gmpy2.__file__), os.pardir, "gmpy2.libs", "libgmp-*.so*")))
    link = {"libraries": ["gmp"]}
    if bundled:
        libdir = os.path.abspath(os.path.dirname(bundled[0]))
        link = {"extra_objects": [os.path.abspath(bundled[0])], "runtime_library_dirs": [libdir]}
    ext = Extension(
        "orbigw._ckernels",
        [os.path.join("src", "orbigw", "_ckernels.pyx")],
        include_dirs=[os.path.dirname(gmpy2.__file__)],
        extra_compile_args=["-O2"],
        **link,
    )
    return cythonize([ext], language_level=3, quiet=True)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
