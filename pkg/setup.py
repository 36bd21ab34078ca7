"""Build script: compiles the optional search kernel.

The package works without the extension (a pure-Python twin of the kernel
is selected at import time), so compilation failures are downgraded to a
warning instead of aborting the install.
"""

import sys

from setuptools import setup
from setuptools.errors import CCompilerError, ExecError, PlatformError


def extensions():
    from Cython.Build import cythonize

    return cythonize(
        ["src/dfalab/_search.pyx"],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
        },
    )


try:
    setup(ext_modules=extensions())
except (CCompilerError, ExecError, PlatformError, SystemExit) as exc:
    print(f"warning: extension build failed ({exc}); installing pure-Python only",
          file=sys.stderr)
    setup()
