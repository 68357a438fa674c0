"""Build script: compiles the optional evaluation kernel.

The package is pure Python plus one optional Cython extension
(``hyperdelta._kernel``).  If Cython or a C compiler is unavailable the
build falls through and the package installs with the pure-Python kernel
only; ``hyperdelta.backend`` picks whichever is importable at runtime.
Set ``HYPERDELTA_NO_EXT=1`` to skip the extension on purpose.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    # A failed compile should not block installation of the pure package.
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"warning: compiled kernel skipped ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"warning: {ext.name} skipped ({exc}); using pure-Python fallback")


ext_modules = []
cmdclass = {}
if os.environ.get("HYPERDELTA_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("hyperdelta._kernel", ["src/hyperdelta/_kernel.pyx"])],
            compiler_directives={"language_level": "3"},
        )
        cmdclass = {"build_ext": optional_build_ext}
    except ImportError:  # pragma: no cover - depends on toolchain
        pass

setup(ext_modules=ext_modules, cmdclass=cmdclass)
