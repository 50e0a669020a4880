"""Builds the optional compiled scan kernel.

The package works without it: epimine.scanner falls back to the pure
Python kernel when the extension is absent.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("epimine._scan_cy", ["src/epimine/_scan_cy.pyx"])],
        language_level="3",
    )

setup(ext_modules=ext_modules)
