# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

from setuptools import setup

long_description = """
legendrian is a numerical toolkit for Legendrian submanifolds of the 1-jet
space J^1(R^n, R) given by generating functions.

It builds generating functions from polynomials and sampled functions,
combines them (the Legendre transformation T, slice, contour, product, sum,
convolution, stabilization), samples the Legendrians and wave fronts they
generate, detects cusps, and computes the min-max selector through cubical
persistence. A convex-analysis kit provides the discrete Legendre-Fenchel
transform, infimal convolution and biconjugates.

The "legendrian" command runs scenario-driven verification suites of the
identities between these operations and reproduces reference figures as SVG
together with their qualitative features.
""".strip()

description = """
Generating functions, wave fronts and selectors of Legendrian submanifolds
""".strip()

classifiers = [
    "Intended Audience :: Science/Research",
    "Operating System :: OS Independent",
    "Programming Language :: Python :: 3",
    "License :: OSI Approved :: MIT License",
    "Development Status :: 4 - Beta",
    "Topic :: Scientific/Engineering :: Mathematics",
]

dependencies = [
    "numpy",
    "scipy",
    "matplotlib",
    "joblib",
    "pydantic>=2",
]

setup(
    name="legendrian",
    version="0.1.0",
    description = description,
    long_description = long_description,
    classifiers = classifiers,
    install_requires = dependencies,
    python_requires=">=3.8",
    packages=["legendrian", "legendrian.gf", "legendrian.front",
              "legendrian.selector", "legendrian.convex", "legendrian.util",
              "legendrian.verify"],
    package_data={"legendrian.verify": ["scenarios/*.json"]},
    entry_points={"console_scripts": ["legendrian = legendrian.cli:main"]},
)
