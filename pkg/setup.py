#!/usr/bin/env python3

# std
import site
import sys

import setuptools
from pathlib import Path

# Sometimes editable install fails with an error message about user site
# being not writeable. The following line can fix that, see
# https://github.com/pypa/pip/issues/7953
site.ENABLE_USER_SITE = "--user" in sys.argv[1:]

keywords = [
    "compressed-sensing",
    "spectrum-sensing",
    "cognitive-radio",
    "sub-nyquist",
    "basis-pursuit",
    "monte-carlo",
    "roc",
]

description = (
    "Simulate distributed compressed wideband spectrum sensing: sensor"
    " nodes mix the band with random sign sequences, a fusion center"
    " recovers the occupancy by basis pursuit."
)

this_dir = Path(__file__).resolve().parent

packages = setuptools.find_packages(exclude=["examples", "examples.*"])

with (this_dir / "README.rst").open() as fh:
    long_description = fh.read()

with (this_dir / "widesense" / "version.txt").open() as vf:
    version = vf.read().strip()

install_requires = [
    "pandas>=1.5",
    "numpy>=1.22",
    "scipy>=1.8",
    "cvxpy>=1.3",
    "gitpython",
    "colorlog",
    "tqdm",
]

extras_require = {
    "testing": ["pytest>=4.4.0", "pytest-subtests", "pytest-cov"],
    "dev": [
        "pytest>=4.4.0",
        "pytest-subtests",
        "pytest-cov",
        "twine",
        "pre-commit",
        "sphinx",
        "sphinx_book_theme",
        "coveralls",
    ],
}


setuptools.setup(
    name="widesense",
    version=version,
    packages=packages,
    install_requires=install_requires,
    extras_require=extras_require,
    entry_points={"console_scripts": ["widesense = widesense.harness.cli:main"]},
    package_data={"widesense": ["version.txt"]},
    python_requires=">=3.8",
    license="MIT",
    keywords=keywords,
    description=description,
    long_description=long_description,
    long_description_content_type="text/x-rst",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering",
        "Topic :: Communications",
    ],
)
