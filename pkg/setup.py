#!/usr/bin/env python
# -*- coding: utf-8 -*-

import pathlib
from setuptools import setup, find_packages

# The directory containing this file
HERE = pathlib.Path(__file__).parent

README = (HERE / "README.md").read_text() if (HERE / "README.md").exists() else ""

setup(
    name="adoptlab",
    version="0.1.0-beta",
    description="Replicator, cost-ratchet and trust dynamics for three-strategy clinical AI adoption",
    long_description=README,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests*", "docs*", "examples*", "references*"]),
    include_package_data=True,
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.20.0",
        "pydantic>=2.0.0",
        "scipy>=1.5.0",
        "pandas>=1.5.0",
    ],
    extras_require={
        "test": ["pytest", "pytest-cov"],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
    ],
    entry_points={
        "console_scripts": [
            "adoptlab=adoptlab.cli.main:main",
        ],
    },
)
