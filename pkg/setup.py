#!/usr/bin/env python

"""The setup script."""

from setuptools import find_packages, setup

with open("README.md") as readme_file:
    readme = readme_file.read()

with open("HISTORY.rst") as history_file:
    history = history_file.read()

with open("requirements/base.txt") as requirements_file:
    requirements = [
        line.split("#")[0].strip()
        for line in requirements_file
        if line.split("#")[0].strip()
    ]

test_requirements = [
    "pytest>=6",
    "hypothesis>=6",
    "sympy>=1.9",
]

setup(
    author="varord developers",
    python_requires=">=3.8",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    description="Learn the variable ordering of cylindrical algebraic decomposition "
    "from labelled polynomial systems.",
    entry_points={
        "console_scripts": [
            "varord=varord.__main__:run",
        ],
    },
    install_requires=requirements,
    license="MIT license",
    long_description=readme + "\n\n" + history,
    long_description_content_type="text/markdown",
    include_package_data=True,
    package_data={"varord": ["cfg/*.yaml"]},
    keywords="varord, cylindrical algebraic decomposition, variable ordering, machine learning",
    name="varord",
    packages=find_packages(include=["varord", "varord.*"]),
    test_suite="tests",
    tests_require=test_requirements,
    version="0.3.0",
    zip_safe=False,
)
