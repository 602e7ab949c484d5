#!/usr/bin/env python
import os

from setuptools import find_packages, setup

README = open('README.rst', 'r').read()

# Single-source the version from the package without importing it.
_version = {}
with open(os.path.join('wellfn', '_version.py')) as f:
    exec(f.read(), _version)


install_requires = [
    'numpy>=1.17',
    'scipy>=1.3',
    'ujson>=3.0.0',
]

setup(
    name='python-theis-wellfunction',

    version=_version['__version__'],

    description='Theis well function W(u) = E1(u): oracle, series, bounds and closed-form approximations',

    long_description=README,

    author='The wellfn Authors',

    packages=find_packages(exclude=['contrib', 'docs', 'test']),

    python_requires='>=3.7',

    install_requires=install_requires,

    # $ pip install -e .[test]
    extras_require={
        'test': ['pylint', 'pycodestyle', 'pyflakes', 'pytest', 'mock', 'pytest-cov', 'coverage', 'hypothesis'],
    },

    entry_points={
        'console_scripts': [
            'wellfn = wellfn.cli:main',
        ],
    },
)
