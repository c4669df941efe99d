"""A setuptools based setup module.

See:
https://packaging.python.org/en/latest/distributing.html
https://github.com/pypa/sampleproject
"""

from setuptools import setup, find_packages
from os import listdir, path
from io import open

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

# Collect names of the command-line tools
# e.g. 'rvfl_bounds=rvfltools.rvfl_bounds:main',
binfiles = listdir(path.join(here, 'rvfltools'))
bin_py = [f[:-3] + '=rvfltools.' + f[:-3] + ':main' for f in binfiles
          if f.startswith('rvfl_') and f.endswith('.py')]

setup(
    name='rvfl-tools',  # Required
    version='1.0.0',  # Required
    description='Constructive RVFL ReLU networks with certified uniform error bounds.',  # Optional
    long_description=long_description,  # Optional
    long_description_content_type='text/markdown',  # Optional (see note above)
    author='The rvfl-tools authors',  # Optional
    license='Apache Software License, version 2',
    classifiers=[  # Optional
        # How mature is this project? Common values are
        #   3 - Alpha
        #   4 - Beta
        #   5 - Production/Stable
        'Development Status :: 4 - Beta',

        # Indicate who your project is intended for
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Artificial Intelligence',

        # Pick your license as you wish
        'License :: OSI Approved :: Apache Software License',

        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
    ],

    keywords='neural-networks rvfl random-features approximation-theory relu',  # Optional

    packages=find_packages(exclude=['tests']),  # Required
    python_requires='>=3.8',

    install_requires=[
        'numpy>=1.20',
        'scipy>=1.6',
    ],

    extras_require={
        'test': ['mpmath>=1.2', 'hypothesis>=6.0'],
    },

    # One console script per rvfl_*.py tool, plus the subcommand dispatcher
    entry_points={  # Optional
        'console_scripts': bin_py + ['rvfl=rvfltools.__main__:main'],
    },

    # Test Suite
    test_suite='tests.test_all',
)
