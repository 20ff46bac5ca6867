#!/usr/bin/env python

from setuptools import setup

setup(name='hyperbolic_weyl',
      version='0.1',
      description='Fundamental domains and volumes of hyperbolic Weyl groups',
      packages=['hyperbolic_weyl'],
      python_requires='>=3.9',
      install_requires=['numpy>=1.17', 'scipy>=1.5'],
      extras_require={'test': ['pytest', 'hypothesis', 'mpmath']},
      entry_points={"console_scripts": ["hyperweyl = hyperbolic_weyl.cli:main"]}
     )
