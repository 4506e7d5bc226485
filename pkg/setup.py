# minimal setup.py to be able to use the -e flag (pip install -e .)

from setuptools import setup

setup()
