from setuptools import setup, find_packages
import os
import re

here = os.path.abspath(os.path.dirname(__file__))

with open(os.path.join(here, "README.md"), encoding="utf-8") as f:
    long_description = f.read()

with open(os.path.join(here, "sphericallab", "version.py")) as f:
    match = re.search(r'VERSION = "(.+?)"', f.read())
    assert match
    VERSION = match.group(1)

setup(
    name="sphericallab",
    version=VERSION,
    description="Exact and numerical checks for discrete spherical averages and their maximal functions",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    packages=find_packages(include=['sphericallab', 'sphericallab.*']),
    include_package_data=True,
    install_requires=[
        "blinker>=1.4, <1.5",
        "click>=7.0,<8",
        "numpy>=1.20,<2",
        "ruamel.yaml>=0.16,<0.17",
        "scipy>=1.7,<2",
        "sortedcontainers>=2.3,<2.4",
    ],
    extras_require={
        'dev': [
            "hypothesis>=5.8,<6.1",
            "pytest-cov>=2.7.1,<3",
            "pytest-timeout>=1.3.3,<2",
            "pytest-xdist>=2.1.0,<3",
            "pytest>=6.1.0,<7",
        ]
    },
    python_requires='>=3.8',
    classifiers=[
        'Operating System :: OS Independent',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    entry_points={
        'console_scripts': ['sphericallab=sphericallab.tools.main:sphericallab']
    }
)
