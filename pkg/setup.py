# Copyright (c) GridSight Authors.
# Licensed under the MIT License.

import io
import os
import shutil
from typing import List

from setuptools import find_packages, setup
from setuptools.command.build_py import build_py
from setuptools.command.sdist import sdist

PACKAGE_NAME = "gridsight"
ROOT_DIR = os.path.dirname(__file__)


def get_path(*filepath) -> str:
    return os.path.join(ROOT_DIR, *filepath)


def get_requirements(file_path: str = "requirements.txt") -> List[str]:
    """Get Python package dependencies from requirements.txt."""
    with open(get_path(file_path)) as f:
        requirements = f.read().strip().split("\n")
    return [r for r in requirements if r and not r.startswith("#")]


def find_version(version_file_path: str) -> str:
    """Read the version string from the VERSION file."""
    if not os.path.exists(version_file_path):
        raise FileNotFoundError(f"Version file not found at {version_file_path}")
    with open(version_file_path, "r") as version_file:
        version = version_file.read().strip()
    return version


def read_readme() -> str:
    """Read the README file if present."""
    p = get_path("README.md")
    if os.path.isfile(p):
        return io.open(p, "r", encoding="utf-8").read()
    else:
        return ""


package_data = {
    "gridsight": ["VERSION"],
}


class GridSightBuildPyCommand(build_py):
    """Copies the root VERSION file next to ``gridsight/version.py`` in the build tree."""

    def run(self):
        build_py.run(self)
        target = os.path.join(self.build_lib, PACKAGE_NAME, "VERSION")
        self.mkpath(os.path.dirname(target))
        shutil.copy2(get_path("VERSION"), target)


class GridSightSdistCommand(sdist):
    """Puts the version into the archive name."""

    def make_distribution(self):
        self.distribution.metadata.name = PACKAGE_NAME
        self.distribution.metadata.version = find_version(get_path("VERSION"))
        super().make_distribution()


setup(
    name=PACKAGE_NAME,
    version=find_version(get_path("VERSION")),
    packages=find_packages(where=".", include=["gridsight", "gridsight.*"]),
    package_dir={"": "."},
    author="GridSight Authors",
    description="Power-grid inspection imagery: thermal hotspots, tower and line detection, "
    "vegetation clearance, wavelet region proposals and a small CNN filter.",
    long_description=read_readme(),
    long_description_content_type="text/markdown",
    platforms=["Operating System :: OS Independent"],
    license="MIT",
    keywords="power line inspection, thermography, Hough, Gabor, wavelet, region proposal",
    classifiers=[
        "Programming Language :: Python :: 3.8",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Intended Audience :: Developers",
        "Intended Audience :: Science/Research",
    ],
    python_requires=">=3.8",
    install_requires=get_requirements(),
    package_data=package_data,
    include_package_data=False,
    entry_points={
        "console_scripts": ["gridsight=gridsight.cli.main:entry"],
    },
    cmdclass={
        "build_py": GridSightBuildPyCommand,
        "sdist": GridSightSdistCommand,
    },
)
