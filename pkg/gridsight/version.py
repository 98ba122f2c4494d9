# Copyright (c) GridSight Authors.
# Licensed under the MIT License.

import os

# Get the absolute path of the current Python script's directory
current_dir = os.path.dirname(os.path.abspath(__file__))

# The VERSION file sits in the project root for a develop checkout and next to
# this module for an installed wheel
develop_version_file_path = os.path.join(os.path.abspath(os.path.join(current_dir, "..")), "VERSION")
installed_version_file_path = os.path.join(current_dir, "VERSION")

if os.path.exists(develop_version_file_path):
    version_file_path = develop_version_file_path
elif os.path.exists(installed_version_file_path):
    version_file_path = installed_version_file_path
else:
    raise FileNotFoundError("VERSION file not found in the project root directory")

with open(version_file_path, "r") as version_file:
    __version__ = version_file.read().strip()

# Report schema written by the batch front-end
SCHEMA = "gridsight/1"

__all__ = ["__version__", "SCHEMA"]
