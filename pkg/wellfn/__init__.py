# Copyright 2024 The wellfn Authors.
from ._version import __version__  # noqa: F401
