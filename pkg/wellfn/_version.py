# Copyright 2024 The wellfn Authors.
__version__ = '0.3.0'
