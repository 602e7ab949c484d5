# Copyright 2024 The wellfn Authors.
"""Numerical constants shared across the package."""
import math
import sys

# Euler-Mascheroni constant, full binary64 precision.
EULER_GAMMA = 0.57721566490153286

EPS = sys.float_info.epsilon

# Past this argument E1(u) leaves the binary64 range.
U_MAX = 700.0

# Intermediates above this switch the competitor formulas to log space.
OVERFLOW_THRESHOLD = 1e300
LOG_OVERFLOW_THRESHOLD = math.log(OVERFLOW_THRESHOLD)

# Values below this are reported as near-underflow.
NEAR_UNDERFLOW = 1e-300

# Lower edge of the range the closed forms were validated over.
VALIDATED_U_MIN = 1e-3
