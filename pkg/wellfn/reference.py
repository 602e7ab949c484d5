# Copyright 2024 The wellfn Authors.
"""High-precision oracle for the exponential integral E1(u).

Below the crossover at u = 1 the convergent power series is summed in double-word precision; from the crossover up
the continued fraction for ``e^u E1(u)`` is evaluated with the modified Lentz method. Both branches are accurate to
about 1e-14 relative on their ranges.
"""
import logging
import math
from dataclasses import dataclass

from . import contfrac
from .constants import EPS, EULER_GAMMA, NEAR_UNDERFLOW, U_MAX
from .exceptions import require_positive
from .summation import CompensatedSum

log = logging.getLogger(__name__)

CROSSOVER = 1.0

SERIES_REGION = 'series-region'
CONTINUED_FRACTION_REGION = 'continued-fraction-region'
UNDERFLOW = 'underflow'

_SERIES_TOL = 1e-3 * EPS
_SERIES_K_MAX = 200
_CF_TOL = 1e-14


@dataclass(frozen=True)
class OracleValue:
    value: float
    est_abs_error: float
    method_used: str
    terms: int = 0
    underflow: bool = False

    @property
    def near_underflow(self):
        return self.underflow or self.value < NEAR_UNDERFLOW

    def __float__(self):
        return self.value


def power_series_e1(u):
    """Power series -gamma - ln u - sum((-u)^k / (k k!)), summed until terms drop below 1e-3 ulp of the value.

    Returns:
        (float, float, int): value, absolute error estimate, number of series terms.
    """
    u = require_positive('u', u)
    head = -EULER_GAMMA - math.log(u)
    tail = CompensatedSum()
    term = 1.0
    k = 0
    contribution = 0.0
    while k < _SERIES_K_MAX:
        k += 1
        term *= -u / k
        contribution = term / k
        tail.add(contribution)
        if abs(contribution) <= _SERIES_TOL * abs(head - float(tail)):
            break
    value = float(CompensatedSum(head).add(-tail.total))
    est = abs(contribution) + 4 * EPS * (abs(head) + abs(float(tail)))
    return value, est, k


def continued_fraction_e1_scaled(u):
    """``e^u E1(u)`` from the continued fraction ``1/(u+1- 1/(u+3- 4/(u+5- ...)))``.

    Returns:
        contfrac.LentzResult
    """
    u = require_positive('u', u)
    return contfrac.lentz(
        lambda j: 1.0 if j == 1 else -float((j - 1) * (j - 1)),
        lambda j: 0.0 if j == 0 else u + 2 * j - 1,
        tol=_CF_TOL,
    )


def continued_fraction_e1(u):
    """Returns (float, float, int): value, absolute error estimate, iterations."""
    result = continued_fraction_e1_scaled(u)
    value = math.exp(-u) * result.value
    return value, value * (result.error + 4 * EPS), result.iterations


def e1_reference(u):
    """Evaluate E1(u) for 0 < u <= 700.

    Beyond 700 the value is returned as 0 with ``underflow`` set; E1 itself is still positive there.

    Raises:
        DomainError: ``u`` is not a finite positive number.
    """
    u = require_positive('u', u)
    if u > U_MAX:
        log.warning("E1(%r) underflows binary64; returning 0", u)
        return OracleValue(0.0, 0.0, UNDERFLOW, underflow=True)

    if u < CROSSOVER:
        value, err, terms = power_series_e1(u)
        method = SERIES_REGION
    else:
        value, err, terms = continued_fraction_e1(u)
        method = CONTINUED_FRACTION_REGION

    log.debug("E1(%r) = %r via %s (%d terms)", u, value, method, terms)
    return OracleValue(value, err, method, terms=terms)


def e1(u):
    """E1(u) as a plain float."""
    return e1_reference(u).value


def e1_scaled(u):
    """``e^u E1(u)``; finite for every u > 0, including past the underflow cap."""
    u = require_positive('u', u)
    if u < CROSSOVER:
        return math.exp(u) * power_series_e1(u)[0]
    return continued_fraction_e1_scaled(u).value


def e1_derivative_exact(u):
    """d/du E1(u) = -e^(-u)/u."""
    u = require_positive('u', u)
    return -math.exp(-u) / u
