# Copyright 2024 The wellfn Authors.
"""Gautschi's elementary inequalities for the exponential integral.

For q > 1 and u >= 0, with ``I_q(u) = e^(u^q) int_u^inf e^(-t^q) dt`` and ``c_q = Gamma(1 + 1/q)^(q/(q-1))``::

    1/2 [(u^q + 2)^(1/q) - u] < I_q(u) <= c_q [(u^q + 1/c_q)^(1/q) - u]

Letting q grow without bound gives ``1/2 ln(1 + 2/u) <= e^u E1(u) <= ln(1 + 1/u)``, which :func:`e1_bounds` returns
multiplied through by ``e^-u``.
"""
import logging
import math
from dataclasses import dataclass

from scipy.special import gammaln

from . import reference
from .exceptions import DomainError, require_finite, require_positive

log = logging.getLogger(__name__)

# Above this argument the E1 bounds are reported as logarithms.
LOG_SCALE_U = 500.0


@dataclass(frozen=True)
class BoundPair:
    lower: float
    upper: float
    log_scale: bool = False

    def brackets(self, value):
        """True when ``lower < value <= upper`` (``value`` in the same scale as the pair)."""
        return self.lower < value <= self.upper


def _require_q(q):
    q = require_finite('q', q)
    if q <= 1:
        raise DomainError.of('q', q, 'q > 1')
    return q


def gautschi_coefficient(q):
    """``c_q = Gamma(1 + 1/q)^(q/(q-1))``, finite down to q just above 1 (the limit there is ``e^(gamma-1)``)."""
    q = _require_q(q)
    return math.exp(q / (q - 1.0) * gammaln(1.0 + 1.0 / q))


def _root_gap(u, a, q):
    """``(u^q + a)^(1/q) - u`` without cancellation for large u."""
    if u == 0:
        return a ** (1.0 / q)
    log_ratio = math.log(a) - q * math.log(u)
    if log_ratio > 700:
        # u^q is negligible beside a
        return a ** (1.0 / q) - u
    return u * math.expm1(math.log1p(math.exp(log_ratio)) / q)


def iq_bounds(u, q):
    """Lower and upper bounds on ``I_q(u)``."""
    u = require_finite('u', u)
    if u < 0:
        raise DomainError.of('u', u, 'u >= 0')
    q = _require_q(q)
    c = gautschi_coefficient(q)
    return BoundPair(0.5 * _root_gap(u, 2.0, q), c * _root_gap(u, 1.0 / c, q))


def scaled_iq_bounds(x, q):
    """``q I_q(x^(1/q))`` bounds, which tend to the bounds of ``e^x E1(x)`` as q grows."""
    x = require_positive('x', x)
    q = _require_q(q)
    pair = iq_bounds(x ** (1.0 / q), q)
    return BoundPair(q * pair.lower, q * pair.upper)


def scaled_e1_bounds(u):
    """Bounds on ``e^u E1(u)``: ``1/2 ln(1 + 2/u)`` and ``ln(1 + 1/u)``."""
    u = require_positive('u', u)
    return BoundPair(0.5 * math.log1p(2.0 / u), math.log1p(1.0 / u))


def e1_bounds(u):
    """Bounds on E1(u); past u = 500 both sides are natural logarithms and ``log_scale`` is set."""
    scaled = scaled_e1_bounds(u)
    if u > LOG_SCALE_U:
        return BoundPair(math.log(scaled.lower) - u, math.log(scaled.upper) - u, log_scale=True)
    damping = math.exp(-u)
    return BoundPair(damping * scaled.lower, damping * scaled.upper)


def bound_table(points):
    """Rows ``(u, lower, oracle, upper, log_scale)``; log-scale rows carry ``ln E1`` as the oracle column."""
    rows = []
    for u in points:
        u = float(u)
        pair = e1_bounds(u)
        if pair.log_scale:
            oracle = math.log(reference.e1_scaled(u)) - u
        else:
            oracle = reference.e1(u)
        if not pair.brackets(oracle):
            log.warning("Oracle %r escapes bounds (%r, %r] at u=%r", oracle, pair.lower, pair.upper, u)
        rows.append((u, pair.lower, oracle, pair.upper, pair.log_scale))
    return rows
