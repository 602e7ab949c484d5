# Copyright 2024 The wellfn Authors.
"""Continued fractions via the modified Lentz method."""
import collections
import logging

log = logging.getLogger(__name__)

LentzResult = collections.namedtuple('LentzResult', ['value', 'error', 'iterations', 'converged'])


def lentz(a, b, tol=1e-14, n_min=0, n_max=10000, tiny=1e-300):
    """Evaluate ``b(0) + a(1)/(b(1) + a(2)/(b(2) + ...))``.

    Args:
        a (fn): partial numerators, called with j >= 1.
        b (fn): partial denominators, called with j >= 0.
        tol (float): stop once the multiplicative update differs from 1 by less than this.
        n_min (int): minimum number of iterations before the stopping test applies.
        n_max (int): iteration cap.
        tiny (float): replaces zero denominators so the recurrences never divide by zero.

    Returns:
        LentzResult: the value, ``|delta - 1|`` of the last update as an error estimate, iterations used and
        whether ``tol`` was met before ``n_max``.
    """
    f = b(0)
    if f == 0:
        f = tiny
    c = f
    d = 0.0
    delta = 0.0

    j = 1
    while j <= n_max:
        aj, bj = a(j), b(j)

        d = bj + aj * d
        if d == 0:
            d = tiny
        c = bj + aj / c
        if c == 0:
            c = tiny

        d = 1.0 / d
        delta = c * d
        f *= delta

        if j > n_min and abs(delta - 1.0) < tol:
            return LentzResult(f, abs(delta - 1.0), j, True)
        j += 1

    log.warning("Continued fraction did not reach tolerance %s in %s iterations", tol, n_max)
    return LentzResult(f, abs(delta - 1.0), n_max, False)
