# Copyright 2024 The wellfn Authors.
"""Series representations of E1(u) with explicit truncation control.

Three expansions are provided:

* the classical power series ``-gamma - ln u - sum_k (-u)^k / (k k!)``, convergent everywhere but cancelling
  badly once u grows past a few units;
* the divergent asymptotic series ``e^-u/u sum_k k!/(-u)^k``, useful only with a truncation near ``k = u``;
* Ramanujan's series ``-gamma - ln u + e^(-u/2) sum_k u^k/(k! 2^(k-1)) sum_{n<=(k-1)/2} 1/(2n+1)``, whose outer
  terms are all positive for E1 and which converges faster than the classical series.

Factorials and powers are always carried as running products so nothing overflows before the terms themselves do.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from . import reference
from .constants import EPS, EULER_GAMMA
from .exceptions import DomainError, require_positive
from .summation import DoubleWord

log = logging.getLogger(__name__)

CLASSICAL = 'classical'
RAMANUJAN = 'ramanujan'
METHODS = (CLASSICAL, RAMANUJAN)

DEFAULT_TOL = 1e-12
DEFAULT_K_MAX = 500
DEFAULT_N_MAX = 100
DEFAULT_TERMS_CAP = 500


@dataclass(frozen=True)
class EvalResult:
    value: float
    terms_used: int
    converged: bool
    last_term_magnitude: float

    def __float__(self):
        return self.value


def _check_truncation(tol, k_max):
    if not tol > 0:
        raise DomainError.of('tol', tol, 'tol > 0')
    if int(k_max) != k_max or k_max < 1:
        raise DomainError.of('k_max', k_max, 'integer k_max >= 1')


def _classical_terms(u, word=float):
    """Yield ``(-u)^k / (k k!)`` for k = 1, 2, ..."""
    term = word(1.0)
    k = 0
    while True:
        k += 1
        term = term * -u / k
        yield term / k


def _ramanujan_terms(u, word=float):
    """Yield ``u^k / (k! 2^(k-1)) * inner(k)`` for k = 1, 2, ..., without the ``e^(-u/2)`` prefactor."""
    one = word(1.0)
    power = word(u)
    inner = one
    k = 1
    while True:
        yield power * inner
        k += 1
        power = power * u / (2 * k)
        if k % 2:
            inner = inner + one / k


def _truncated_sum(head, terms, sign, scale, tol, k_max):
    """Sum ``head + sign * scale * term`` until a term is below ``tol`` of the value, then add one guard term."""
    partial = 0.0
    contribution = 0.0
    converged = False
    k = 0
    for term in terms:
        k += 1
        contribution = sign * scale * term
        partial += contribution
        if converged or k >= k_max:
            break
        if abs(contribution) <= tol * abs(head + partial):
            converged = True
    return EvalResult(head + partial, k, converged, abs(contribution))


def classical_series(u, tol=DEFAULT_TOL, k_max=DEFAULT_K_MAX):
    """E1(u) from the classical power series.

    Stops at the first term whose magnitude is at most ``tol`` times the current value, plus one guard term. In
    binary64 the result is only trustworthy for small u: at u = 20 the largest term is about 2e6 while E1 is about
    1e-10, so the sum "converges" to rounding noise.

    Raises:
        DomainError: u <= 0, tol <= 0 or k_max < 1.
    """
    u = require_positive('u', u)
    _check_truncation(tol, k_max)
    result = _truncated_sum(-EULER_GAMMA - math.log(u), _classical_terms(u), -1.0, 1.0, tol, k_max)
    if not result.converged:
        log.warning("Classical series at u=%r hit k_max=%d before tol=%r", u, k_max, tol)
    return result


def ramanujan_series(u, tol=DEFAULT_TOL, k_max=DEFAULT_K_MAX):
    """E1(u) from Ramanujan's series, with the same truncation rule as :func:`classical_series`."""
    u = require_positive('u', u)
    _check_truncation(tol, k_max)
    result = _truncated_sum(-EULER_GAMMA - math.log(u), _ramanujan_terms(u), 1.0, math.exp(-u / 2), tol, k_max)
    if not result.converged:
        log.debug("Ramanujan series at u=%r stopped at k_max=%d", u, k_max)
    return result


def ramanujan_terms(u, k_max):
    """The first ``k_max`` outer terms of Ramanujan's series for E1(u), ``e^(-u/2)`` included."""
    u = require_positive('u', u)
    prefactor = math.exp(-u / 2)
    terms = _ramanujan_terms(u)
    return [prefactor * next(terms) for _ in range(k_max)]


def ramanujan_inner_sum(k):
    """Exact ``sum_{n=0}^{floor((k-1)/2)} 1/(2n+1)``."""
    if k < 1:
        raise DomainError.of('k', k, 'k >= 1')
    return sum((Fraction(1, 2 * n + 1) for n in range((k - 1) // 2 + 1)), Fraction(0))


def ramanujan_coefficients(k_max):
    """Exact polynomial coefficients ``inner(k) / (k! 2^(k-1))`` for k = 1..k_max."""
    return [ramanujan_inner_sum(k) / (math.factorial(k) * 2 ** (k - 1)) for k in range(1, k_max + 1)]


def _asymptotic_terms(u):
    """Yield ``k!/(-u)^k`` for k = 0, 1, ..."""
    term = 1.0
    k = 0
    while True:
        yield term
        k += 1
        term *= -k / u


def asymptotic_series(u, n_terms):
    """E1(u) from the first ``n_terms`` terms of the asymptotic series.

    The series diverges for every u, so ``converged`` is always False; ``last_term_magnitude`` is the size of the
    last included term in E1 units.
    """
    u = require_positive('u', u)
    if int(n_terms) != n_terms or n_terms < 1:
        raise DomainError.of('n_terms', n_terms, 'integer n_terms >= 1')
    prefactor = math.exp(-u) / u
    total = 0.0
    term = 0.0
    terms = _asymptotic_terms(u)
    for _ in range(n_terms):
        term = next(terms)
        total += term
    return EvalResult(prefactor * total, n_terms, False, prefactor * abs(term))


def asymptotic_auto(u, n_max=DEFAULT_N_MAX):
    """Asymptotic series summed while its terms keep shrinking, the usual rule of thumb for a divergent series."""
    u = require_positive('u', u)
    prefactor = math.exp(-u) / u
    total = 0.0
    previous = math.inf
    n = 0
    for term in _asymptotic_terms(u):
        if n >= n_max or abs(term) > previous:
            break
        total += term
        previous = abs(term)
        n += 1
    return EvalResult(prefactor * total, n, False, prefactor * previous)


def asymptotic_optimal_truncation(u, n_max=DEFAULT_N_MAX):
    """Find the truncation order of the asymptotic series closest to the oracle.

    Errors within the oracle's own resolution (a few ulp) are treated as ties, and ties go to the order whose first
    omitted term is smallest, then to the smaller order. Without this, every order past the point where the terms
    drop below binary64 resolution would tie at the same rounded value.

    Returns:
        (int, float): best order n <= n_max and the partial sum at that order.
    """
    u = require_positive('u', u)
    oracle = reference.e1_reference(u)
    floor = 4 * EPS * oracle.value + oracle.est_abs_error
    prefactor = math.exp(-u) / u

    candidates = []
    total = 0.0
    terms = _asymptotic_terms(u)
    term = next(terms)
    for n in range(1, n_max + 1):
        total += term
        term = next(terms)
        value = prefactor * total
        error = abs(value - oracle.value)
        if math.isfinite(error):
            candidates.append((n, value, error, abs(term)))

    if not candidates:
        raise DomainError.of('n_max', n_max, 'at least one finite partial sum')
    best_error = min(c[2] for c in candidates)
    tied = [c for c in candidates if c[2] <= max(best_error, floor)]
    n, value, _, _ = min(tied, key=lambda c: (c[3], c[0]))
    log.debug("Asymptotic series at u=%r: best order %d of %d candidates within %r", u, n, len(tied), floor)
    return n, value


def terms_to_converge(method, u, rel_target, cap=DEFAULT_TERMS_CAP):
    """Smallest number of terms whose partial sum lies within ``rel_target`` of the oracle.

    Terms and sums are carried in double-word arithmetic so the count reflects truncation and not the rounding of
    large intermediate terms.

    Returns:
        int or None: the term count, or None when the cap is reached or the terms stop changing the sum first.
    """
    if method not in METHODS:
        raise DomainError.of('method', method, 'one of {}'.format(', '.join(METHODS)))
    u = require_positive('u', u)
    if not 0 < rel_target < 1:
        raise DomainError.of('rel_target', rel_target, '0 < rel_target < 1')

    oracle = reference.e1_reference(u)
    if oracle.underflow:
        return None
    target = rel_target * oracle.value

    head = DoubleWord(-EULER_GAMMA) - math.log(u)
    if method == CLASSICAL:
        terms, sign, scale = _classical_terms(u, DoubleWord), -1.0, 1.0
    else:
        terms, sign, scale = _ramanujan_terms(u, DoubleWord), 1.0, math.exp(-u / 2)

    partial = DoubleWord()
    n = 0
    for term in terms:
        n += 1
        contribution = term * (sign * scale)
        partial = partial + contribution
        value = float(head + partial)
        if abs(value - oracle.value) <= target:
            return n
        if n >= cap:
            break
        if abs(float(contribution)) < 1e-3 * EPS * max(abs(value), oracle.value) and n > u:
            log.debug("%s series at u=%r reached its rounding floor after %d terms", method, u, n)
            return None
    log.debug("%s series at u=%r not within %r after %d terms", method, u, rel_target, cap)
    return None


def convergence_table(us, rel_target):
    """Rows ``(u, classical_terms, ramanujan_terms)`` comparing the two convergent series."""
    return [(u, terms_to_converge(CLASSICAL, u, rel_target), terms_to_converge(RAMANUJAN, u, rel_target))
            for u in us]
