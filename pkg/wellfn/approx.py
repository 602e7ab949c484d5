# Copyright 2024 The wellfn Authors.
"""Closed-form approximations of the well function W(u) = E1(u), their derivatives, and percentage-error sweeps.

The proposed full-range approximation uses the five-term Ramanujan polynomial up to and including u = 1 and the
bound-shaped fit ``a2^a1 exp(-a1 a3 u) [ln(1 + a4/u^a5)]^a1`` above it. The three published competitors (Swamee and
Ojha 1990, Barry et al. 2000, Vatankhah 2014) are transcribed exactly as printed, constants included.
"""
import enum
import logging
import math
import sys
from concurrent import futures
from dataclasses import dataclass

import numpy as np

from . import reference, series
from .constants import EULER_GAMMA, LOG_OVERFLOW_THRESHOLD, VALIDATED_U_MIN
from .exceptions import DomainError, EvaluationError, WellFunctionError, require_positive
from .grid import DEFAULT_GRID

log = logging.getLogger(__name__)

VALUE = 'value'
DERIVATIVE = 'derivative'
TARGETS = (VALUE, DERIVATIVE)

SWEEP_U_MAX = 100.0
DEFAULT_MAX_WORKERS = 5

# Constants of the closed form as printed, for checking the coefficient algebra.
LITERAL_AMPLITUDE = 0.7042
LITERAL_DECAY = 0.99994
CLOSURE_TOLERANCE = 5e-4


class ApproxKind(enum.Enum):
    proposed = 'proposed'
    swamee_ojha = 'swamee_ojha'
    barry = 'barry'
    vatankhah = 'vatankhah'
    classical_series = 'classical_series'
    ramanujan_series = 'ramanujan_series'
    asymptotic_series = 'asymptotic_series'

    @classmethod
    def parse(cls, name):
        """Look up a kind by tag, accepting hyphens for underscores (``swamee-ojha``)."""
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower().replace('-', '_'))
        except ValueError:
            raise DomainError.of('kind', name, 'one of {}'.format(', '.join(k.value for k in cls))) from None

    @property
    def closed_form(self):
        return self in CLOSED_FORMS


CLOSED_FORMS = (ApproxKind.proposed, ApproxKind.swamee_ojha, ApproxKind.barry, ApproxKind.vatankhah)

# Row order of the comparison table.
TABLE1_KINDS = (ApproxKind.swamee_ojha, ApproxKind.barry, ApproxKind.vatankhah, ApproxKind.proposed)


@dataclass(frozen=True)
class Eq10Coefficients:
    """Coefficients of ``ln E1(u) = a1 ln[a2 exp(-a3 u) ln(1 + a4/u^a5)]``."""
    a1: float
    a2: float
    a3: float
    a4: float
    a5: float

    def __post_init__(self):
        for name, value in zip(('a1', 'a2', 'a3', 'a4', 'a5'), self.as_tuple()):
            require_positive(name, value)

    @classmethod
    def published(cls):
        return PUBLISHED

    @classmethod
    def from_sequence(cls, values):
        return cls(*(float(v) for v in values))

    def as_tuple(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a5)

    @property
    def amplitude(self):
        """``a2^a1``, the leading factor of the closed form."""
        return self.a2 ** self.a1

    @property
    def decay(self):
        """``a1 a3``, the exponential rate of the closed form."""
        return self.a1 * self.a3

    def closure_errors(self):
        """Distance of amplitude and decay from the printed constants 0.7042 and 0.99994."""
        return abs(self.amplitude - LITERAL_AMPLITUDE), abs(self.decay - LITERAL_DECAY)


PUBLISHED = Eq10Coefficients(a1=1.21, a2=0.7484, a3=0.8264, a4=1.39, a5=0.8346)


@dataclass(frozen=True)
class ErrorSample:
    u: float
    w_ref: float
    w_approx: float
    pe_percent: float

    @classmethod
    def of(cls, u, w_ref, w_approx):
        return cls(u, w_ref, w_approx, percentage_error(w_ref, w_approx))


@dataclass(frozen=True)
class SweepReport:
    kind: ApproxKind
    target: str
    samples: tuple
    max_abs_pe: float
    argmax_u: float

    @classmethod
    def from_samples(cls, kind, target, samples):
        """Collect samples (ascending in u); the maximum keeps the first, i.e. smallest, u on ties."""
        samples = tuple(samples)
        worst = samples[0]
        for sample in samples[1:]:
            if abs(sample.pe_percent) > abs(worst.pe_percent):
                worst = sample
        return cls(kind, target, samples, abs(worst.pe_percent), worst.u)


def percentage_error(w_ref, w_approx):
    """Signed ``100 (w_ref - w_approx) / w_ref``."""
    if w_ref == 0:
        raise DomainError.of('w_ref', w_ref, 'w_ref != 0')
    return 100.0 * (w_ref - w_approx) / w_ref


def outside_validated_range(u):
    """True below u = 0.001, where the small-argument branch is evaluated but was never validated."""
    return u < VALIDATED_U_MIN


# Proposed approximation

def _ramanujan_polynomial(u):
    return u * (1.0 + u * (1.0 / 4 + u * (1.0 / 18 + u * (1.0 / 144 + u * 23.0 / 28800))))


def _ramanujan_polynomial_derivative(u):
    return 1.0 + u * (1.0 / 2 + u * (1.0 / 6 + u * (1.0 / 36 + u * 23.0 / 5760)))


def ramanujan5(u):
    """``-gamma - ln u + e^(-u/2) [u + u^2/4 + u^3/18 + u^4/144 + 23 u^5/28800]``."""
    u = require_positive('u', u)
    return -EULER_GAMMA - math.log(u) + math.exp(-u / 2) * _ramanujan_polynomial(u)


def ramanujan5_derivative(u):
    u = require_positive('u', u)
    p = _ramanujan_polynomial(u)
    return -1.0 / u + math.exp(-u / 2) * (_ramanujan_polynomial_derivative(u) - 0.5 * p)


def eq10(u, coeffs=PUBLISHED):
    """``a2^a1 exp(-a1 a3 u) [ln(1 + a4/u^a5)]^a1``, the large-argument branch."""
    u = require_positive('u', u)
    inner = math.log1p(coeffs.a4 * u ** -coeffs.a5)
    return coeffs.amplitude * math.exp(-coeffs.decay * u) * inner ** coeffs.a1


def eq10_literal(u):
    """The large-argument branch with its printed constants, ``0.7042 exp(-0.99994 u) [ln(1 + 1.39/u^0.8346)]^1.21``."""
    u = require_positive('u', u)
    return LITERAL_AMPLITUDE * math.exp(-LITERAL_DECAY * u) * math.log1p(1.39 / u ** 0.8346) ** 1.21


def eq10_derivative(u, coeffs=PUBLISHED):
    u = require_positive('u', u)
    x = coeffs.a4 * u ** -coeffs.a5
    inner = math.log1p(x)
    d_inner = -coeffs.a5 * x / (u * (1.0 + x))
    return eq10(u, coeffs) * (-coeffs.decay + coeffs.a1 * d_inner / inner)


def w_proposed(u):
    """Ramanujan polynomial for u <= 1, bound-shaped fit above."""
    u = require_positive('u', u)
    if outside_validated_range(u):
        log.warning("Proposed approximation evaluated at u=%r, below its validated range", u)
    return ramanujan5(u) if u <= 1.0 else eq10(u)


def _dw_proposed(u):
    return ramanujan5_derivative(u) if u <= 1.0 else eq10_derivative(u)


# Swamee and Ojha (1990)

def _swamee_ojha_logs(u):
    g = (1.0 + u) * (0.56146 / u + 0.65)
    ln_g = math.log(g)
    log_x = -7.7 * math.log(ln_g)
    log_y = 4.0 * math.log(u) + 7.7 * u + 3.7 * math.log(2.0 + u)
    return g, ln_g, log_x, log_y


def w_swamee_ojha(u):
    """``[(ln[(1+u)(0.56146/u + 0.65)])^-7.7 + u^4 e^(7.7u) (2+u)^3.7]^-0.13``."""
    u = require_positive('u', u)
    _, ln_g, log_x, log_y = _swamee_ojha_logs(u)
    if log_y > LOG_OVERFLOW_THRESHOLD:
        return math.exp(-0.13 * np.logaddexp(log_x, log_y))
    return (ln_g ** -7.7 + u ** 4 * math.exp(7.7 * u) * (2.0 + u) ** 3.7) ** -0.13


def _dw_swamee_ojha(u):
    g, ln_g, log_x, log_y = _swamee_ojha_logs(u)
    log_s = np.logaddexp(log_x, log_y)
    dg = (0.56146 / u + 0.65) - (1.0 + u) * 0.56146 / u ** 2
    dlog_x = -7.7 * dg / (g * ln_g)
    dlog_y = 4.0 / u + 7.7 + 3.7 / (2.0 + u)
    slope = math.exp(log_x - log_s) * dlog_x + math.exp(log_y - log_s) * dlog_y
    return -0.13 * w_swamee_ojha(u) * slope


# Barry, Parlange and Li (2000)

def _barry_parts(u):
    h = 1.0421 * u + 1.0 / (1.0 + u ** 1.5) + 1.0801 / (1.0 + 2.35 * u ** -1.0919)
    n1 = 0.5615 / u - 0.4385 * h ** -2
    d = 0.5616 + 0.4385 * math.exp(-2.2803 * u)
    return h, n1, d


def w_barry(u):
    """``e^-u ln[1 + 0.5615/u - 0.4385 h^-2] / (0.5616 + 0.4385 e^(-2.2803u))`` with
    ``h = 1.0421u + 1/(1 + u^1.5) + 1.0801/(1 + 2.35u^-1.0919)``.
    """
    u = require_positive('u', u)
    _, n1, d = _barry_parts(u)
    return math.exp(-u) * math.log1p(n1) / d


def _dw_barry(u):
    h, n1, d = _barry_parts(u)
    dh = (1.0421 - 1.5 * u ** 0.5 / (1.0 + u ** 1.5) ** 2 +
          1.0801 * 2.35 * 1.0919 * u ** -2.0919 / (1.0 + 2.35 * u ** -1.0919) ** 2)
    dn1 = -0.5615 / u ** 2 + 2.0 * 0.4385 * h ** -3 * dh
    dd = -0.4385 * 2.2803 * math.exp(-2.2803 * u)
    return w_barry(u) * (-1.0 + dn1 / ((1.0 + n1) * math.log1p(n1)) - dd / d)


# Vatankhah (2014)

def _vatankhah_logs(u):
    base = 1.0 - 0.19 * u ** 0.7
    ln_l = math.log(0.565 / u + 4.0)
    log_a = math.inf if base == 0 else -2.0 * math.log(abs(base)) - 2.0 * math.log(ln_l)
    ratio = (u + 1.384) / (u + 0.444)
    log_b = 2.0 * math.log(u) + 2.0 * u + 2.0 * math.log(ratio)
    return base, ln_l, ratio, log_a, log_b


def w_vatankhah(u):
    """``[(1 - 0.19u^0.7)^-2 / (ln(0.565/u + 4))^2 + u^2 e^(2u) ((u + 1.384)/(u + 0.444))^2]^-0.5``.

    The first summand has a pole where ``0.19 u^0.7 = 1`` (u ~ 10.72); exactly there the formula gives 0.
    """
    u = require_positive('u', u)
    base, ln_l, ratio, log_a, log_b = _vatankhah_logs(u)
    if math.isinf(log_a):
        log.warning("Vatankhah approximation evaluated at its pole u=%r", u)
        return 0.0
    if max(log_a, log_b) > LOG_OVERFLOW_THRESHOLD:
        return math.exp(-0.5 * np.logaddexp(log_a, log_b))
    return (base ** -2 / ln_l ** 2 + u ** 2 * math.exp(2.0 * u) * ratio ** 2) ** -0.5


def _dw_vatankhah(u):
    base, ln_l, _, log_a, log_b = _vatankhah_logs(u)
    if math.isinf(log_a):
        return 0.0
    log_s = np.logaddexp(log_a, log_b)
    dlog_a = 2.0 * 0.19 * 0.7 * u ** -0.3 / base + 2.0 * 0.565 / (u ** 2 * (0.565 / u + 4.0) * ln_l)
    dlog_b = 2.0 / u + 2.0 + 2.0 / (u + 1.384) - 2.0 / (u + 0.444)
    slope = math.exp(log_a - log_s) * dlog_a + math.exp(log_b - log_s) * dlog_b
    return -0.5 * w_vatankhah(u) * slope


_VALUE_ROUTES = {
    ApproxKind.proposed: w_proposed,
    ApproxKind.swamee_ojha: w_swamee_ojha,
    ApproxKind.barry: w_barry,
    ApproxKind.vatankhah: w_vatankhah,
    ApproxKind.classical_series: lambda u: series.classical_series(u).value,
    ApproxKind.ramanujan_series: lambda u: series.ramanujan_series(u).value,
    ApproxKind.asymptotic_series: lambda u: series.asymptotic_auto(u).value,
}

_DERIVATIVE_ROUTES = {
    ApproxKind.proposed: _dw_proposed,
    ApproxKind.swamee_ojha: _dw_swamee_ojha,
    ApproxKind.barry: _dw_barry,
    ApproxKind.vatankhah: _dw_vatankhah,
}


def evaluate(kind, u):
    """W(u) by the route ``kind`` names."""
    return _VALUE_ROUTES[ApproxKind.parse(kind)](u)


def dw_du(kind, u):
    """Closed-form derivative dW/du of one of the four closed-form approximations.

    Raises:
        DomainError: u <= 0, or ``kind`` is a series route (no closed form to differentiate).
    """
    kind = ApproxKind.parse(kind)
    if kind not in _DERIVATIVE_ROUTES:
        raise DomainError.of('kind', kind.value, 'one of {}'.format(', '.join(k.value for k in CLOSED_FORMS)))
    u = require_positive('u', u)
    return _DERIVATIVE_ROUTES[kind](u)


evaluate_derivative = dw_du


def error_sample(kind, u, target=VALUE):
    u = float(u)
    if target == VALUE:
        return ErrorSample.of(u, reference.e1(u), evaluate(kind, u))
    return ErrorSample.of(u, reference.e1_derivative_exact(u), dw_du(kind, u))


def _sample_chunk(kind, target, chunk):
    samples = []
    for u in chunk:
        try:
            samples.append(error_sample(kind, u, target))
        except WellFunctionError:
            raise EvaluationError.of(sys.exc_info(), u=float(u), kind=kind.value, target=target)
    return samples


def sweep(kind, grid=DEFAULT_GRID, target=VALUE, max_workers=DEFAULT_MAX_WORKERS):
    """Percentage errors of ``kind`` against the oracle over ``grid``.

    The grid is split into contiguous chunks evaluated on a thread pool; chunks are reassembled in grid order so
    the report is identical for any ``max_workers``.

    Raises:
        DomainError: bad kind/target or a grid reaching past u = 100.
        EvaluationError: an evaluation failed; ``data['u']`` is the offending argument.
    """
    kind = ApproxKind.parse(kind)
    if target not in TARGETS:
        raise DomainError.of('target', target, 'one of {}'.format(', '.join(TARGETS)))
    if target == DERIVATIVE and not kind.closed_form:
        raise DomainError.of('kind', kind.value, 'a closed-form kind for derivative sweeps')
    if grid.u_max > SWEEP_U_MAX:
        raise DomainError.of('u_max', grid.u_max, 'u_max <= {}'.format(SWEEP_U_MAX))

    points = grid.points()
    if kind is ApproxKind.proposed and outside_validated_range(points[0]):
        log.warning("Sweep of %s starts at u=%r, below the validated range", kind.value, points[0])

    max_workers = max(1, int(max_workers))
    chunks = np.array_split(points, max_workers)
    log.debug("Sweeping %s (%s) over %d points with %d workers", kind.value, target, len(points), max_workers)
    with futures.ThreadPoolExecutor(max_workers=max_workers) as executor:
        results = executor.map(lambda chunk: _sample_chunk(kind, target, chunk), chunks)
        samples = [sample for chunk_samples in results for sample in chunk_samples]

    report = SweepReport.from_samples(kind, target, samples)
    log.info("Sweep of %s (%s): max |PE| %r at u=%r", kind.value, target, report.max_abs_pe, report.argmax_u)
    return report


def table1(grid=DEFAULT_GRID, max_workers=DEFAULT_MAX_WORKERS):
    """Rows ``(kind, max |PE| of W, max |PE| of dW/du)`` for the four closed forms."""
    return [(kind,
             sweep(kind, grid, VALUE, max_workers).max_abs_pe,
             sweep(kind, grid, DERIVATIVE, max_workers).max_abs_pe)
            for kind in TABLE1_KINDS]
