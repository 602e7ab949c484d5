# Copyright 2024 The wellfn Authors.
"""Theis drawdown and the discrete pumping kernel of a unit-duration pumping pulse.

Units follow the pumping-test literature: metres for radii and heads, weeks for time, m^2/week for transmissivity
and m^3/week for the pumping rate. They are documented, not enforced.
"""
import logging
import math
import sys
from concurrent import futures
from dataclasses import dataclass, field

import numpy as np

from . import approx, reference
from .constants import U_MAX
from .exceptions import DomainError, EvaluationError, WellFunctionError, require_finite, require_positive

log = logging.getLogger(__name__)

ORACLE = 'oracle'


@dataclass(frozen=True)
class AquiferCase:
    """A confined-aquifer pumping test.

    Attributes:
        transmissivity (float): T, m^2/week.
        storativity (float): S, dimensionless, in (0, 1].
        tau (float): pumping pulse duration, weeks.
        radii (tuple): observation distances from the well, m.
        t_start, t_end, t_step (float): observation times, weeks; ``t_start`` must exceed ``tau``.
        pumping_rate (float): Q, m^3/week; only drawdown uses it and zero means no pumping.
    """
    transmissivity: float
    storativity: float
    tau: float
    radii: tuple
    t_start: float
    t_end: float
    t_step: float = 1.0
    pumping_rate: float = 1.0

    def __post_init__(self):
        require_positive('transmissivity', self.transmissivity)
        require_positive('storativity', self.storativity)
        if self.storativity > 1:
            raise DomainError.of('storativity', self.storativity, '0 < storativity <= 1')
        require_positive('tau', self.tau)
        if not self.radii:
            raise DomainError.of('radii', self.radii, 'at least one radius')
        object.__setattr__(self, 'radii', tuple(require_positive('radius', r) for r in self.radii))
        require_positive('t_start', self.t_start)
        if self.t_start <= self.tau:
            raise DomainError.of('t_start', self.t_start, 't_start > tau = {!r}'.format(self.tau))
        if require_finite('t_end', self.t_end) < self.t_start:
            raise DomainError.of('t_end', self.t_end, 't_end >= t_start = {!r}'.format(self.t_start))
        require_positive('t_step', self.t_step)
        if require_finite('pumping_rate', self.pumping_rate) < 0:
            raise DomainError.of('pumping_rate', self.pumping_rate, 'pumping_rate >= 0')

    @classmethod
    def published(cls):
        """The classic stream-aquifer test case: 4 radii, weekly times from 2 to 18 weeks."""
        return cls(transmissivity=10000.0, storativity=0.2, tau=1.0, radii=(1050.0, 2100.0, 3150.0, 4200.0),
                   t_start=2.0, t_end=18.0, t_step=1.0)

    def times(self):
        n = int(math.floor((self.t_end - self.t_start) / self.t_step + 1e-9)) + 1
        return self.t_start + self.t_step * np.arange(n)


@dataclass(frozen=True)
class KernelSample:
    r: float
    t: float
    u_on: float
    u_off: float
    U: float
    U_ref: float
    pe_percent: float
    off_underflow: bool = False
    on_underflow: bool = False


@dataclass(frozen=True)
class KernelReport:
    samples: tuple
    max_abs_pe: float
    argmax: tuple
    max_pointwise_pe: float
    amplification: float = field(default=None)


def _w_function(w_impl):
    if w_impl is None or w_impl == ORACLE:
        return reference.e1
    kind = approx.ApproxKind.parse(w_impl)
    return lambda u: approx.evaluate(kind, u)


def _is_oracle(w_impl):
    return w_impl is None or w_impl == ORACLE


def theis_u(r, t, S, T):
    """``u = r^2 S / (4 T t)``."""
    r = require_positive('r', r)
    t = require_positive('t', t)
    S = require_positive('S', S)
    T = require_positive('T', T)
    return r * r * S / (4.0 * T * t)


def drawdown(r, t, case, w_impl=None):
    """Theis drawdown ``Q W(u) / (4 pi T)`` in metres; ``w_impl`` None selects the oracle."""
    u = theis_u(r, t, case.storativity, case.transmissivity)
    if case.pumping_rate == 0:
        return 0.0
    return case.pumping_rate / (4.0 * math.pi * case.transmissivity) * _w_function(w_impl)(u)


def _kernel_value(w, u_on, u_off, transmissivity):
    off_underflow = u_off > U_MAX
    w_off = 0.0 if off_underflow else w(u_off)
    return (w(u_on) - w_off) / (4.0 * math.pi * transmissivity), off_underflow


def discrete_kernel(r, t, case, w_impl=approx.ApproxKind.proposed):
    """Response at (r, t) to a unit pumping pulse of length ``tau``, in week/m^2.

    ``U = (W(r^2 S / 4tT) - W(r^2 S / 4(t - tau)T)) / (4 pi T)``. For any ``w_impl`` other than the oracle the
    percentage error against the oracle-evaluated kernel is filled in. Past u_on = 700 both terms underflow: the
    sample has ``U = 0``, ``on_underflow`` set and no percentage error.

    Raises:
        DomainError: t <= tau, where the pulse has not ended.
    """
    t = require_positive('t', t)
    if t <= case.tau:
        raise DomainError.of('t', t, 't > tau = {!r}'.format(case.tau))
    u_on = theis_u(r, t, case.storativity, case.transmissivity)
    u_off = theis_u(r, t - case.tau, case.storativity, case.transmissivity)

    if u_on > U_MAX:
        # Both terms are below the binary64 range; U is flagged rather than compared.
        log.warning("Kernel at r=%r, t=%r underflows (u_on=%r)", r, t, u_on)
        return KernelSample(float(r), t, u_on, u_off, 0.0, 0.0, None, True, True)

    value, off_underflow = _kernel_value(_w_function(w_impl), u_on, u_off, case.transmissivity)
    if off_underflow:
        log.debug("Switch-off term at u=%r underflows; taken as 0", u_off)
    if _is_oracle(w_impl):
        return KernelSample(float(r), t, u_on, u_off, value, value, 0.0, off_underflow)

    value_ref, _ = _kernel_value(reference.e1, u_on, u_off, case.transmissivity)
    return KernelSample(float(r), t, u_on, u_off, value, value_ref,
                        approx.percentage_error(value_ref, value), off_underflow)


def _radius_samples(r, case, w_impl):
    samples = []
    for t in case.times():
        try:
            samples.append(discrete_kernel(r, float(t), case, w_impl))
        except WellFunctionError:
            raise EvaluationError.of(sys.exc_info(), r=float(r), t=float(t))
    return samples


def kernel_sweep(case, w_impl=approx.ApproxKind.proposed, max_workers=approx.DEFAULT_MAX_WORKERS):
    """Kernel samples over radii x times, radius-major, one pool task per radius."""
    with futures.ThreadPoolExecutor(max_workers=max(1, int(max_workers))) as executor:
        results = executor.map(lambda r: _radius_samples(r, case, w_impl), case.radii)
        return [sample for radius_samples in results for sample in radius_samples]


def kernel_report(case, w_impl=approx.ApproxKind.proposed, max_workers=approx.DEFAULT_MAX_WORKERS):
    """Kernel sweep plus its worst PE and how much the subtraction amplifies the pointwise W error.

    ``amplification`` is ``max |PE(U)| / max |PE(W)|`` over every argument the grid touches; it is None when the
    pointwise error is zero (the oracle against itself). Underflowed samples carry no PE and are skipped; when every
    sample underflows ``max_abs_pe`` and ``argmax`` are None.
    """
    samples = kernel_sweep(case, w_impl, max_workers)
    compared = [s for s in samples if not s.on_underflow]
    if not compared:
        log.warning("Every kernel sample underflows; no error to report")
        return KernelReport(tuple(samples), None, None, 0.0, None)

    worst = compared[0]
    for sample in compared[1:]:
        if abs(sample.pe_percent) > abs(worst.pe_percent):
            worst = sample

    pointwise = 0.0
    if not _is_oracle(w_impl):
        w = _w_function(w_impl)
        arguments = sorted({s.u_on for s in compared} | {s.u_off for s in compared if not s.off_underflow})
        pointwise = max(abs(approx.percentage_error(reference.e1(u), w(u))) for u in arguments)

    amplification = abs(worst.pe_percent) / pointwise if pointwise > 0 else None
    log.info("Kernel max |PE| %r at r=%r, t=%r; pointwise max %r; amplification %r",
             abs(worst.pe_percent), worst.r, worst.t, pointwise, amplification)
    return KernelReport(tuple(samples), abs(worst.pe_percent), (worst.r, worst.t), pointwise, amplification)
