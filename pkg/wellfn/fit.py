# Copyright 2024 The wellfn Authors.
"""Least-squares refit of the large-argument coefficients.

The model is ``ln E1(u) ~ a1 ln[a2 exp(-a3 u) ln(1 + a4/u^a5)]`` and residuals are taken in log space, which weights
every decade of E1 evenly. The optimiser is Levenberg-Marquardt with an analytic Jacobian and MINPACK-style scaling
(the running maximum of the Jacobian column norms): damping is divided by 10 after an accepted step and multiplied by
10 after a rejected one.

Only ``a2^a1`` and ``a1 a3`` enter the closed form, so the iteration runs on the working parameters
``(a1, a1 ln a2, a1 a3, ln a4, ln a5)``, in which the model is linear in the first three and a4, a5 stay positive.
A step that would make a1 or a1 a3 nonpositive is rejected rather than evaluated.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from . import approx, reference
from .approx import Eq10Coefficients
from .exceptions import DomainError, FitError, require_positive
from .grid import GridSpec

log = logging.getLogger(__name__)

N_PARAMETERS = 5
MIN_FIT_POINTS = 50
FIT_U_MAX = 100.0

DEFAULT_FIT_GRID = GridSpec(1.0, FIT_U_MAX, 500, include_min=False)
DEFAULT_MAX_ITER = 500
DEFAULT_TOL = 1e-12
DEFAULT_PE_LIMIT = 0.1
NEUTRAL_INIT = Eq10Coefficients(1.0, 1.0, 1.0, 1.0, 1.0)

_INITIAL_DAMPING = 1e-3
_MAX_DAMPING = 1e16


@dataclass(frozen=True)
class FitResult:
    coefficients: Eq10Coefficients
    iterations: int
    final_residual_norm: float
    max_pe_over_fit_domain: float
    converged: bool
    trace: tuple = ()


def _model(us, a):
    a1, a2, a3, a4, a5 = a
    inner = np.log1p(a4 * us ** -a5)
    return a1 * (np.log(a2) - a3 * us + np.log(inner))


def _model_jacobian(us, a):
    """Partials of the log model with respect to a1..a5, one row per u."""
    a1, a2, a3, a4, a5 = a
    x = a4 * us ** -a5
    inner = np.log1p(x)
    scale = a1 / (inner * (1.0 + x))
    return np.column_stack((
        np.log(a2) - a3 * us + np.log(inner),
        np.full_like(us, a1 / a2),
        -a1 * us,
        scale * x / a4,
        -scale * x * np.log(us),
    ))


def _to_working(a):
    a1, a2, a3, a4, a5 = a
    return np.array([a1, a1 * math.log(a2), a1 * a3, math.log(a4), math.log(a5)])


def _from_working(p):
    a1, log_amplitude, decay, log_a4, log_a5 = p
    return (float(a1), math.exp(log_amplitude / a1), float(decay / a1), math.exp(log_a4), math.exp(log_a5))


def _working_model(us, p):
    a1, log_amplitude, decay, log_a4, log_a5 = p
    inner = np.log1p(math.exp(log_a4) * us ** -math.exp(log_a5))
    return log_amplitude - decay * us + a1 * np.log(inner)


def _working_jacobian(us, p):
    a1, _, _, log_a4, log_a5 = p
    x = math.exp(log_a4) * us ** -math.exp(log_a5)
    inner = np.log1p(x)
    slope = a1 * x / (inner * (1.0 + x))
    return np.column_stack((
        np.log(inner),
        np.ones_like(us),
        -us,
        slope,
        -slope * math.exp(log_a5) * np.log(us),
    ))


def _admissible(p):
    return bool(np.all(np.isfinite(p))) and p[0] > 0 and p[2] > 0


def jacobian_eq9(u, coeffs):
    """Analytic partial derivatives of ``a1 ln[a2 exp(-a3 u) ln(1 + a4/u^a5)]`` with respect to a1..a5.

    Raises:
        DomainError: u <= 1.
    """
    u = require_positive('u', u)
    if u <= 1:
        raise DomainError.of('u', u, 'u > 1')
    return _model_jacobian(np.array([u]), np.array(coeffs.as_tuple()))[0]


def _fit_points(grid):
    us = grid.points() if isinstance(grid, GridSpec) else np.asarray(grid, dtype=float).ravel()
    if us.size < N_PARAMETERS:
        raise FitError('Underdetermined fit: {} points for {} coefficients'.format(us.size, N_PARAMETERS),
                       data={'points': int(us.size)})
    if us.size < MIN_FIT_POINTS:
        raise FitError('Fit grid needs at least {} points, got {}'.format(MIN_FIT_POINTS, us.size),
                       data={'points': int(us.size)})
    if not (np.all(us > 1.0) and np.all(us <= FIT_U_MAX)):
        raise DomainError.of('grid', [float(us.min()), float(us.max())], 'points within (1, {}]'.format(FIT_U_MAX))
    return us


def _log_targets(us):
    return np.array([math.log(reference.e1(u)) for u in us])


def residuals_eq9(coeffs, grid=DEFAULT_FIT_GRID):
    """``ln E1(u_j) - model(u_j)`` over the fit grid."""
    us = _fit_points(grid)
    return _log_targets(us) - _model(us, np.array(coeffs.as_tuple()))


def objective_gradient(coeffs, grid=DEFAULT_FIT_GRID):
    """Gradient of half the squared residual norm with respect to a1..a5."""
    us = _fit_points(grid)
    a = np.array(coeffs.as_tuple())
    r = _log_targets(us) - _model(us, a)
    return -_model_jacobian(us, a).T.dot(r)


def max_pe(coeffs, points):
    """Largest |PE| of the closed form with ``coeffs`` against the oracle over ``points``."""
    return max(abs(approx.percentage_error(reference.e1(u), approx.eq10(u, coeffs))) for u in points)


def fit_eq9(grid=DEFAULT_FIT_GRID, init=approx.PUBLISHED, max_iter=DEFAULT_MAX_ITER, tol=DEFAULT_TOL,
            pe_limit=DEFAULT_PE_LIMIT):
    """Refit a1..a5 by Levenberg-Marquardt.

    Args:
        grid (GridSpec or sequence): fit points, all in (1, 100], at least 50 of them.
        init (Eq10Coefficients): starting coefficients.
        max_iter (int): cap on iterations, accepted and rejected alike.
        tol (float): stop once an accepted step changes the residual norm by less than this, relatively.
        pe_limit (float): a fit only counts as converged if its max |PE| over the grid is within this (percent);
            capped at 0.1.

    Returns:
        FitResult: the best coefficients found; ``converged`` is False when the iteration cap was hit or the fit
        missed ``pe_limit``.

    Raises:
        FitError: fewer than 50 points (or fewer than the 5 coefficients).
    """
    us = _fit_points(grid)
    y = _log_targets(us)
    pe_limit = min(pe_limit, DEFAULT_PE_LIMIT)
    p = _to_working(init.as_tuple())

    r = y - _working_model(us, p)
    norm = float(np.sqrt(r.dot(r)))
    jac = -_working_jacobian(us, p)
    scale = np.zeros(N_PARAMETERS)
    damping = _INITIAL_DAMPING
    trace = [(0, norm, damping)]
    settled = False
    iteration = 0

    while iteration < max_iter:
        iteration += 1
        scale = np.maximum(scale, np.sqrt(np.sum(jac * jac, axis=0)))
        augmented = np.vstack((jac, np.sqrt(damping) * np.diag(np.where(scale > 0, scale, 1.0))))
        rhs = np.concatenate((-r, np.zeros(N_PARAMETERS)))
        step = np.linalg.lstsq(augmented, rhs, rcond=None)[0]
        trial = p + step

        trial_norm = math.inf
        if _admissible(trial):
            trial_r = y - _working_model(us, trial)
            if np.all(np.isfinite(trial_r)):
                trial_norm = float(np.sqrt(trial_r.dot(trial_r)))

        if trial_norm < norm:
            change = (norm - trial_norm) / norm
            p, r, norm = trial, trial_r, trial_norm
            jac = -_working_jacobian(us, p)
            damping /= 10.0
            trace.append((iteration, norm, damping))
            log.debug("Iteration %d accepted: residual norm %r, damping %r", iteration, norm, damping)
            if change < tol:
                settled = True
                break
        else:
            damping *= 10.0
            log.debug("Iteration %d rejected, damping raised to %r", iteration, damping)
            if damping > _MAX_DAMPING:
                # No descent direction left at binary64 resolution.
                settled = True
                break

    coefficients = Eq10Coefficients.from_sequence(_from_working(p))
    worst = max_pe(coefficients, us)
    converged = settled and worst <= pe_limit
    if not converged:
        log.warning("Fit did not converge: settled=%s, max |PE| %r after %d iterations", settled, worst, iteration)
    return FitResult(coefficients, iteration, norm, worst, converged, tuple(trace))
