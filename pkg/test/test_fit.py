# Copyright 2024 The wellfn Authors.
# pylint: disable=redefined-outer-name
import logging
import math

import mock
import numpy as np
import pytest

from wellfn import approx, bounds, fit
from wellfn.approx import PUBLISHED, Eq10Coefficients
from wellfn.exceptions import DomainError, FitError
from wellfn.grid import GridSpec


@pytest.fixture(scope='module')
def published_fit():
    return fit.fit_eq9(init=PUBLISHED)


@pytest.fixture(scope='module')
def neutral_fit():
    return fit.fit_eq9(init=fit.NEUTRAL_INIT)


def _log_model(u, coeffs):
    return math.log(approx.eq10(u, coeffs))


@pytest.mark.parametrize('u', [1.5, 2.0, 5.0, 50.0])
def test_jacobian_matches_finite_differences(u):
    jac = fit.jacobian_eq9(u, PUBLISHED)
    a = PUBLISHED.as_tuple()
    for i, a_i in enumerate(a):
        h = a_i * 1e-6
        up = Eq10Coefficients.from_sequence(a[:i] + (a_i + h,) + a[i + 1:])
        down = Eq10Coefficients.from_sequence(a[:i] + (a_i - h,) + a[i + 1:])
        fd = (_log_model(u, up) - _log_model(u, down)) / (2 * h)
        assert jac[i] == pytest.approx(fd, rel=1e-6)


@pytest.mark.parametrize('u', [1.01, 3.0, 99.0])
def test_jacobian_closed_forms(u):
    jac = fit.jacobian_eq9(u, PUBLISHED)
    assert jac[0] == pytest.approx(_log_model(u, PUBLISHED) / PUBLISHED.a1, rel=1e-12)
    assert jac[1] == pytest.approx(PUBLISHED.a1 / PUBLISHED.a2, rel=1e-15)
    assert jac[2] == pytest.approx(-PUBLISHED.a1 * u, rel=1e-15)


@pytest.mark.parametrize('u', [1.0, 0.5, -2.0])
def test_jacobian_domain(u):
    with pytest.raises(DomainError):
        fit.jacobian_eq9(u, PUBLISHED)


def test_published_residuals_are_small():
    residuals = fit.residuals_eq9(PUBLISHED)
    assert residuals.shape == (500,)
    assert np.max(np.abs(residuals)) < 1e-3


def test_published_point_is_near_stationary():
    ratio = np.linalg.norm(fit.objective_gradient(PUBLISHED)) / np.linalg.norm(
        fit.objective_gradient(fit.NEUTRAL_INIT))
    assert ratio <= 1e-2


def test_fit_from_published(published_fit):
    assert published_fit.converged
    assert published_fit.max_pe_over_fit_domain <= 0.1
    assert published_fit.final_residual_norm <= np.linalg.norm(fit.residuals_eq9(PUBLISHED))
    assert all(c > 0 for c in published_fit.coefficients.as_tuple())


def test_fit_from_neutral(neutral_fit):
    assert neutral_fit.converged
    assert neutral_fit.max_pe_over_fit_domain <= 0.1
    assert neutral_fit.iterations < fit.DEFAULT_MAX_ITER
    assert neutral_fit.trace[-1][0] < fit.DEFAULT_MAX_ITER


def test_fitted_closed_form_keeps_shape(neutral_fit):
    points = fit.DEFAULT_FIT_GRID.points()
    values = [approx.eq10(u, neutral_fit.coefficients) for u in points]
    assert np.all(np.diff(values) < 0)


@pytest.mark.parametrize('fixture_name', ['published_fit', 'neutral_fit'])
def test_fitted_closed_form_stays_within_bounds(request, fixture_name):
    coefficients = request.getfixturevalue(fixture_name).coefficients
    for u in fit.DEFAULT_FIT_GRID.points():
        pair = bounds.e1_bounds(u)
        value = approx.eq10(u, coefficients)
        assert pair.lower * (1 - 5e-3) <= value <= pair.upper * (1 + 5e-3)


@pytest.mark.parametrize('fixture_name', ['published_fit', 'neutral_fit'])
def test_trace_is_nonincreasing(request, fixture_name):
    result = request.getfixturevalue(fixture_name)
    norms = [norm for _, norm, _ in result.trace]
    assert norms[-1] == result.final_residual_norm
    assert all(b <= a for a, b in zip(norms, norms[1:]))
    iterations = [it for it, _, _ in result.trace]
    assert iterations == sorted(iterations)


def test_fit_is_deterministic():
    first = fit.fit_eq9(init=fit.NEUTRAL_INIT, max_iter=20)
    second = fit.fit_eq9(init=fit.NEUTRAL_INIT, max_iter=20)
    assert first == second


def test_iteration_cap_reports_failure(caplog):
    with caplog.at_level(logging.WARNING, logger='wellfn.fit'):
        result = fit.fit_eq9(init=fit.NEUTRAL_INIT, max_iter=1)
    assert not result.converged
    assert result.iterations == 1
    assert 'did not converge' in caplog.text


def test_custom_point_list():
    points = np.linspace(2.0, 50.0, 60)
    result = fit.fit_eq9(points, init=PUBLISHED, max_iter=50)
    assert result.iterations <= 50
    assert result.final_residual_norm <= np.linalg.norm(fit.residuals_eq9(PUBLISHED, points))


@pytest.mark.parametrize('grid, message', [
    ([2.0], 'Underdetermined'),
    (np.linspace(2.0, 50.0, 20), 'at least 50'),
])
def test_too_few_points(grid, message):
    with pytest.raises(FitError) as exc_info:
        fit.fit_eq9(grid)
    assert message in exc_info.value.message


@pytest.mark.parametrize('grid', [
    GridSpec(0.5, 100.0, 100),
    GridSpec(1.0, 100.0, 100),
    GridSpec(2.0, 200.0, 100),
])
def test_points_outside_fit_domain(grid):
    with pytest.raises(DomainError):
        fit.fit_eq9(grid)


def test_pe_limit_cannot_loosen_convergence():
    with mock.patch.object(fit, 'max_pe', return_value=0.5):
        result = fit.fit_eq9(init=PUBLISHED, pe_limit=1.0)
    assert result.max_pe_over_fit_domain == 0.5
    assert not result.converged
