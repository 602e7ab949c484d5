# Copyright 2024 The wellfn Authors.
import logging
import math

import mock
import numpy as np
import pytest
from scipy import integrate, special

from wellfn import bounds, reference
from wellfn.constants import EULER_GAMMA
from wellfn.exceptions import DomainError


def _i2(u):
    """I_2(u) = e^(u^2) int_u^inf e^(-t^2) dt."""
    return math.sqrt(math.pi) / 2 * special.erfcx(u)


@pytest.mark.parametrize('q, expected', [
    (2.0, math.pi / 4),
    (3.0, special.gamma(4.0 / 3.0) ** 1.5),
])
def test_gautschi_coefficient(q, expected):
    assert bounds.gautschi_coefficient(q) == pytest.approx(expected, rel=1e-13)


def test_gautschi_coefficient_near_one():
    c = bounds.gautschi_coefficient(1.001)
    assert math.isfinite(c)
    assert c == pytest.approx(math.exp(EULER_GAMMA - 1), rel=1e-2)
    assert bounds.gautschi_coefficient(3.0) == pytest.approx(0.84384, rel=1e-4)


@pytest.mark.parametrize('q', [1.0, 0.5, -2.0, float('inf')])
def test_gautschi_coefficient_domain(q):
    with pytest.raises(DomainError):
        bounds.gautschi_coefficient(q)


def test_iq_bounds_at_zero_is_tight():
    pair = bounds.iq_bounds(0.0, 2.0)
    assert pair.lower == pytest.approx(math.sqrt(2) / 2, rel=1e-15)
    assert pair.upper == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-14)
    assert pair.upper == pytest.approx(_i2(0.0), rel=1e-14)


@pytest.mark.parametrize('u', [0.1, 1.0, 3.0, 10.0, 30.0])
def test_iq_bounds_bracket(u):
    pair = bounds.iq_bounds(u, 2.0)
    assert pair.lower < _i2(u) <= pair.upper


def test_iq_bounds_against_quadrature():
    integral, _ = integrate.quad(lambda t: math.exp(1.0 - t * t), 1.0, np.inf)
    pair = bounds.iq_bounds(1.0, 2.0)
    assert pair.lower == pytest.approx(0.5 * (math.sqrt(3) - 1), rel=1e-15)
    assert pair.brackets(integral)


def test_iq_bounds_domain():
    with pytest.raises(DomainError):
        bounds.iq_bounds(-1.0, 2.0)
    with pytest.raises(DomainError):
        bounds.iq_bounds(1.0, 1.0)


def test_e1_bounds_at_one():
    pair = bounds.e1_bounds(1.0)
    assert not pair.log_scale
    assert pair.lower == pytest.approx(0.5 * math.exp(-1) * math.log(3), rel=1e-15)
    assert pair.upper == pytest.approx(math.exp(-1) * math.log(2), rel=1e-15)
    assert pair.lower == pytest.approx(0.20207, abs=1e-5)
    assert pair.upper == pytest.approx(0.25499, abs=1e-5)
    assert pair.brackets(reference.e1(1.0))


def test_e1_bounds_grow_at_zero():
    uppers = [bounds.e1_bounds(u).upper for u in (1e-2, 1e-4, 1e-8)]
    lowers = [bounds.e1_bounds(u).lower for u in (1e-2, 1e-4, 1e-8)]
    assert uppers == sorted(uppers)
    assert lowers == sorted(lowers)
    assert lowers[-1] > 8


def test_e1_bounds_log_scale():
    pair = bounds.e1_bounds(600.0)
    assert pair.log_scale
    assert pair.brackets(math.log(reference.e1_scaled(600.0)) - 600.0)
    assert pair.upper == pytest.approx(math.log(math.log1p(1 / 600.0)) - 600.0, rel=1e-15)


def test_e1_bounds_at_hundred():
    pair = bounds.e1_bounds(100.0)
    assert pair.brackets(reference.e1(100.0))
    assert pair.upper == pytest.approx(math.exp(-100.0) / 100.0, rel=1e-2)


def test_ratio_at_most_two():
    for u in np.logspace(-3, np.log10(500.0), 500):
        pair = bounds.e1_bounds(u)
        assert pair.lower < pair.upper <= 2 * pair.lower


def test_scaled_e1_bounds():
    for u in (0.01, 1.0, 30.0, 800.0):
        assert bounds.scaled_e1_bounds(u).brackets(reference.e1_scaled(u))


def test_scaled_iq_bounds_approach_e1_envelope():
    limit = bounds.scaled_e1_bounds(1.0)
    pairs = [bounds.scaled_iq_bounds(1.0, q) for q in (10.0, 100.0, 1000.0)]
    lower_gaps = [abs(p.lower - limit.lower) for p in pairs]
    upper_gaps = [abs(p.upper - limit.upper) for p in pairs]
    assert lower_gaps[0] > lower_gaps[1] > lower_gaps[2]
    assert upper_gaps[0] > upper_gaps[1] > upper_gaps[2]
    assert upper_gaps[2] < 1e-3
    assert lower_gaps[2] < 1e-3


def test_bound_table():
    rows = bounds.bound_table([0.5, 2.0, 600.0])
    assert [r[0] for r in rows] == [0.5, 2.0, 600.0]
    assert rows[0][2] == reference.e1(0.5)
    assert rows[2][4] is True
    for _, lower, oracle, upper, _ in rows:
        assert lower < oracle <= upper


def test_bound_table_warns_on_escape(caplog):
    with mock.patch.object(reference, 'e1', return_value=1.0):
        with caplog.at_level(logging.WARNING, logger='wellfn.bounds'):
            bounds.bound_table([2.0])
    assert 'escapes bounds' in caplog.text
