# Copyright 2024 The wellfn Authors.
# pylint: disable=redefined-outer-name
import dataclasses
import math

import mock
import pytest

from wellfn import kernel, reference
from wellfn.approx import ApproxKind
from wellfn.exceptions import DomainError, EvaluationError
from wellfn.kernel import AquiferCase


@pytest.fixture()
def case():
    return AquiferCase.published()


def test_published_case(case):
    times = case.times()
    assert len(times) == 17
    assert times[0] == 2.0
    assert times[-1] == 18.0
    assert case.radii == (1050.0, 2100.0, 3150.0, 4200.0)


@pytest.mark.parametrize('r, t, expected', [
    (1050.0, 2.0, 2.75625),
    (1050.0, 18.0, 0.30625),
    (4200.0, 1.0, 88.2),
])
def test_theis_u(r, t, expected):
    assert kernel.theis_u(r, t, 0.2, 10000.0) == pytest.approx(expected, rel=1e-15)


def test_theis_u_domain():
    with pytest.raises(DomainError):
        kernel.theis_u(0.0, 1.0, 0.2, 1e4)


def test_drawdown(case):
    assert kernel.drawdown(1050.0, 2.0, dataclasses.replace(case, pumping_rate=0.0)) == 0.0

    normalised = dataclasses.replace(case, pumping_rate=4 * math.pi * case.transmissivity)
    assert kernel.drawdown(1050.0, 2.0, normalised) == pytest.approx(reference.e1(2.75625), rel=1e-14)

    heads = [kernel.drawdown(2100.0, t, case, ApproxKind.proposed) for t in case.times()]
    assert heads == sorted(heads)
    assert len(set(heads)) == len(heads)


def test_kernel_at_first_observation(case):
    sample = kernel.discrete_kernel(1050.0, 2.0, case)
    assert sample.u_on == pytest.approx(2.75625, rel=1e-15)
    assert sample.u_off == pytest.approx(5.5125, rel=1e-15)
    expected = (reference.e1(2.75625) - reference.e1(5.5125)) / (4 * math.pi * 1e4)
    assert sample.U_ref == pytest.approx(expected, rel=1e-14)
    assert sample.pe_percent == pytest.approx(100.0 * (sample.U_ref - sample.U) / sample.U_ref)


def test_kernel_far_radius_stays_positive(case):
    sample = kernel.discrete_kernel(4200.0, 2.0, case)
    assert sample.u_off == pytest.approx(88.2)
    assert sample.U > 0
    assert sample.U_ref > 0


def test_kernel_before_pulse_ends(case):
    with pytest.raises(DomainError) as exc_info:
        kernel.discrete_kernel(1050.0, 1.0, case)
    assert exc_info.value.data['parameter'] == 't'


def test_kernel_near_pulse_end(case):
    # Just after switch-off the second term underflows and U approaches W(u_on) / 4 pi T.
    sample = kernel.discrete_kernel(1050.0, case.tau + 1e-3, case, kernel.ORACLE)
    assert sample.off_underflow
    assert sample.U == pytest.approx(reference.e1(sample.u_on) / (4 * math.pi * case.transmissivity), rel=1e-15)


@pytest.mark.parametrize('kind', [ApproxKind.barry, ApproxKind.proposed, kernel.ORACLE])
def test_kernel_both_terms_underflow(kind):
    far = AquiferCase(1e4, 0.2, 1.0, (1e6,), 2.0, 3.0)
    sample = kernel.discrete_kernel(1e6, 2.0, far, kind)
    assert sample.u_on == pytest.approx(2.5e6)
    assert sample.on_underflow and sample.off_underflow
    assert sample.U == sample.U_ref == 0.0
    assert sample.pe_percent is None


def test_kernel_report_skips_underflowed_samples():
    mixed = AquiferCase(1e4, 0.2, 1.0, (1050.0, 1e6), 2.0, 3.0)
    report = kernel.kernel_report(mixed, ApproxKind.barry, max_workers=1)
    assert len(report.samples) == 4
    assert report.argmax[0] == 1050.0
    assert report.max_abs_pe == max(abs(s.pe_percent) for s in report.samples if not s.on_underflow)

    far = dataclasses.replace(mixed, radii=(1e6,))
    report = kernel.kernel_report(far, ApproxKind.barry)
    assert report.max_abs_pe is None
    assert report.argmax is None


def test_superposition(case):
    t, r = 5.0, 3150.0
    q = case.pumping_rate
    shifted = kernel.drawdown(r, t, case) - kernel.drawdown(r, t - case.tau, case)
    assert kernel.discrete_kernel(r, t, case, kernel.ORACLE).U == pytest.approx(shifted / q, rel=1e-12)


def test_oracle_kernel_has_no_error(case):
    report = kernel.kernel_report(case, kernel.ORACLE)
    assert all(s.pe_percent == 0.0 for s in report.samples)
    assert report.max_abs_pe == 0.0
    assert report.amplification is None


def test_kernel_sweep_order(case):
    samples = kernel.kernel_sweep(case, ApproxKind.barry)
    assert len(samples) == 4 * 17
    assert [(s.r, s.t) for s in samples] == [(r, float(t)) for r in case.radii for t in case.times()]
    assert all(s.u_on < s.u_off for s in samples)
    assert all(0.30 < s.u_on and s.u_off < 89 for s in samples)


@pytest.mark.parametrize('kind', [ApproxKind.proposed, ApproxKind.swamee_ojha, ApproxKind.barry, ApproxKind.vatankhah])
def test_kernel_positive(case, kind):
    assert all(s.U > 0 for s in kernel.kernel_sweep(case, kind))


@pytest.mark.parametrize('workers', [1, 3])
def test_kernel_sweep_independent_of_workers(case, workers):
    assert kernel.kernel_sweep(case, 'vatankhah', max_workers=workers) == kernel.kernel_sweep(case, 'vatankhah', 4)


def test_kernel_report(case):
    report = kernel.kernel_report(case, ApproxKind.proposed)
    assert report.max_abs_pe == max(abs(s.pe_percent) for s in report.samples)
    assert report.argmax in [(s.r, s.t) for s in report.samples]
    assert report.max_pointwise_pe > 0
    assert report.amplification == pytest.approx(report.max_abs_pe / report.max_pointwise_pe)


def test_kernel_sweep_reports_location(case):
    failure = DomainError.of('u', 1.0, 'test failure')
    with mock.patch.object(kernel, 'discrete_kernel', side_effect=failure):
        with pytest.raises(EvaluationError) as exc_info:
            kernel.kernel_sweep(case, max_workers=1)
    assert exc_info.value.data['r'] == 1050.0
    assert exc_info.value.data['t'] == 2.0


@pytest.mark.parametrize('changes', [
    {'transmissivity': 0.0},
    {'storativity': 1.5},
    {'tau': -1.0},
    {'radii': ()},
    {'radii': (100.0, -5.0)},
    {'t_start': 1.0},
    {'t_end': 1.5, 't_start': 2.0},
    {'t_step': 0.0},
    {'pumping_rate': -1.0},
    {'pumping_rate': float('nan')},
])
def test_case_validation(case, changes):
    with pytest.raises(DomainError):
        dataclasses.replace(case, **changes)


def test_case_accepts_zero_pumping_and_lists(case):
    changed = dataclasses.replace(case, pumping_rate=0.0, radii=[500, 1000])
    assert changed.radii == (500.0, 1000.0)
