import numpy as np
import pytest
from hypothesis import given, strategies as st

from slowfast_darboux.analytic import (H_full, dlog_h, f_rs, g_limit,
                                       g_rescaled, h_section, log_h,
                                       principal_power, y_center)
from slowfast_darboux.errors import BranchCut, InvalidEps

eps_st = st.floats(0.02, 5.0)
unit_st = st.floats(1e-3, 1 - 1e-3)


def test_center_value():
    assert y_center(1.0) == 0.5
    assert y_center(0.25) == pytest.approx(0.2)


@pytest.mark.parametrize("eps", [0.0, -1.0, float("nan"), float("inf")])
def test_invalid_eps(eps):
    with pytest.raises(InvalidEps):
        h_section(0.5, eps)


@given(unit_st, eps_st)
def test_f_is_power_of_h_on_unit_interval(y, eps):
    assert abs(f_rs(y, eps) - h_section(y, eps) ** (1 / eps)) <= 1e-12 * max(1.0, abs(f_rs(y, eps)))


@given(eps_st)
def test_center_is_critical_point_of_h(eps):
    yc = y_center(eps)
    assert abs(dlog_h(yc, eps)) < 1e-12


def test_dlog_h_matches_finite_difference():
    y, eps, d = 0.3 + 0.2j, 0.4, 1e-6
    fd = (log_h(y + d, eps) - log_h(y - d, eps)) / (2 * d)
    assert abs(fd - dlog_h(y, eps)) < 1e-8


@pytest.mark.parametrize("y", [-0.5, 0.0 - 0.0j, 1.0, 2.0])
def test_log_h_cuts(y):
    with pytest.raises(BranchCut):
        log_h(y, 0.5)


def test_principal_power_cut_and_zero():
    with pytest.raises(BranchCut):
        principal_power(-1.0, 0.5)
    assert principal_power(0.0, 0.5) == 0
    assert abs(principal_power(1j, 0.5) - np.exp(0.25j * np.pi)) < 1e-15


def test_endpoint_limits_are_zero():
    assert h_section(1.0, 0.5) == 0
    assert h_section(0.0, 0.5) == 0
    assert f_rs(1.0, 0.5) == 0


def test_H_full_on_section_and_parabola():
    y = np.linspace(0.05, 0.95, 7)
    assert np.allclose(H_full(0 * y, y, 0.3), h_section(y, 0.3), atol=1e-15)
    with pytest.raises(BranchCut):
        H_full(0.5, 0.25, 0.3)


def test_array_and_scalar_kinds():
    assert isinstance(h_section(0.3, 0.5), complex)
    assert h_section(np.array([0.3, 0.4]), 0.5).shape == (2,)


def test_rescaled_kernel_tends_to_limit():
    y = np.linspace(-1, 2, 9)
    e1 = np.max(np.abs(g_rescaled(y, 1e-2) - g_limit(y)))
    e2 = np.max(np.abs(g_rescaled(y, 5e-3) - g_limit(y)))
    assert e2 < e1 and e1 / e2 == pytest.approx(2, rel=0.1)


def test_tiny_positive_y_is_not_snapped_to_endpoint():
    # y**eps is far from zero at y = 1e-15 when eps is small
    y = 8.604228440845053e-16
    assert abs(h_section(y, 0.1) - y ** 0.1 * (1 - y)) < 1e-15
    assert h_section(-1e-16, 0.5) == 0
