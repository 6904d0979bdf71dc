import numpy as np
import pytest

from slowfast_darboux.analytic import f_rs, h_section
from slowfast_darboux.dulac import dulac_integrable, h_inverse
from slowfast_darboux.errors import AtRamification, LiftAmbiguity
from slowfast_darboux.foliation import FoliationParams
from slowfast_darboux.isoclines import D1
from slowfast_darboux.leaves import (build_sigma, default_y_plus, figure_eight,
                                     holonomy_transport, integrated_lift,
                                     leaf_x, lift_path, ramification_pair)

P_DIR = [[0.0, 1.0, -0.5]]


def test_leaf_x_squares_to_leaf_equation():
    eps, y0, y = 0.4, 0.7, 0.3 + 0.2j
    x = leaf_x(y, y0, eps)
    rhs = (f_rs(y, eps) - f_rs(y0, eps)) * (1 - y) ** (-1 / eps)
    assert abs(x * x - rhs) < 1e-13
    assert leaf_x(y, y0, eps, -1) == -x
    with pytest.raises(AtRamification):
        leaf_x(y0, y0, eps)


def test_ramification_pair_is_dulac_pair():
    a, b = ramification_pair(0.8, 0.5)
    assert a == 0.8 and abs(b - dulac_integrable(0.8, 0.5)) < 1e-15


@pytest.mark.parametrize("eps", [0.1, 0.5])
@pytest.mark.parametrize("kind", ["real", "complex", "large"])
def test_sigma_path_ends(eps, kind):
    yc = eps / (1 + eps)
    y = {"real": 0.5 * (1 + yc),
         "complex": h_inverse(0.5 * yc ** eps * (1 - yc), -1.5, eps, D1),
         "large": h_inverse(3.0, 2.0, eps, D1)}[kind]
    s = build_sigma(y, eps)
    assert s.y[0] == y
    assert abs(s.y[-1] - dulac_integrable(y, eps)) < 1e-12
    assert abs(s.y[s.pin] - yc) < 1e-12


@pytest.mark.parametrize("eps", [0.1, 0.5])
@pytest.mark.parametrize("sign", [1, -1])
def test_lift_covering_and_level(eps, sign):
    y = h_inverse(0.6, -2.5, eps, D1)
    lp = lift_path(build_sigma(y, eps), y, eps, sign)
    assert lp.covering_residual() < 1e-8
    assert lp.h_drift() < 1e-8
    assert lp.x_samples[0] == 0 and lp.x_samples[-1] == 0
    # the sheet is fixed by the sign at the center ordinate
    pin = build_sigma(y, eps).pin
    assert lp.sign_track[pin] == sign


def test_lift_refuses_interior_ramification():
    eps, y0 = 0.5, 0.8
    path = np.linspace(0.9, 0.7, 11)
    with pytest.raises(LiftAmbiguity):
        lift_path(path, y0, eps)
    lift_path(path, y0, eps, allow_interior=True)


def test_integrated_lift_reproduces_algebraic_lift():
    eps = 0.5
    y = h_inverse(0.4, -1.0, eps, D1)
    s = build_sigma(y, eps)
    a = lift_path(s, y, eps, 1)
    b = integrated_lift(s, y, FoliationParams(eps), 1)
    assert np.max(np.abs(a.x_samples - b.x_samples)) < 1e-8
    assert b.covering_residual() < 1e-8
    assert b.h_drift() < 1e-8


@pytest.mark.parametrize("eps", [0.1, 0.5])
def test_figure_eight_closes_on_its_leaf(eps):
    fe = figure_eight(default_y_plus(eps), eps)
    assert fe.closure() < 1e-12
    assert fe.loop.covering_residual() < 1e-8
    assert fe.loop.h_drift() < 1e-8
    assert abs(fe.base[1] - eps / (1 + eps)) < 1e-12
    c = fe.conj()
    assert c.closure() < 1e-12 and c.clockwise_detour != fe.clockwise_detour


def test_default_y_plus_maps_to_minus_center():
    eps = 0.3
    yp = default_y_plus(eps)
    assert yp.imag < 0
    assert abs(dulac_integrable(yp, eps) + eps / (1 + eps)) < 1e-9


def test_figure_eight_visits_both_sheets():
    eps = 0.5
    fe = figure_eight(default_y_plus(eps), eps)
    assert set(np.unique(fe.loop.sign_track)) == {-1, 1}


def test_holonomy_identity_and_first_order():
    eps = 0.5
    fe = figure_eight(default_y_plus(eps), eps)
    p0 = FoliationParams(eps)
    for x in (1e-3, -1e-2):
        assert abs(holonomy_transport(fe, p0, x) - x) < 1e-8
    # nontrivial loop: the holonomy defect is linear in delta
    d = [holonomy_transport(fe, p0.with_delta(dl).__class__(eps, dl, P_DIR), 1e-3) - 1e-3
         for dl in (2e-4, 1e-4)]
    assert abs(d[0]) > 1e-8
    assert abs(d[0] / d[1] - 2) < 0.02
