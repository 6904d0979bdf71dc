import math

import numpy as np
import pytest

from slowfast_darboux.analytic import h_section, y_center
from slowfast_darboux.dulac import dulac_real
from slowfast_darboux.errors import (EscapeFromAnnulus, QuadratureFailure,
                                     SingularApproach)
from slowfast_darboux.foliation import (FoliationParams, H_drift_along_orbit,
                                        displacement, find_focus,
                                        find_real_cycles, focus_eigenvalues,
                                        half_return, integrate_orbit,
                                        level_to_y, melnikov,
                                        melnikov_prediction, melnikov_zeros,
                                        one_form_coeffs, y_to_level)

P_DIR = [[0.0, 1.0, -0.5]]


def test_params_and_terms():
    p = FoliationParams(0.5, 1e-3, P_DIR, [[0.0], [2.0]])
    P, Q = p.terms()
    assert P == ((0, 1, 1e-3), (0, 2, -5e-4))
    assert Q == ((1, 0, 2e-3),)
    assert p.with_delta(0).terms() == ((), ())
    assert p.with_eps(0.2).eps == 0.2
    with pytest.raises(ValueError):
        FoliationParams(0.5, -1.0)


def test_one_form_at_center_vanishes():
    p = FoliationParams(0.7)
    A, B = one_form_coeffs(0.0, y_center(0.7), p)
    assert abs(A) < 1e-15 and abs(B) < 1e-15


def test_integrable_focus_is_center():
    p = FoliationParams(0.4)
    assert find_focus(p) == (0.0, y_center(0.4))
    ev = focus_eigenvalues(p)
    assert np.max(np.abs(ev.real)) < 1e-7


def test_eps_one_center_eigenvalues():
    ev = focus_eigenvalues(FoliationParams(1.0))
    assert np.allclose(sorted(ev.imag), [-0.5, 0.5], atol=1e-7) or \
        np.allclose(np.abs(ev.imag), np.abs(ev.imag[0]))


def test_perturbed_focus():
    p = FoliationParams(0.5, 1e-3, P_DIR)
    x, y = find_focus(p)
    A, B = one_form_coeffs(x, y, p)
    assert abs(A) < 1e-14 and abs(B) < 1e-14


def test_orbit_conserves_first_integral():
    p = FoliationParams(1.0)
    orb = integrate_orbit((0.0, 0.8), p, section_x=0.0, n_cross=2)
    assert H_drift_along_orbit(orb, 1.0) < 1e-10
    assert orb.events[0][2] == pytest.approx(0.2, abs=1e-9)
    assert orb.events[1][2] == pytest.approx(0.8, abs=1e-9)


def test_orbit_at_center_is_singular():
    with pytest.raises(SingularApproach):
        integrate_orbit((0.0, 0.5), FoliationParams(1.0))


def test_orbit_outside_annulus_escapes():
    with pytest.raises(EscapeFromAnnulus):
        integrate_orbit((0.0, 1.2), FoliationParams(0.5))


@pytest.mark.parametrize("eps", [0.3, 1.0, 2.0])
def test_half_return_is_dulac_map(eps):
    p = FoliationParams(eps)
    for y in (0.5 * (1 + y_center(eps)), 0.95):
        for branch in (1, 2):
            assert half_return(y, p, branch) == pytest.approx(dulac_real(y, eps), abs=1e-8)
    assert displacement(0.9, p) == pytest.approx(0.0, abs=1e-9)


def test_symmetric_direction_has_no_displacement():
    # Q = const keeps the foliation invariant under x -> -x
    p = FoliationParams(0.5, 1e-3, Qcoef=[[1.0]])
    assert p.is_real_symmetric()
    assert abs(displacement(0.8, p)) < 1e-12


def test_level_maps():
    eps = 0.5
    y = 0.8
    assert level_to_y(y_to_level(y, eps), eps) == pytest.approx(y, abs=1e-13)


def test_melnikov_green_oracle():
    # P = y - x**2 on the oval: by Green, oint M P dx = -iint d(M P)/dy
    # = -iint eps (y - x**2)**(eps-1) dx dy for M = (y-x**2)**(eps-1).
    eps = 0.5
    p = FoliationParams(eps, 0.0, [[0.0, 1.0], [0.0, 0.0], [-1.0, 0.0]])
    c = 0.5 * y_to_level(y_center(eps), eps)
    y1 = level_to_y(c, eps)
    y0 = dulac_real(y1, eps)
    from scipy.integrate import quad
    # region {H > c}: for each y in (y0, y1), |x| < sqrt(y - (c/(1-y))**(1/eps))

    def inner(y):
        a = (c / (1 - y)) ** (1 / eps)
        s = math.sqrt(max(y - a, 0.0))
        # int_{-s}^{s} (y - x^2)^(eps-1) dx with y - x^2 >= a
        return quad(lambda x: (y - x * x) ** (eps - 1), -s, s, epsabs=1e-13)[0]
    area = quad(inner, y0, y1, epsabs=1e-12, limit=200)[0]
    assert melnikov(c, p) == pytest.approx(-eps * area, rel=1e-7)


def test_melnikov_guard_band():
    p = FoliationParams(0.5, 0.0, P_DIR)
    with pytest.raises(QuadratureFailure):
        melnikov(1e-9, p)


def test_first_order_displacement():
    p = FoliationParams(0.5, 0.0, P_DIR)
    y = 0.9
    ratios = [displacement(y, p.__class__(0.5, d, P_DIR)) / d / melnikov_prediction(y, p)
              for d in (1e-4, 5e-5)]
    assert abs(ratios[0] - 1) < 2e-2 and abs(ratios[1] - 1) < abs(ratios[0] - 1) + 1e-6


def test_cycles_match_melnikov_zeros():
    eps = 0.5
    p = FoliationParams(eps, 1e-4, P_DIR)
    yc = y_center(eps)
    levels = np.geomspace(1e-3, 0.999 * y_to_level(yc, eps), 30)
    zs = [level_to_y(c, eps) for c in melnikov_zeros(p, levels)]
    y_hi = level_to_y(0.02, eps)
    grid = np.sort(1 - np.geomspace(1 - yc, 1 - y_hi, 30)[1:-1])
    cyc = find_real_cycles(p, grid)
    assert len(zs) == len(cyc) == 1
    assert abs(zs[0] - cyc[0].y_fixed) < 1e-3
    assert find_real_cycles(p.with_delta(0.0), grid) == []


def test_melnikov_zeros_ignore_symmetric_null_integral():
    # Q = 1 gives an odd integrand under x -> -x: the integral vanishes
    # identically and roundoff sign changes must not count as zeros
    p = FoliationParams(0.5, 1e-4, Pcoef=[[0.0]], Qcoef=[[1.0]])
    levels = np.geomspace(1e-2, 0.9 * y_to_level(1 / 3, 0.5), 12)
    assert melnikov_zeros(p, levels) == []
