"""
Dulac map of the integrable foliation on the section ``x = 0``.

The map sends ``y`` to the other solution ``w`` of ``h(w) = h(y)``, where
``h(y) = y**eps (1 - y)``.  On (0, 1) it is a real involution fixing the
center; it extends biholomorphically from D1 onto D0.  The complex
extension is computed by matching isocline angles: ``w`` lies on the
component of ``C_theta`` on the other side of the center, with the same
``|h|``, found by bisection in the polar angle and polished by Newton.

Perturbed maps (``dulac_perturbed``) follow leaves of the perturbed
foliation along the same path family that realizes the integrable map.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.optimize import brentq

from .analytic import check_eps, dlog_h, h_section, log_h
from .errors import BranchCut, InvalidEps, MonotonicityViolation, NoConvergence
from .isoclines import (D0, D1, classify_point, component_range,
                        point_on_component, theta_raw, OUTSIDE)

NEWTON_TOL = 1e-13
SNAP_PI = 1e-12
COLLAR = 1e-6  # |theta| beyond pi - COLLAR is solved by continuation from the ray
NEAR_REAL = 1e-10


def _log_h_real(y, eps):
    return eps * math.log(y) + math.log1p(-y)


def dulac_real(y, eps):
    """
    Real Dulac involution on (0, 1).

    Returns the point on the other side of ``y_c = eps/(1+eps)`` with the
    same value of ``y**eps (1-y)``.  Near ``y_c`` a third-order series of
    the involution is used, elsewhere a bracketed root in log form.
    """
    eps = check_eps(eps)
    y = float(y)
    if not 0 < y < 1:
        raise ValueError(f"dulac_real needs 0 < y < 1, got {y}")
    yc = eps / (1 + eps)
    t = y - yc
    if abs(t) < 1e-4 * min(yc, 1 - yc):
        # L(yc + s) = L(yc + t) with L = log h; s = -t + a t^2 - a^2 t^3
        l2 = 0.5 * (-eps / yc ** 2 - 1 / (1 - yc) ** 2)
        l3 = (eps / yc ** 3 - 1 / (1 - yc) ** 3) / 3
        a = -l3 / l2
        return yc - t + a * t * t - a * a * t ** 3
    L = _log_h_real(y, eps)
    if y > yc:
        # target in (0, yc); solve in w directly (small values stay exact)
        def g(w):
            return eps * math.log(w) + math.log1p(-w) - L
        lo = 0.5 * math.exp(L / eps)
        if lo <= 0:
            return 0.0
        hi = yc
        if g(hi) <= 0:
            return yc
        return brentq(g, lo, hi, xtol=1e-300, rtol=1e-15, maxiter=300)
    # target in (yc, 1); solve for u = 1 - w to keep precision near 1
    def g(u):
        return math.log(u) + eps * math.log1p(-u) - L
    lo = 0.5 * math.exp(L)
    if lo <= 0:
        return 1.0
    hi = 1 - yc
    if g(hi) <= 0:
        return yc
    u = brentq(g, lo, hi, xtol=1e-300, rtol=1e-15, maxiter=300)
    return 1.0 - u


def _dulac_real_derivative(y, w, eps):
    # h(D(y)) = h(y)  =>  D'(y) = h'(y)/h'(w) = [h dlog h](y) / [h dlog h](w)
    return complex(dlog_h(y, eps) / dlog_h(w, eps))


def h_inverse(modulus, theta, eps, component, half=1):
    """
    Point of the ``component`` ('D0' or 'D1') of ``C_theta`` at which
    ``|h| = modulus``.

    For ``theta == 0`` the point is real when ``modulus`` is below the
    center value, otherwise it lies on the branch of ``C+-0`` selected by
    ``half``.  ``theta`` may slightly exceed pi in absolute value for the
    D1 component (collar of ``C+-pi``).
    """
    eps = check_eps(eps)
    modulus = float(modulus)
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    yc = eps / (1 + eps)
    hc = h_section(yc, eps).real
    if theta == 0 and modulus < hc:
        # real partner on the requested side
        target = math.log(modulus)
        if component == D1:
            u = brentq(lambda u: math.log(u) + eps * math.log1p(-u) - target,
                       0.5 * math.exp(target), 1 - yc, xtol=1e-300,
                       rtol=1e-15, maxiter=300)
            return complex(1 - u, 0.0)
        w = brentq(lambda w: eps * math.log(w) + math.log1p(-w) - target,
                   0.5 * math.exp(target / eps), yc, xtol=1e-300,
                   rtol=1e-15, maxiter=300)
        return complex(w, 0.0)
    lo, hi = component_range(theta, eps, component, half)
    target = math.log(modulus)

    def g(p):
        y = point_on_component(p, theta, eps)
        return math.log(abs(h_section(complex(y), eps))) - target

    span = hi - lo
    a, b = None, None
    for frac in (1e-6, 1e-9, 1e-12, 1e-15):
        cand = lo + frac * span if (theta != 0) else lo + 1e-300 * span
        try:
            if g(cand) < 0:
                a = cand
                break
        except (ValueError, ZeroDivisionError):
            continue
    for frac in (1e-6, 1e-9, 1e-12, 1e-15):
        cand = hi - frac * span
        try:
            if g(cand) > 0:
                b = cand
                break
        except (ValueError, ZeroDivisionError):
            continue
    if theta == 0:
        a = lo + 1e-14 * span if a is None else a
    if a is None or b is None:
        raise MonotonicityViolation(
            f"target |h| not bracketed on {component} component of C_{theta}")
    p = brentq(g, a, b, xtol=1e-16, rtol=1e-15, maxiter=300)
    y = complex(point_on_component(p, theta, eps))
    return _newton_log_h(y, target + 1j * eps * theta, eps)


def _newton_log_h(y, L, eps, steps=5):
    """Polish ``y`` so that ``log_h(y) = L`` (principal logs)."""
    for _ in range(steps):
        try:
            r = log_h(y, eps) - L
        except BranchCut:
            break
        if abs(r) < NEWTON_TOL:
            break
        y_new = y - r / dlog_h(y, eps)
        try:
            if abs(log_h(y_new, eps) - L) >= abs(r):
                break
        except BranchCut:
            break
        y = y_new
    return y


def _collar_partner(y, th, eps):
    """Partner of a D1 point with |theta| near or beyond pi, by Newton
    continuation from the negative real ray."""
    v_mod = abs(h_section(y, eps))
    # r**eps (1 + r) = |v| solved in log r
    lv = math.log(v_mod)
    s = brentq(lambda s: eps * s + np.logaddexp(0.0, s) - lv, -700.0, 700.0,
               xtol=1e-15, rtol=1e-15, maxiter=500)
    r = math.exp(s)
    if abs(abs(th) - math.pi) <= SNAP_PI:
        return complex(-r, 0.0)
    # unwrapped arg of w continues past +-pi: arg w = theta - arg(1-w)/eps
    sgn = 1.0 if th > 0 else -1.0
    L = math.log(v_mod) + 1j * eps * th
    w = complex(-r, 0.0)

    def logh_cont(w):
        a = math.atan2(w.imag, w.real)
        if sgn > 0 and a < 0:
            a += 2 * math.pi
        if sgn < 0 and a > 0:
            a -= 2 * math.pi
        return eps * (math.log(abs(w)) + 1j * a) + np.log(1 - w)

    for _ in range(50):
        res = logh_cont(w) - L
        if abs(res) < NEWTON_TOL:
            break
        w = w - res / dlog_h(w, eps)
    else:
        raise NoConvergence("collar continuation did not converge")
    return complex(w)


def dulac_integrable(y, eps=None, branch=1):
    """
    Complex Dulac map of the integrable foliation.

    ``y`` in D1 maps into D0 and vice versa; ``C+0`` maps to ``C-0`` and
    ``C+-pi`` to the negative real axis.  ``branch`` is accepted for
    symmetry with :func:`dulac_perturbed`; both realizations give the same
    function.
    """
    if isinstance(y, DulacQuery):
        y, eps, branch = y.y, y.eps, y.branch
    eps = check_eps(eps)
    if branch not in (1, 2):
        raise ValueError("branch must be 1 or 2")
    y = complex(y)
    if y.imag == 0 and 0 < y.real < 1:
        return complex(dulac_real(y.real, eps), 0.0)
    if eps >= 1:
        raise InvalidEps("complex Dulac map is implemented for 0 < eps < 1")
    if y.imag == 0:
        raise BranchCut("y on (-inf, 0] or [1, inf)")
    if abs(y.imag) < NEAR_REAL * max(1.0, abs(y)) and 0 < y.real < 1:
        w0 = dulac_real(y.real, eps)
        return complex(w0) + _dulac_real_derivative(y.real, w0, eps) * 1j * y.imag
    th = float(theta_raw(y, eps))
    cls = classify_point(y, eps)
    if abs(th) >= math.pi - COLLAR:
        if cls == OUTSIDE and abs(th) > math.pi + 0.5:
            raise BranchCut("y outside the collar of C+-pi")
        # D0 points never reach |theta| = pi off the cut, so y is on the D1 side
        return _collar_partner(y, th, eps)
    modulus = abs(h_section(y, eps))
    half = -1 if y.imag > 0 else 1
    if abs(th) < 1e-14:
        return h_inverse(modulus, 0.0, eps, D0, half=half)
    # partner half-plane is opposite; component follows from sign(theta)
    if th > 0:
        comp = D0 if half > 0 else D1
    else:
        comp = D1 if half > 0 else D0
    return h_inverse(modulus, th, eps, comp, half=half)


@dataclass(frozen=True)
class DulacQuery:
    """A point of D1 (or its boundary) with a realization tag."""

    y: complex
    eps: float
    branch: int = 1


def dulac_perturbed(y, params, branch=1, sigma=None):
    """
    Dulac map of the perturbed foliation realized along ``sigma_y``.

    The leaf through ``(x_c, y)`` on the section ``x = x_c`` (focus abscissa)
    is transported along the lift of ``sigma_y`` on sheet ``+1`` (branch 1,
    the side ``x > x_c`` for real ``y``) or ``-1`` (branch 2) back to the
    section.  At ``delta = 0`` this reproduces :func:`dulac_integrable`.
    """
    from .foliation import find_focus
    from .leaves import build_sigma, lift_path
    from .transport import transport
    if branch not in (1, 2):
        raise ValueError("branch must be 1 or 2")
    y = complex(y)
    eps = params.eps
    if sigma is None:
        sigma = build_sigma(y, eps)
    guide = lift_path(sigma, y, eps, 1 if branch == 1 else -1)
    xc, _ = find_focus(params)
    _, w = transport(params, guide.x_samples, guide.y_samples, (xc, y), "x",
                     x_shift=xc, force_first_x=True)
    return w
