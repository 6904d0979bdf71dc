"""
Real dynamics of the perturbed foliation.

The foliation is ``A dx + B dy = 0`` with

    A = -2 eps x (1 - y) + P(x, y),
    B = eps (1 - y) - (y - x**2) + Q(x, y),

where ``P`` and ``Q`` are ``delta`` times fixed polynomial directions.  Its
tangent field ``(B, -A)`` turns counterclockwise around the center
``(0, eps/(1+eps))`` when ``delta = 0``.
"""

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .analytic import H_full, check_eps, h_section
from .dulac import dulac_real
from .errors import (EscapeFromAnnulus, NoConvergence, QuadratureFailure,
                     SingularApproach, TimeLimit)

RTOL = 1e-12
ATOL = 1e-13
TOL_CYCLE = 1e-10
C_MIN_FRAC = 1e-6


def _grid(c):
    c = np.atleast_2d(np.asarray(c, dtype=float))
    if c.ndim != 2:
        raise ValueError("coefficient grid must be 2-D")
    return c


@dataclass(frozen=True)
class FoliationParams:
    """
    One experiment: ``eps``, perturbation size ``delta`` and a direction.

    ``Pcoef[i][j]`` multiplies ``x**i y**j`` in ``P / delta``; likewise
    ``Qcoef`` for ``Q``.  Both grids are zero by default (integrable case).
    """

    eps: float
    delta: float = 0.0
    Pcoef: np.ndarray = field(default_factory=lambda: np.zeros((1, 1)))
    Qcoef: np.ndarray = field(default_factory=lambda: np.zeros((1, 1)))

    def __post_init__(self):
        object.__setattr__(self, "eps", check_eps(self.eps))
        if not (self.delta >= 0 and math.isfinite(self.delta)):
            raise ValueError("delta must be finite and >= 0")
        object.__setattr__(self, "Pcoef", _grid(self.Pcoef))
        object.__setattr__(self, "Qcoef", _grid(self.Qcoef))

    def with_delta(self, delta):
        return FoliationParams(self.eps, float(delta), self.Pcoef, self.Qcoef)

    def with_eps(self, eps):
        return FoliationParams(float(eps), self.delta, self.Pcoef, self.Qcoef)

    @property
    def y_c(self):
        return self.eps / (1 + self.eps)

    def terms(self):
        """Nonzero ``(i, j, coefficient * delta)`` triples of P and Q."""
        def nz(c):
            return tuple((i, j, float(c[i, j]) * self.delta)
                         for i in range(c.shape[0]) for j in range(c.shape[1])
                         if c[i, j] != 0 and self.delta != 0)
        return nz(self.Pcoef), nz(self.Qcoef)

    def is_real_symmetric(self):
        """True when the perturbed form is invariant under ``x -> -x``."""
        P, Q = self.Pcoef, self.Qcoef
        return (not np.any(P[0::2, :])) and (not np.any(Q[1::2, :]))


def poly_eval(coef, x, y):
    """``sum coef[i, j] x**i y**j`` for scalars or arrays (real or complex)."""
    return np.polynomial.polynomial.polyval2d(x, y, coef)


def one_form_coeffs(x, y, params):
    """Coefficients ``(A, B)`` of the perturbed one-form at ``(x, y)``."""
    eps, d = params.eps, params.delta
    A = -2 * eps * x * (1 - y)
    B = eps * (1 - y) - (y - x * x)
    if d:
        A = A + d * poly_eval(params.Pcoef, x, y)
        B = B + d * poly_eval(params.Qcoef, x, y)
    return A, B


def vector_field(x, y, params):
    A, B = one_form_coeffs(x, y, params)
    return B, -A


def _jacobian(x, y, params, h=1e-7):
    J = np.empty((2, 2))
    for k, (dx, dy) in enumerate(((h, 0.0), (0.0, h))):
        fp = vector_field(x + dx, y + dy, params)
        fm = vector_field(x - dx, y - dy, params)
        J[0, k] = (fp[0] - fm[0]) / (2 * h)
        J[1, k] = (fp[1] - fm[1]) / (2 * h)
    return J


def find_focus(params, tol=1e-15, maxiter=50):
    """
    Singular point of the perturbed field near the center, by Newton.

    Returns ``(x_c, y_c)``; at ``delta = 0`` this is exactly
    ``(0, eps/(1+eps))``.
    """
    p = np.array([0.0, params.y_c])
    if params.delta == 0:
        return 0.0, params.y_c
    for _ in range(maxiter):
        F = np.array(vector_field(p[0], p[1], params), dtype=float)
        if np.max(np.abs(F)) < tol:
            return float(p[0]), float(p[1])
        step = np.linalg.solve(_jacobian(p[0], p[1], params), F)
        p = p - step
        if np.max(np.abs(step)) < tol:
            return float(p[0]), float(p[1])
    raise NoConvergence("focus Newton iteration did not converge")


def focus_eigenvalues(params):
    x, y = find_focus(params)
    return np.linalg.eigvals(_jacobian(x, y, params))


@dataclass
class Orbit:
    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    events: list  # (t, x, y) of section crossings in order


def _rhs(params):
    def f(t, z):
        B, mA = vector_field(z[0], z[1], params)
        return [B, mA]
    return f


def integrate_orbit(start, params, t_max=200.0, section_x=None, n_cross=1,
                    direction=1, max_step=np.inf, sing_tol=1e-10):
    """
    Integrate ``(B, -A)`` from ``start`` until ``n_cross`` crossings of
    ``x = section_x`` (focus abscissa by default) or ``t_max``.

    ``direction = -1`` integrates backward in time.  Crossings at the
    starting point itself are ignored.
    """
    if section_x is None:
        section_x = find_focus(params)[0]
    x0, y0 = float(start[0]), float(start[1])
    if not (x0 * x0 < y0 < 1):
        raise EscapeFromAnnulus("start point outside the period annulus")
    if math.hypot(*vector_field(x0, y0, params)) < sing_tol:
        raise SingularApproach("start point is (numerically) singular")
    f = _rhs(params)
    if direction < 0:
        g = f

        def f(t, z):
            a, b = g(t, z)
            return [-a, -b]

    # the start lies on the section; gate the event until the orbit has left it
    s0 = 1.0 if f(0.0, [x0, y0])[0] >= 0 else -1.0
    t_gate = 1e-6

    def ev_cross(t, z):
        return z[0] - section_x if t > t_gate else s0
    ev_cross.terminal = n_cross
    ev_cross.direction = 0

    def ev_sing(t, z):
        return math.hypot(*vector_field(z[0], z[1], params)) - sing_tol
    ev_sing.terminal = True

    def ev_escape(t, z):
        # leave the annulus between the parabola and y = 1
        return min(1.0 - z[1] + 1e-9, z[1] - z[0] ** 2 + 1e-9)
    ev_escape.terminal = True

    sol = solve_ivp(f, (0.0, t_max), [x0, y0], method="DOP853", rtol=RTOL,
                    atol=ATOL, events=[ev_cross, ev_sing, ev_escape],
                    dense_output=False, max_step=max_step)
    if sol.t_events[1].size:
        raise SingularApproach("orbit approached a singular point")
    if sol.t_events[2].size:
        raise EscapeFromAnnulus("orbit left the period annulus")
    events = [(t, z[0], z[1]) for t, z in zip(sol.t_events[0], sol.y_events[0])]
    if len(events) < n_cross and sol.status != 1:
        raise TimeLimit("no section crossing before t_max")
    sign = -1.0 if direction < 0 else 1.0
    return Orbit(sign * sol.t, sol.y[0], sol.y[1], events)


def half_return(y, params, branch=1, t_max=200.0):
    """
    Half-return map on the section ``x = x_c`` above the focus.

    Branch 1 travels through ``x > x_c`` (backward time, as the flow is
    counterclockwise), branch 2 through ``x < x_c`` (forward time).
    """
    if branch not in (1, 2):
        raise ValueError("branch must be 1 or 2")
    xc, _ = find_focus(params)
    orb = integrate_orbit((xc, y), params, t_max=t_max, section_x=xc,
                          direction=-1 if branch == 1 else 1)
    return float(orb.events[0][2])


def displacement(y, params):
    """``half_return(y, 1) - half_return(y, 2)``."""
    return half_return(y, params, 1) - half_return(y, params, 2)


@dataclass(frozen=True)
class CycleRecord:
    y_fixed: float
    multiplicity_hint: int
    residual: float


def find_real_cycles(params, grid, tol=TOL_CYCLE, noise=1e-9):
    """
    Zeros of the displacement on ``grid`` (sign changes refined by brentq).

    Sign changes where both neighbouring values are below ``noise * delta``
    are treated as numerical noise.
    """
    grid = np.sort(np.asarray(grid, dtype=float))
    vals = np.array([displacement(y, params) for y in grid])
    floor = noise * max(params.delta, 1e-300)
    out = []
    for k in range(len(grid) - 1):
        a, b = vals[k], vals[k + 1]
        if a == 0.0 and abs(b) > floor:
            out.append(CycleRecord(float(grid[k]), 1, 0.0))
            continue
        if a * b < 0 and max(abs(a), abs(b)) > floor:
            r = brentq(lambda y: displacement(y, params), grid[k], grid[k + 1],
                       xtol=tol, rtol=1e-14)
            out.append(CycleRecord(float(r), 1, abs(displacement(r, params))))
    return out


def melnikov(c, params, n_nodes=None):
    """
    Pseudo-Abelian integral ``I(c) = oint M (P dx + Q dy)`` over the oval
    ``{H = c}``, counterclockwise, with ``M = (y - x**2)**(eps - 1)``.

    Uses only the direction (``Pcoef``, ``Qcoef``); ``delta`` is ignored.
    The oval is parametrized by integrating the unperturbed field from the
    section point ``(0, y)`` with ``h(y) = c``.
    """
    return _melnikov_parts(c, params)[0]


def _melnikov_parts(c, params):
    """``(I(c), oint |M (P dx + Q dy)|)``; the second entry scales roundoff."""
    eps = params.eps
    yc = params.y_c
    hc = float(h_section(yc, eps).real)
    if not (C_MIN_FRAC * hc < c < hc * (1 - 1e-10)):
        raise QuadratureFailure(f"level {c} too close to the boundary levels")
    y0 = level_to_y(c, eps)
    base = FoliationParams(eps)
    P, Q = params.Pcoef, params.Qcoef

    def f(t, z):
        x, y = z[0], z[1]
        B, mA = vector_field(x, y, base)
        # on the oval y - x**2 = (c/(1-y))**(1/eps); this form stays finite
        # when a trial step crosses the parabola
        m = (c / (1 - y)) ** ((eps - 1) / eps)
        g = m * (poly_eval(P, x, y) * B + poly_eval(Q, x, y) * mA)
        return [B, mA, g, abs(g)]

    s0 = 1.0 if f(0.0, [0.0, y0, 0.0, 0.0])[0] >= 0 else -1.0

    def ev(t, z):
        return z[0] if t > 1e-6 else s0
    ev.terminal = 2
    ev.direction = 0
    sol = solve_ivp(f, (0.0, 1e4), [0.0, y0, 0.0, 0.0], method="DOP853",
                    rtol=1e-12, atol=1e-14, events=ev)
    if len(sol.t_events[0]) < 2:
        raise QuadratureFailure("oval did not close")
    end = sol.y_events[0][1]
    return float(end[2]), float(end[3])


def level_to_y(c, eps):
    """Point ``y`` in ``(y_c, 1)`` with ``h(y) = c``."""
    yc = eps / (1 + eps)
    L = math.log(c)
    u = brentq(lambda u: math.log(u) + eps * math.log1p(-u) - L,
               0.5 * c, 1 - yc, xtol=1e-300, rtol=1e-15)
    return 1 - u


def y_to_level(y, eps):
    return float(h_section(y, eps).real)


def melnikov_prediction(y, params):
    """First-order displacement per unit delta: ``I(h(y)) / h'(D(y))``."""
    eps = params.eps
    w = dulac_real(y, eps)
    dh = w ** (eps - 1) * (eps - (1 + eps) * w)
    return melnikov(y_to_level(y, eps), params) / dh


def melnikov_zeros(params, levels, noise=1e-8):
    """
    Sign changes of ``melnikov`` on an increasing level grid.

    A value is treated as zero when it is below ``noise`` times the integral
    of the absolute integrand, so an integral that vanishes identically
    (for instance by symmetry) has no zeros rather than roundoff ones.
    """
    levels = np.asarray(levels, dtype=float)
    parts = np.array([_melnikov_parts(c, params) for c in levels])
    vals = parts[:, 0]
    floor = noise * parts[:, 1]
    scale = max(np.max(np.abs(vals)), 1e-300)
    out = []
    for k in range(len(levels) - 1):
        a, b = vals[k], vals[k + 1]
        if (a * b < 0 and max(abs(a), abs(b)) > 1e-9 * scale
                and abs(a) > floor[k] and abs(b) > floor[k + 1]):
            out.append(brentq(lambda c: melnikov(c, params), levels[k],
                              levels[k + 1], xtol=1e-14, rtol=1e-12))
    return out


def H_drift_along_orbit(orbit, eps):
    H = H_full(orbit.x, orbit.y, eps).real
    return float(np.max(np.abs(H - H[0])))
