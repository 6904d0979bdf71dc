"""
Isoclines of ``h(y) = y**eps (1 - y)`` on the section ``x = 0``.

The isocline of angle ``theta`` is ``{eps*arg(y) + arg(1-y) = eps*theta}``.
Writing ``y = rho*exp(i*phi)`` and solving for ``rho`` gives

    rho = sin(eps*(phi - theta)) / sin((1+eps)*phi - eps*theta),

which for ``theta`` in {0, +pi, -pi} reduces to the three boundary formulas
used to delimit the domains ``D0`` (around 0) and ``D1`` (around 1).

Conventions
-----------
``C+0`` is the upper-half branch of the ``theta = 0`` curve through the
center and ``C-0`` its mirror image; ``C-pi`` lies in the upper half plane and
``C+pi`` in the lower one.  For ``0 < eps < 1`` each isocline with
``0 < |theta| < pi`` has one component in each domain, with polar ranges

    D1, theta < 0 :  0 < phi < (pi + eps*theta)/(1+eps)
    D0, theta > 0 :  theta < phi < (pi + eps*theta)/(1+eps)

and the conjugate ranges for the opposite sign of ``theta``.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .analytic import check_eps, h_section, log_h, y_center
from .errors import BranchCut, InvalidEps, MonotonicityViolation, Pole, TraceStall

TOL_ISO = 1e-9
R_MAX = 10.0
CHORD_TOL = 1e-4
END_DIST = 5e-5  # distance kept from y = 1 at the inner end of D1 components

D0 = "D0"
D1 = "D1"
BOUNDARY = "boundary"
OUTSIDE = "outside"


@dataclass(frozen=True)
class IsoclineCurve:
    theta: float
    eps: float
    component: str
    samples: np.ndarray
    phi: np.ndarray = field(repr=False)
    phi_range: tuple
    name: str = ""

    @property
    def rho(self):
        return np.abs(self.samples)

    def residual(self):
        """Max of ``|eps*arg y + arg(1-y) - eps*theta|`` over the samples."""
        y = self.samples
        return float(np.max(np.abs(self.eps * np.angle(y) + np.angle(1 - y)
                                   - self.eps * self.theta)))

    def conj(self, name=""):
        return IsoclineCurve(-self.theta, self.eps, self.component,
                             np.conj(self.samples), -self.phi,
                             (-self.phi_range[1], -self.phi_range[0]), name)

    def rows(self):
        """(phi, rho, re, im) rows for CSV export."""
        y = self.samples
        return np.column_stack([self.phi, np.abs(y), y.real, y.imag])


def theta_raw(y, eps):
    """Unreduced ``(eps*arg y + arg(1-y))/eps``; continuous off both cuts."""
    eps = check_eps(eps)
    return np.imag(log_h(y, eps)) / eps


def theta_of(y, eps):
    """Isocline angle of ``y`` reduced to (-pi, pi]."""
    t = theta_raw(y, eps)
    r = np.pi - np.mod(np.pi - t, 2 * np.pi)
    return float(r) if np.ndim(r) == 0 else r


def isocline_radius(phi, theta, eps):
    """Polar radius of the isocline ``C_theta`` in direction ``phi``."""
    eps = check_eps(eps)
    den = np.sin((1 + eps) * phi - eps * theta)
    num = np.sin(eps * (phi - theta))
    scalar = np.ndim(den) == 0
    den = np.atleast_1d(np.asarray(den, dtype=float))
    num = np.atleast_1d(np.asarray(num, dtype=float))
    phi_a = np.broadcast_to(np.asarray(phi, dtype=float), den.shape)
    near = np.abs(den) <= 1e-15 * np.abs(num)  # radius beyond 1e15
    near |= den == 0
    if np.any(near):
        # removable singularity at phi = theta = 0 only
        bad = near & ~((phi_a == 0) & (theta == 0))
        if np.any(bad):
            raise Pole("denominator of the isocline formula vanishes")
    with np.errstate(divide="ignore", invalid="ignore"):
        rho = num / den
    if theta == 0:
        rho = np.where(phi_a == 0, eps / (1 + eps), rho)
    return float(rho[0]) if scalar else rho


def component_range(theta, eps, component, half=1):
    """
    Open polar interval of the ``component`` of ``C_theta``.

    The first returned endpoint is where ``|h| -> 0`` (y -> 1 for D1,
    y -> 0 for D0); the second is where the curve escapes to infinity.
    For ``theta == 0`` the non-real parts are the branches of the curve
    through the center; ``half`` selects the upper (+1) or lower (-1) one,
    and the "zero end" is then the center itself.
    """
    eps = check_eps(eps)
    if theta == 0:
        far = half * np.pi / (1 + eps)
        return (0.0, far)
    s = -1.0 if theta < 0 else 1.0
    if component == D1:
        return (0.0, (-s * np.pi + eps * theta) / (1 + eps))
    if component == D0:
        lo, hi = float(theta), (s * np.pi + eps * theta) / (1 + eps)
        if (hi - lo) * s <= 0:
            raise InvalidEps("empty D0 component (|theta| >= pi)")
        return (lo, hi)
    raise ValueError(f"unknown component {component!r}")


def point_on_component(phi, theta, eps):
    rho = isocline_radius(phi, theta, eps)
    return rho * np.exp(1j * np.asarray(phi))


def _phi_for_radius(theta, eps, lo, hi, radius):
    """Polar angle in (lo, hi) at which the isocline reaches ``radius``."""
    def g(p):
        with np.errstate(invalid="ignore"):
            return np.log(isocline_radius(p, theta, eps)) - np.log(radius)
    a = lo + 1e-9 * (hi - lo) if lo != 0 or theta != 0 else lo
    b = hi - 1e-13 * (hi - lo)
    ga = g(a) if isocline_radius(a, theta, eps) > 0 else -np.inf
    if ga >= 0:
        return a
    if g(b) <= 0:
        return b
    return brentq(g, a, b, xtol=1e-15, rtol=1e-15, maxiter=200)


def _phi_for_dist_to_one(theta, eps, lo, hi, dist):
    def g(p):
        return abs(point_on_component(p, theta, eps) - 1) - dist
    b = lo + 0.5 * (hi - lo)
    a = lo + 1e-14 * np.sign(hi - lo)
    if g(b) <= 0:
        return b
    return brentq(g, a, b, xtol=1e-17, rtol=1e-15, maxiter=200)


def _adaptive_phi(theta, eps, a, b, chord_tol, n0=65, max_depth=30):
    """Refine a uniform phi-grid until every chord midpoint lies within
    ``chord_tol`` of the curve."""
    phis = list(np.linspace(a, b, n0))
    pts = [point_on_component(p, theta, eps) for p in phis]
    out_phi, out_pts = [phis[0]], [pts[0]]
    stack = [(phis[i], pts[i], phis[i + 1], pts[i + 1], 0)
             for i in range(len(phis) - 1)][::-1]
    while stack:
        p0, y0, p1, y1, depth = stack.pop()
        pm = 0.5 * (p0 + p1)
        ym = point_on_component(pm, theta, eps)
        if depth < max_depth and abs(ym - 0.5 * (y0 + y1)) > chord_tol:
            stack.append((pm, ym, p1, y1, depth + 1))
            stack.append((p0, y0, pm, ym, depth + 1))
            continue
        out_phi.append(p1)
        out_pts.append(y1)
    return np.array(out_phi), np.array(out_pts, dtype=complex)


def trace_component(theta, eps, component, r_max=R_MAX, chord_tol=CHORD_TOL,
                    half=1, name=""):
    """
    Sample one component of ``C_theta`` from its zero end (|h| -> 0) out to
    ``|y| = r_max``.

    The samples are ordered by increasing ``|h|``; this is checked and a
    MonotonicityViolation is raised otherwise.
    """
    eps = check_eps(eps)
    lo, hi = component_range(theta, eps, component, half)
    if theta == 0:
        a = lo
    elif component == D1:
        a = _phi_for_dist_to_one(theta, eps, lo, hi, END_DIST)
    else:
        a = _phi_for_radius(theta, eps, lo, hi, 1e-6)
    b = _phi_for_radius(theta, eps, lo, hi, r_max)
    phi, y = _adaptive_phi(theta, eps, a, b, chord_tol)
    mod = np.abs(h_section(y, eps))
    if np.any(np.diff(mod) <= 0):
        raise MonotonicityViolation(
            f"|h| not increasing along {component} component of C_{theta}")
    return IsoclineCurve(float(theta), eps, component, y, phi,
                         (float(lo), float(hi)), name)


def trace_boundary(eps, r_max=R_MAX, chord_tol=CHORD_TOL):
    """
    The four boundary curves, keyed ``'+0', '-0', '+pi', '-pi'``.

    Requires ``0 < eps < 1`` (otherwise the ``C+-pi`` ranges are empty).
    """
    eps = check_eps(eps)
    if eps >= 1:
        raise InvalidEps("C+-pi are empty unless 0 < eps < 1")
    up0 = trace_component(0.0, eps, D1, r_max, chord_tol, half=1, name="C+0")
    mpi = trace_component(-np.pi, eps, D1, r_max, chord_tol, name="C-pi")
    return {
        "+0": up0,
        "-0": up0.conj("C-0"),
        "-pi": mpi,
        "+pi": mpi.conj("C+pi"),
    }


def classify_point(y, eps, tol=TOL_ISO):
    """
    Return one of ``'D0'``, ``'D1'``, ``'boundary'``, ``'outside'``.

    Membership in D0 u D1 is ``|theta_raw(y)| < pi``; the two domains are
    separated by the curve ``C+-0`` through the center, which is a polar
    graph ``rho0(phi)`` for ``|phi| < pi/(1+eps)``: D0 lies inside it.
    """
    eps = check_eps(eps)
    y = complex(y)
    if y == 1:
        raise BranchCut("y = 1 is excluded")
    if y.imag == 0 and (y.real <= 0 or y.real >= 1):
        return OUTSIDE
    t = theta_raw(y, eps)
    if abs(t) > np.pi + tol:
        return OUTSIDE
    if abs(abs(t) - np.pi) <= tol:
        return BOUNDARY
    phi = np.angle(y)
    if abs(phi) >= np.pi / (1 + eps):
        return D0
    rho0 = isocline_radius(phi, 0.0, eps)
    r = abs(y)
    if abs(r - rho0) <= tol * max(1.0, rho0):
        return BOUNDARY
    return D0 if r < rho0 else D1


@dataclass(frozen=True)
class SingularCurve:
    eps: float
    lobes: tuple  # each an array of complex samples, closed at the center

    @property
    def samples(self):
        return np.concatenate(self.lobes)


def _log_abs_f(y, eps):
    return np.log(abs(y)) + np.log(abs(1 - y)) / eps


def _dlog_f(y, eps):
    return 1 / y - 1 / (eps * (1 - y))


def trace_singular_curve(eps, step=1e-2, max_steps=200000, newton_tol=1e-13):
    """
    Level set ``|f(y)| = |f(y_c)|`` through the center.

    The center is a saddle of ``log|f|``; the level set leaves it along the
    four diagonals and closes into two lobes, one around 0 and one around 1.
    Each lobe is followed by an arclength predictor / Newton corrector.
    """
    eps = check_eps(eps)
    yc = y_center(eps)
    target = _log_abs_f(yc, eps)
    lobes = []
    for d0 in (np.exp(0.25j * np.pi), np.exp(0.75j * np.pi)):
        pts = [complex(yc)]
        y = yc + step * 0.1 * d0
        y = _correct(y, eps, target, newton_tol)
        pts.append(y)
        prev_dir = d0
        h = step
        closed = False
        for _ in range(max_steps):
            g = _dlog_f(y, eps)
            t = 1j * np.conj(g) / abs(g)
            if (t * np.conj(prev_dir)).real < 0:
                t = -t
            while True:
                try:
                    y_new = _correct(y + h * t, eps, target, newton_tol)
                except TraceStall:
                    y_new = None
                if y_new is not None and abs(y_new - y) < 2 * h:
                    break
                h *= 0.5
                if h < 1e-12:
                    raise TraceStall("singular-curve tracer stalled")
            prev_dir = (y_new - y) / abs(y_new - y)
            y = y_new
            pts.append(y)
            h = min(step, 1.5 * h)
            if len(pts) > 10 and abs(y - yc) < 2 * step:
                pts.append(complex(yc))
                closed = True
                break
        if not closed:
            raise TraceStall("singular-curve lobe did not close")
        lobes.append(np.array(pts))
    return SingularCurve(eps, tuple(lobes))


def _correct(y, eps, target, tol, maxiter=8):
    for _ in range(maxiter):
        g = _dlog_f(y, eps)
        r = _log_abs_f(y, eps) - target
        # Newton along the gradient of Re log f, which is conj(g)
        y = y - r * np.conj(g) / abs(g) ** 2
        if abs(r) < tol:
            return y
    if abs(_log_abs_f(y, eps) - target) < 1e3 * tol:
        return y
    raise TraceStall("corrector failed")
