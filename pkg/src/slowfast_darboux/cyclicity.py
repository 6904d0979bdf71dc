"""
Argument-principle bounds for the number of limit cycles.

Zeros of ``f = D1 - D2`` (difference of the two perturbed Dulac maps) in
the domain D count limit cycles and their complex companions.  D is
bounded by the curves ``{Im D1 = 0}`` near ``C+-pi``, a small arc
``|h| = h_min`` cutting off the saddle point ``y = 1``, and the vertical
line ``Re y = y_c'`` through the perturbed focus, indented around the
focus itself (a fixed point of both maps).  For ``eps`` not small the
Im-zero curves reach ``|y| = R_max`` before the vertical line and the
contour closes along that circle.

The contour is a polyline through traced nodes; the argument of ``f`` is
accumulated along it with linear subdivision until every phase step is
below ``pi/4``.
"""

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.optimize import brentq

from .analytic import check_eps, h_section
from .dulac import dulac_perturbed, h_inverse
from .errors import (DarbouxError, DegenerateCoincidence, InvalidEps,
                     RefinementLimit,
                     SeedInvalid, TraceStall, ZeroOnBoundary)
from .foliation import (FoliationParams, find_focus, find_real_cycles,
                        melnikov_zeros)
from .isoclines import D1, R_MAX
from .leaves import build_sigma

Y_LO_FRAC = 1e-3          # truncation level h_min = h(Y_LO_FRAC * y_c)
INDENT_FRAC = 0.1         # focus indentation radius / min(y_c, 1 - y_c)
N_ARC = 24
N_SEGMENT = 10
N_TRUNC = 12
N_INDENT = 8
PHASE_STEP = math.pi / 4
MAX_DEPTH = 14
TOL_ZERO = 1e-12
ETA_TOL = 1e-14
SECANT_ITER = 12
PETROV_SLACK = 1e-6


class PetrovViolation(DarbouxError):
    """Argument increase on an Im-zero arc exceeds the Petrov bound."""


class BoundViolation(DarbouxError):
    """A cyclicity experiment cell has more real cycles than its bound."""

    def __init__(self, message, table=None):
        super().__init__(message)
        self.table = table


# --------------------------------------------------------------------------
# contour types

@dataclass
class ContourPiece:
    """
    One oriented polyline of the contour.

    ``kind`` is one of ``'im_zero'`` (``Im D^branch = 0``), ``'segment'``
    (on ``Re y = y_c'``), ``'indent'``, ``'truncation'``, ``'rmax'`` or
    ``'synthetic'``.
    """

    name: str
    y: np.ndarray
    kind: str = "synthetic"
    branch: int = 0


@dataclass
class ContourD:
    """
    Positively oriented closed contour as a list of pieces.

    With ``symmetric=True`` the pieces describe the upper half only, from
    a real point to a real point; the lower half is the conjugate path
    traversed backwards and is never evaluated.
    """

    pieces: list
    symmetric: bool = False
    eps: float = None
    y_focus: float = None
    r_max: float = R_MAX
    h_min: float = None

    def gaps(self):
        """Distances between consecutive piece endpoints (closing gap last)."""
        out = [abs(a.y[-1] - b.y[0]) for a, b in zip(self.pieces, self.pieces[1:])]
        first, last = self.pieces[0].y[0], self.pieces[-1].y[-1]
        if self.symmetric:
            out.append(abs(first.imag) + abs(last.imag))
        else:
            out.append(abs(last - first))
        return out

    def polygon(self):
        """Closed vertex list of the full contour."""
        ys = np.concatenate([p.y for p in self.pieces])
        if self.symmetric:
            ys = np.concatenate([ys, np.conj(ys[::-1])])
        return ys

    def real_range(self):
        """Interval of the real axis inside a symmetric contour."""
        a = self.pieces[0].y[0].real
        b = self.pieces[-1].y[-1].real
        return min(a, b), max(a, b)

    def contains(self, y):
        return bool(winding_number_polygon(self.polygon(), y) != 0)


def winding_number_polygon(poly, y):
    """Winding number of a closed polyline around ``y``."""
    z = np.asarray(poly, dtype=complex) - complex(y)
    ang = np.angle(np.roll(z, -1) / z)
    return int(round(float(np.sum(ang)) / (2 * math.pi)))


def circle_contour(center, radius, n=64):
    """Synthetic positively oriented circle."""
    t = np.linspace(0.0, 2 * math.pi, n + 1)
    return ContourD([ContourPiece("circle", center + radius * np.exp(1j * t))])


# --------------------------------------------------------------------------
# winding report

@dataclass
class WindingReport:
    """
    Result of :func:`variation_of_argument`.

    ``bound`` is the nearest integer to ``total_variation / 2 pi`` (the
    pre-rounding ``residual`` is reported); ``petrov_zero_counts`` holds
    the sign-change count of ``Im f`` on every Im-zero piece.
    """

    total_variation: float
    piece_variation: dict
    petrov_zero_counts: dict
    segment_variation: float
    bound: int
    residual: float
    n_evaluations: int
    samples: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("negative winding on a positively oriented contour")
        for name, k in self.petrov_zero_counts.items():
            var = abs(self.piece_variation[name])
            if k < var / math.pi - 1 - PETROV_SLACK:
                raise PetrovViolation(
                    f"piece {name}: {k} zeros of Im f but argument increase "
                    f"{var:.4f}")

    def petrov_bound(self):
        """Upper bound on the winding implied by the Petrov counts alone."""
        return {n: math.pi * (k + 1) for n, k in self.petrov_zero_counts.items()}

    def as_dict(self):
        return {
            "total_variation": self.total_variation,
            "piece_variation": dict(self.piece_variation),
            "petrov_zero_counts": dict(self.petrov_zero_counts),
            "segment_variation": self.segment_variation,
            "bound": self.bound,
            "residual": self.residual,
            "n_evaluations": self.n_evaluations,
        }


def _accumulate(f_raw, ys, depth_limit, tol_zero, counter):
    """Continuous argument of ``f`` along the polyline ``ys``."""
    def f(y):
        counter[0] += 1
        v = complex(f_raw(y))
        if v == 0 or v != v:
            raise ZeroOnBoundary(f"f = {v} on the contour at y = {y}")
        return v

    pts = [complex(ys[0])]
    vals = [f(ys[0])]
    for b in ys[1:]:
        b = complex(b)
        fb = f(b)
        stack = [(b, fb, 0)]
        while stack:
            yb, fb_, d = stack[-1]
            ya, fa = pts[-1], vals[-1]
            step = np.angle(fb_ / fa)
            if abs(step) < PHASE_STEP:
                pts.append(yb)
                vals.append(fb_)
                stack.pop()
                continue
            if d >= depth_limit:
                raise RefinementLimit(
                    f"phase step {step:.3f} still too large near y = {yb}")
            ym = 0.5 * (ya + yb)
            fm = f(ym)
            stack.append((ym, fm, d + 1))
    vals = np.array(vals)
    pts = np.array(pts)
    scale = float(np.max(np.abs(vals)))
    if scale == 0 or np.min(np.abs(vals)) <= tol_zero * scale:
        k = int(np.argmin(np.abs(vals)))
        raise ZeroOnBoundary(f"|f| vanishes on the contour near y = {pts[k]}")
    steps = np.angle(vals[1:] / vals[:-1])
    return float(np.sum(steps)), pts, vals


def _sign_changes(v):
    s = np.sign(v[np.abs(v) > 0])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def variation_of_argument(f, contour, max_depth=MAX_DEPTH, tol_zero=TOL_ZERO):
    """
    Total increase of ``arg f`` along ``contour``.

    Parameters
    ----------
    f : callable
        Analytic function of one complex variable; for a symmetric
        contour it must satisfy ``f(conj y) = conj f(y)``.
    contour : ContourD
    max_depth : int
        Maximum bisection depth per polyline edge.
    tol_zero : float
        ``|f|`` below ``tol_zero * max|f|`` on a sample raises
        :class:`ZeroOnBoundary`.

    Returns
    -------
    WindingReport
    """
    counter = [0]
    piece_var, petrov, samples = {}, {}, {}
    seg = 0.0
    for p in contour.pieces:
        var, pts, vals = _accumulate(f, p.y, max_depth, tol_zero, counter)
        piece_var[p.name] = var
        samples[p.name] = (pts, vals)
        if p.kind == "im_zero":
            petrov[p.name] = _sign_changes(vals.imag)
        if p.kind in ("segment", "indent"):
            seg += var
    total = sum(piece_var.values())
    if contour.symmetric:
        total *= 2
        seg *= 2
    n = total / (2 * math.pi)
    bound = int(round(n))
    return WindingReport(total, piece_var, petrov, seg, bound,
                         abs(n - bound), counter[0], samples)


# --------------------------------------------------------------------------
# Im-zero curves

@dataclass
class ImZeroCurve:
    """Samples of ``{Im D^branch = 0}`` parametrized by ``|h|``."""

    y: np.ndarray
    modulus: np.ndarray
    eta: np.ndarray
    branch: int
    sign: int
    eps: float


def _theta(sign, eta):
    # sign -1: theta = -pi + eta (upper half plane); +1: theta = pi - eta
    return sign * (math.pi - eta)


def _sign_of(sign):
    s = float(sign)
    if s == 0:
        raise ValueError("sign must be +pi or -pi")
    return -1 if s < 0 else 1


class _ImZeroTracer:
    """Corrector for points of ``{Im D^b = 0}`` at prescribed ``|h|``."""

    def __init__(self, params, branch, sign):
        self.params = params
        self.eps = params.eps
        self.branch = branch
        self.sign = sign

    def point(self, s, eta):
        return h_inverse(s, _theta(self.sign, eta), self.eps, D1)

    def g(self, s, eta):
        y = self.point(s, eta)
        return dulac_perturbed(y, self.params, self.branch).imag, y

    def correct(self, s, eta0, seed=False):
        """Secant iteration in ``eta``; returns ``(eta, y)``."""
        err = SeedInvalid if seed else TraceStall
        try:
            g0, y0 = self.g(s, eta0)
            if g0 == 0.0:
                return eta0, y0
            d = 1e-6
            eta1 = eta0 + d
            g1, y1 = self.g(s, eta1)
            for _ in range(SECANT_ITER):
                if g1 == g0:
                    break
                eta2 = eta1 - g1 * (eta1 - eta0) / (g1 - g0)
                eta0, g0 = eta1, g1
                eta1 = eta2
                g1, y1 = self.g(s, eta1)
                if abs(eta1 - eta0) < ETA_TOL or abs(g1) < 1e-15 * max(1.0, abs(y1)):
                    return eta1, y1
        except DarbouxError as exc:
            raise err(f"Im-zero corrector failed at |h| = {s}: {exc}") from None
        if abs(g1) < 1e-11:
            return eta1, y1
        raise err(f"Im-zero corrector did not converge at |h| = {s}")


def truncation_level(eps):
    """``h_min = h(y_lo)`` with ``y_lo = Y_LO_FRAC * y_c``."""
    yc = eps / (1 + eps)
    ylo = Y_LO_FRAC * yc
    return ylo ** eps * (1 - ylo)


def _exit_level(eps, sign, y_left, r_max, s_min):
    """Level where the unperturbed ``C_{sign pi}`` leaves the box."""
    def y_at(s):
        return h_inverse(s, sign * math.pi, eps, D1)

    def out(s):
        y = y_at(s)
        return y.real < y_left or abs(y) > r_max

    lo, hi = s_min, 2 * s_min
    while not out(hi):
        lo, hi = hi, 2 * hi
        if hi > 1e12:
            raise TraceStall("boundary curve never leaves the box")
    for _ in range(60):
        mid = math.sqrt(lo * hi)
        if out(mid):
            hi = mid
        else:
            lo = mid
    y = y_at(hi)
    return lo, ("segment" if abs(y) <= r_max else "rmax")


def trace_im_zero_curve(branch, sign, params, s_min=None, r_max=R_MAX,
                        y_left=None, n_nodes=N_ARC, exit_kind=False):
    """
    Trace ``{Im dulac_perturbed(y, params, branch) = 0}`` near ``C_{sign pi}``.

    Nodes are placed at geometrically spaced values of ``|h|`` from
    ``s_min`` (default: the truncation level) to where the curve reaches
    ``Re y = y_left`` (default: the focus ordinate) or ``|y| = r_max``;
    the last node lies exactly on that line or circle.  At each node the
    argument offset ``eta`` from ``C_{sign pi}`` is found by secant
    iteration, predicted from the previous nodes.

    Returns
    -------
    ImZeroCurve, or ``(ImZeroCurve, kind)`` with ``exit_kind=True`` where
    kind is ``'segment'`` or ``'rmax'``.
    """
    eps = check_eps(params.eps)
    if branch not in (1, 2):
        raise ValueError("branch must be 1 or 2")
    sg = _sign_of(sign)
    if s_min is None:
        s_min = truncation_level(eps)
    if y_left is None:
        y_left = find_focus(params)[1]
    tr = _ImZeroTracer(params, branch, sg)
    s_exit, kind = _exit_level(eps, sg, y_left, r_max, s_min)
    mods = np.geomspace(s_min, s_exit, n_nodes)
    etas, ys = [], []
    for k, s in enumerate(mods):
        if k >= 2:
            t = math.log(s / mods[k - 1]) / math.log(mods[k - 1] / mods[k - 2])
            guess = etas[-1] + t * (etas[-1] - etas[-2])
        else:
            guess = etas[-1] if etas else 0.0
        eta, y = tr.correct(s, guess, seed=(k == 0))
        etas.append(eta)
        ys.append(y)

    # land the last node exactly on the exit line / circle
    def miss(logs):
        eta, y = tr.correct(math.exp(logs), etas[-1])
        return (y.real - y_left) if kind == "segment" else (abs(y) - r_max)

    a, b = math.log(mods[-2]), math.log(mods[-1])
    fa, fb = miss(a), miss(b)
    k = 0
    while fa * fb > 0:
        b += 0.05 * (b - a) + 1e-3
        fb = miss(b)
        k += 1
        if k > 40:
            raise TraceStall("Im-zero curve does not reach the exit line")
    ls = brentq(miss, a, b, xtol=1e-13, rtol=1e-13)
    eta, y = tr.correct(math.exp(ls), etas[-1])
    mods[-1] = math.exp(ls)
    etas[-1], ys[-1] = eta, y
    curve = ImZeroCurve(np.array(ys), mods, np.array(etas), branch, sg, eps)
    return (curve, kind) if exit_kind else curve


def build_contour(params, branch=1, r_max=R_MAX, n_arc=N_ARC,
                  indent_frac=INDENT_FRAC, symmetric=True):
    """
    Contour of D for ``f = D1 - D2`` with Im-zero arcs of ``branch``.

    With ``symmetric=True`` only the upper half is built (valid for the
    real coefficients used throughout); otherwise the lower half is traced
    independently.
    """
    eps = check_eps(params.eps)
    if eps >= 1:
        raise InvalidEps("the contour of D needs 0 < eps < 1")
    _, yf = find_focus(params)
    yc = eps / (1 + eps)
    r_ind = indent_frac * min(yc, 1 - yc)
    s_min = truncation_level(eps)

    def half(sg):
        # from the real truncation point to the real indentation point,
        # through the half plane of C_{sg pi}; sg = -1 is the upper half
        curve, kind = trace_im_zero_curve(branch, sg * math.pi, params, s_min,
                                          r_max, yf, n_arc, exit_kind=True)
        th_end = _theta(sg, curve.eta[0])
        ths = np.linspace(0.0, th_end, N_TRUNC)
        trunc = np.array([h_inverse(s_min, t, eps, D1, half=1) for t in ths])
        trunc[-1] = curve.y[0]
        pieces = [ContourPiece("truncation", trunc, "truncation"),
                  ContourPiece(f"arc{branch}", curve.y, "im_zero", branch)]
        corner = curve.y[-1]
        if kind == "rmax":
            a0 = math.atan2(corner.imag, corner.real)
            a1 = -sg * math.acos(yf / r_max)
            ang = np.linspace(a0, a1, N_SEGMENT)
            arc = r_max * np.exp(1j * ang)
            arc[0] = corner
            pieces.append(ContourPiece("rmax", arc, "rmax"))
            corner = arc[-1]
        top = corner.imag
        im = np.linspace(top, -sg * r_ind, N_SEGMENT)
        segm = yf + 1j * im
        segm[0] = corner
        pieces.append(ContourPiece("segment", segm, "segment"))
        phi = np.linspace(-sg * 0.5 * math.pi, 0.0, N_INDENT)
        ind = yf + r_ind * np.exp(1j * phi)
        ind[-1] = complex(yf + r_ind)
        pieces.append(ContourPiece("indent", ind, "indent"))
        return pieces

    upper = half(-1)
    if symmetric:
        pieces = upper
    else:
        lower = half(1)
        rev = [ContourPiece(p.name + "_lower", p.y[::-1], p.kind, p.branch)
               for p in reversed(lower)]
        pieces = [ContourPiece(p.name + "_upper", p.y, p.kind, p.branch)
                  for p in upper] + rev
    return ContourD(pieces, symmetric, eps, yf, r_max, s_min)


def dulac_difference(params):
    """``y -> D1(y) - D2(y)`` for the perturbed foliation."""
    def f(y):
        y = complex(y)
        sigma = build_sigma(y, params.eps)
        return (dulac_perturbed(y, params, 1, sigma)
                - dulac_perturbed(y, params, 2, sigma))
    return f


# --------------------------------------------------------------------------
# intersections

@dataclass(frozen=True)
class Intersection:
    y: complex
    index1: int
    index2: int
    angle: float
    multiplicity_hint: int


def count_curve_intersections(c1, c2, coincide_tol=1e-10, tangent_angle=1e-3):
    """
    Intersection points of two sampled curves (polylines).

    Each crossing pair of segments yields one point found by solving the
    2x2 linear system of the segments; nearly parallel crossings are
    flagged with multiplicity hint 2.

    Raises
    ------
    DegenerateCoincidence
        When every sample of one curve lies on the other.
    """
    a = np.asarray(getattr(c1, "y", c1), dtype=complex)
    b = np.asarray(getattr(c2, "y", c2), dtype=complex)
    scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))), 1.0)
    if _hausdorff_to_polyline(a, b) < coincide_tol * scale and \
            _hausdorff_to_polyline(b, a) < coincide_tol * scale:
        raise DegenerateCoincidence("curves coincide within tolerance")
    out = []
    for i in range(len(a) - 1):
        p, r = a[i], a[i + 1] - a[i]
        for j in range(len(b) - 1):
            q, s = b[j], b[j + 1] - b[j]
            den = (np.conj(r) * s).imag
            if den == 0:
                continue
            qp = q - p
            t = (np.conj(qp) * s).imag / den
            u = (np.conj(qp) * r).imag / den
            last_i = i == len(a) - 2
            last_j = j == len(b) - 2
            if 0 <= t < 1 or (last_i and t == 1):
                if 0 <= u < 1 or (last_j and u == 1):
                    ang = abs(math.asin(max(-1.0, min(1.0, den / (abs(r) * abs(s))))))
                    out.append(Intersection(complex(p + t * r), i, j, ang,
                                            2 if ang < tangent_angle else 1))
    return out


def _hausdorff_to_polyline(pts, poly):
    """Max over ``pts`` of the distance to the polyline ``poly``."""
    worst = 0.0
    a, b = poly[:-1], poly[1:]
    d = b - a
    L2 = np.maximum(np.abs(d) ** 2, 1e-300)
    for z in pts:
        t = np.clip(((z - a) * np.conj(d)).real / L2, 0.0, 1.0)
        worst = max(worst, float(np.min(np.abs(a + t * d - z))))
    return worst


# --------------------------------------------------------------------------
# interior zeros and the experiment

def newton_zeros(f, contour, n_seed=4, h=1e-4, tol=1e-9, maxiter=15):
    """
    Zeros of ``f`` inside ``contour`` by Newton iteration from a
    rectangular seed grid; duplicates are merged.

    The derivative is a central difference with step ``h``: ``f`` is only
    accurate to about ``1e-10`` in absolute terms while its size is of the
    order of ``delta``, so small steps would be dominated by noise.  For a
    symmetric contour only upper-half and real seeds are used and
    conjugates are added.
    """
    poly = contour.polygon()
    xs = np.linspace(poly.real.min(), poly.real.max(), n_seed + 2)[1:-1]
    if contour.symmetric:
        ys = np.linspace(0.0, poly.imag.max(), n_seed + 1)[:-1]
    else:
        ys = np.linspace(poly.imag.min(), poly.imag.max(), n_seed + 2)[1:-1]
    seeds = [complex(x0, y0) for x0 in xs for y0 in ys]
    if contour.symmetric:
        a, b = contour.real_range()
        seeds += [complex(x0) for x0 in np.linspace(a, b, n_seed + 2)[1:-1]]
    found = []
    for z in seeds:
        if winding_number_polygon(poly, z) == 0:
            continue
        try:
            z = _newton(f, z, poly, h, tol, maxiter)
        except DarbouxError:
            continue
        if z is None:
            continue
        if contour.symmetric and abs(z.imag) < 1e-7:
            z = complex(z.real, 0.0)
        if all(abs(z - w) > 1e-6 for w in found):
            found.append(z)
            if contour.symmetric and z.imag != 0:
                found.append(z.conjugate())
    return sorted(found, key=lambda w: (w.real, w.imag))


def _newton(f, z, poly, h, tol, maxiter):
    for _ in range(maxiter):
        fz = f(z)
        df = (f(z + h) - f(z - h)) / (2 * h)
        if df == 0:
            return None
        step = fz / df
        if abs(step) > 0.25:
            step *= 0.25 / abs(step)
        z = z - step
        if winding_number_polygon(poly, z) == 0:
            return None
        if abs(step) < tol * max(1.0, abs(z)):
            return z
    return None


@dataclass
class ExperimentRow:
    eps: float
    delta: float
    bound: object
    total_variation: object
    residual: object
    real_cycles: int
    melnikov_zeros: int
    violation: bool
    error: str = ""

    def as_dict(self):
        return dict(self.__dict__)


@dataclass
class ExperimentTable:
    rows: list

    def columns(self):
        return list(ExperimentRow.__dataclass_fields__)

    def violations(self):
        return [r for r in self.rows if r.violation]

    def bounds(self, delta=None):
        return [r.bound for r in self.rows
                if (delta is None or r.delta == delta) and r.bound is not None]

    def as_dicts(self):
        return [r.as_dict() for r in self.rows]


def cycle_grid(contour, n=40):
    """
    Real grid strictly inside the real range of a symmetric contour,
    geometric in ``1 - y`` so the saddle end is resolved.
    """
    a, b = contour.real_range()
    u = np.geomspace(1 - a, 1 - b, n + 2)[1:-1]
    return np.sort(1 - u)


def run_cell(params, r_max=R_MAX, n_grid=40, n_levels=30, tol_zero=TOL_ZERO,
             tol_cycle=1e-10):
    """
    One experiment cell: contour, winding report, real cycles inside the
    contour's real range and Melnikov zeros over the same levels.

    Returns ``(ExperimentRow, WindingReport or None, ContourD or None)``.
    """
    eps, delta = params.eps, params.delta
    s_min = truncation_level(eps)
    yc = eps / (1 + eps)
    hc = yc ** eps * (1 - yc)
    try:
        levels = np.geomspace(s_min * 1.01, hc * 0.999, n_levels)
        mz = len(melnikov_zeros(params, levels))
    except DarbouxError:
        mz = -1
    if delta == 0:
        # integrable: D1 = D2 identically, every real orbit is closed
        return ExperimentRow(eps, delta, None, None, None, 0, mz, False,
                             "integrable (D1 = D2)"), None, None
    try:
        contour = build_contour(params, r_max=r_max)
        rep = variation_of_argument(dulac_difference(params), contour,
                                    tol_zero=tol_zero)
        cycles = find_real_cycles(params, cycle_grid(contour, n_grid),
                                  tol=tol_cycle)
    except DarbouxError as exc:
        return ExperimentRow(eps, delta, None, None, None, 0, mz, False,
                             f"{type(exc).__name__}: {exc}"), None, None
    nc = len(cycles)
    return ExperimentRow(eps, delta, rep.bound, rep.total_variation,
                         rep.residual, nc, mz, nc > rep.bound), rep, contour


def cyclicity_experiment(eps_grid, direction, delta_seq, r_max=R_MAX,
                         n_grid=40, raise_on_violation=True):
    """
    Bound-versus-actual sweep.

    Parameters
    ----------
    eps_grid : sequence of float
    direction : (Pcoef, Qcoef)
        Coefficient grids of the perturbation direction.
    delta_seq : sequence of float
        Perturbation sizes; an empty sequence runs the ``delta = 0`` baseline.

    Returns
    -------
    ExperimentTable
        One row per ``(eps, delta)``.  Cell failures are recorded in the
        row's ``error`` field.  If any cell has more real cycles than its
        bound, :class:`BoundViolation` is raised after the sweep (with the
        table attached) unless ``raise_on_violation`` is false.
    """
    Pcoef, Qcoef = direction
    deltas = list(delta_seq) or [0.0]
    rows = []
    for eps in eps_grid:
        for delta in deltas:
            params = FoliationParams(float(eps), float(delta), Pcoef, Qcoef)
            row, _, _ = run_cell(params, r_max=r_max, n_grid=n_grid)
            rows.append(row)
    table = ExperimentTable(rows)
    bad = table.violations()
    if bad and raise_on_violation:
        raise BoundViolation(
            f"{len(bad)} cell(s) with more real cycles than the bound", table)
    return table


# used by the CLI and demos
REFERENCE_DIRECTION = ([[0.0, 1.0, -0.5]], [[0.0]])
