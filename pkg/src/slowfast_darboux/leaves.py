"""
Leaves of the integrable foliation as double covers of the y-plane.

The leaf through ``(0, y0)`` is ``x**2 = y - f(y0) (1 - y)**(-1/eps)``,
a double cover of the y-plane ramified over the solutions of
``f(y) = f(y0)``.  Over the working domain these are ``y0`` and its
Dulac image.  This module builds the y-plane paths ``sigma_y`` joining a
point to its Dulac image, lifts them to leaves, assembles the figure-eight
loop and transports perturbed leaves around it.
"""

from dataclasses import dataclass
import math

import numpy as np

from .analytic import (check_eps, dlog_h, f_rs, h_section, log_h,
                       principal_power)
from .dulac import dulac_integrable, dulac_real
from .errors import AtRamification, LiftAmbiguity, TraceStall
from .transport import transport

L_STEP = 0.03
N_REAL = 60
H_MID_FRAC = 0.8
RAMIFICATION_TOL = 1e-13
DETOUR_FRAC = 0.05


def ramification_pair(y0, eps):
    """The two ramification points ``(y0, D(y0))`` over the working domain."""
    return complex(y0), complex(dulac_integrable(y0, eps))


def _leaf_q(y, y0, eps):
    """``x**2`` on the leaf through ``(0, y0)``."""
    return y - f_rs(y0, eps) * principal_power(1 - np.asarray(y, dtype=complex),
                                               -1.0 / eps)


def leaf_x(y, y0, eps, sign=1):
    """
    Signed square root ``x = sign * sqrt(x**2)`` on the leaf through
    ``(0, y0)``, principal branch of the square root.

    Use :func:`lift_path` for values continuous along a path.
    """
    eps = check_eps(eps)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    y = complex(y)
    if abs(y - complex(y0)) < RAMIFICATION_TOL:
        raise AtRamification("y is the ramification point y0")
    return sign * complex(np.sqrt(_leaf_q(y, y0, eps)))


@dataclass
class SigmaPath:
    """Samples of a y-plane path from ``y`` to ``D(y)``; ``pin`` indexes
    the sample at the center ordinate (or -1 when absent)."""

    y: np.ndarray
    pin: int
    eps: float

    def __len__(self):
        return len(self.y)


def _log_h_cont(y, eps, arg_ref):
    """``eps log y + Log(1 - y)`` with ``arg y`` taken nearest ``arg_ref``, so
    continuation may cross the negative real axis."""
    a = math.atan2(y.imag, y.real)
    a += 2 * math.pi * round((arg_ref - a) / (2 * math.pi))
    return eps * complex(math.log(abs(y)), a) + complex(np.log(1 - y)), a


def _newton_to(y, L, eps, arg_ref, maxiter=30):
    for _ in range(maxiter):
        v, a = _log_h_cont(y, eps, arg_ref)
        r = v - L
        if abs(r) < 1e-13:
            return y, a
        y = y - r / dlog_h(y, eps)
        arg_ref = a
    v, a = _log_h_cont(y, eps, arg_ref)
    if abs(v - L) < 1e-11:
        return y, a
    raise TraceStall("Newton continuation of log h failed")


def _continue(y_start, Ls, eps):
    y = complex(y_start)
    a = math.atan2(y.imag, y.real)
    out = [y]
    for L in Ls[1:]:
        y, a = _newton_to(y, L, eps, a)
        out.append(y)
    return out


def _real_piece(a, b, n, cluster_a):
    s = np.linspace(0.0, 1.0, n)
    w = 1 - np.cos(0.5 * np.pi * s) if cluster_a else s
    return a + (b - a) * w


def build_sigma(y, eps, l_step=L_STEP, n_real=N_REAL):
    """
    Path ``sigma_y`` from ``y`` in D1 to ``D(y)`` in the closure of D0.

    For real ``y`` this is the segment ``[y, D(y)]``.  Otherwise the path
    runs along a straight line in ``log h`` from ``log h(y)`` to a real
    level ``h_m = min(|h(y)|, 0.8 h_c)`` on the D1 side (for ``|h(y)|`` below
    ``0.8 h_c`` this is the constant-``|h|`` sweep to the real axis), then
    along the real segment through the center ordinate, then through the
    Dulac images of the first part in reverse order.
    """
    eps = check_eps(eps)
    y = complex(y)
    yc = eps / (1 + eps)
    if y.imag == 0:
        w = dulac_real(y.real, eps)
        p1 = _real_piece(y.real, yc, n_real, True)
        p2 = _real_piece(w, yc, n_real, True)[::-1]
        ys = np.concatenate([p1, p2[1:]]).astype(complex)
        return SigmaPath(ys, n_real - 1, eps)
    hc = yc ** eps * (1 - yc)
    L0 = complex(log_h(y, eps))
    Lm = math.log(min(abs(h_section(y, eps)), H_MID_FRAC * hc))
    n = max(24, int(math.ceil(abs(L0 - Lm) / l_step)))
    s = np.linspace(0.0, 1.0, n + 1)
    t = np.sin(0.5 * np.pi * s) ** 2  # clustered at both ends
    Ls = L0 + (Lm - L0) * t
    d1 = _continue(y, Ls, eps)
    ym = d1[-1].real
    d1[-1] = complex(ym)
    wm = dulac_real(ym, eps)
    seg_a = _real_piece(ym, yc, n_real // 2, False)
    seg_b = _real_piece(yc, wm, n_real // 2, False)
    d0 = _continue(complex(wm), Ls[::-1][:-1], eps)
    w_end = dulac_integrable(y, eps)
    steps = np.abs(np.diff(np.array(d0)))
    if abs(d0[-1] - w_end) > 10 * (float(np.max(steps)) if steps.size else 0.0) + 1e-8:
        raise TraceStall("D0 continuation left the Dulac image branch")
    ys = np.array(d1 + list(seg_a[1:]) + list(seg_b[1:]) + d0[1:] + [w_end],
                  dtype=complex)
    pin = len(d1) + len(seg_a) - 2
    return SigmaPath(ys, pin, eps)


@dataclass
class LeafPath:
    """A path in a leaf: ``(x, y)`` samples with the covering sheet sign
    ``+1`` when ``x`` is the principal root, ``-1`` otherwise."""

    y_samples: np.ndarray
    x_samples: np.ndarray
    sign_track: np.ndarray
    level: complex
    y0: complex
    eps: float

    def covering_residual(self):
        """max ``|x**2 - (f(y) - f(y0)) (1 - y)**(-1/eps)|``."""
        y, x = self.y_samples, self.x_samples
        rhs = (f_rs(y, self.eps) - f_rs(self.y0, self.eps)) * principal_power(
            1 - y, -1.0 / self.eps)
        return float(np.max(np.abs(x * x - rhs)))

    def h_drift(self):
        """max ``|H(x, y) - H(x_0, y_0)|`` with ``H`` continued along the
        path from the principal value at the first sample."""
        return h_drift(self.x_samples, self.y_samples, self.eps)

    def rows(self):
        t = np.linspace(0.0, 1.0, len(self.y_samples))
        return np.column_stack([t, self.x_samples.real, self.x_samples.imag,
                                self.y_samples.real, self.y_samples.imag])


def h_drift(x, y, eps, level=None):
    """Deviation of ``(y - x**2)**eps (1 - y)`` from ``level`` (default: its
    value at the first sample) along a path, with the power continued from
    the principal value at the first sample."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    p0 = y - x * x
    arg = np.angle(p0[0]) + np.concatenate(
        [[0.0], np.cumsum(np.angle(p0[1:] / p0[:-1]))])
    H = np.exp(eps * (np.log(np.abs(p0)) + 1j * arg)) * (1 - y)
    ref = H[0] if level is None else level
    return float(np.max(np.abs(H - ref)))


def _continuous_sqrt(q, pin, x_pin):
    x = np.empty_like(q)
    x[pin] = x_pin
    r = np.sqrt(q)
    for k in range(pin + 1, len(q)):
        x[k] = r[k] if abs(r[k] - x[k - 1]) <= abs(r[k] + x[k - 1]) else -r[k]
    for k in range(pin - 1, -1, -1):
        x[k] = r[k] if abs(r[k] - x[k + 1]) <= abs(r[k] + x[k + 1]) else -r[k]
    return x


def lift_path(sigma, y0, eps, initial_sign=1, allow_interior=False):
    """
    Lift a y-plane path to the leaf through ``(0, y0)``.

    The sheet is fixed at the path's pin sample (the center ordinate when
    present, else the second sample) by ``initial_sign`` times the
    principal square root; elsewhere ``x`` is continued by nearest root.
    """
    eps = check_eps(eps)
    if initial_sign not in (1, -1):
        raise ValueError("initial_sign must be +1 or -1")
    ys = np.asarray(sigma.y if isinstance(sigma, SigmaPath) else sigma,
                    dtype=complex)
    pin = sigma.pin if isinstance(sigma, SigmaPath) and sigma.pin >= 0 else 1
    q = np.asarray(_leaf_q(ys, y0, eps), dtype=complex)
    scale = max(1.0, float(np.max(np.abs(q))))
    if not allow_interior and np.any(np.abs(q[1:-1]) < RAMIFICATION_TOL * scale):
        raise LiftAmbiguity("path meets a ramification point in its interior")
    # endpoints over ramification points sit exactly on x = 0
    for k in (0, len(q) - 1):
        if abs(q[k]) < 1e-10 * scale:
            q[k] = 0.0
    x_pin = initial_sign * np.sqrt(q[pin])
    x = _continuous_sqrt(q, pin, x_pin)
    r = np.sqrt(q)
    sign = np.where(np.abs(x - r) <= np.abs(x + r), 1, -1)
    level = complex(h_section(y0, eps))
    return LeafPath(ys, x, sign, level, complex(y0), eps)


def integrated_lift(sigma, y0, params, branch=1):
    """
    Leaf path obtained by integrating ``A dx + B dy = 0`` along ``sigma``
    from ``(x_c, y0)``; at ``delta = 0`` it reproduces :func:`lift_path`.
    Returns the lifted :class:`LeafPath` (sheet signs from the guide).
    """
    from .foliation import find_focus
    eps = params.eps
    guide = lift_path(sigma, y0, eps, 1 if branch == 1 else -1)
    xc, _ = find_focus(params)
    (_, _), states = transport(params, guide.x_samples, guide.y_samples,
                               (xc, y0), "x", x_shift=xc,
                               force_first_x=True, record=True)
    xs = np.array([s[0] for s in states]) - xc
    ys = np.array([s[1] for s in states])
    return LeafPath(ys, xs, guide.sign_track, guide.level, complex(y0), eps)


@dataclass
class FigureEight:
    """Closed leaf path starting and ending at ``base``."""

    loop: LeafPath
    base: tuple
    base_index: int
    y_plus: complex
    eps: float
    clockwise_detour: bool = True

    def closure(self):
        return abs(self.loop.x_samples[-1] - self.loop.x_samples[0]) + abs(
            self.loop.y_samples[-1] - self.loop.y_samples[0])

    def conj(self):
        lp = self.loop
        loop = LeafPath(lp.y_samples.conj(), lp.x_samples.conj(), lp.sign_track,
                        np.conj(lp.level), np.conj(lp.y0), lp.eps)
        return FigureEight(loop, (np.conj(self.base[0]), np.conj(self.base[1])),
                           self.base_index, np.conj(self.y_plus), self.eps,
                           not self.clockwise_detour)


def _arc(center, p, q, clockwise, n=40):
    a = math.atan2((p - center).imag, (p - center).real)
    b = math.atan2((q - center).imag, (q - center).real)
    if clockwise:
        while b >= a:
            b -= 2 * math.pi
    else:
        while b <= a:
            b += 2 * math.pi
    r = abs(p - center)
    return center + r * np.exp(1j * np.linspace(a, b, n))


def _join_sheets(l_in, l_out, center, radius, y0, eps):
    """
    Join the lift ``l_in`` (ending over ``center``) to ``l_out`` (starting
    over it) by a half-circle around ``center``.  Of the two half-circles,
    the one whose continuous lift carries the arriving sheet onto the
    departing sheet is used.  Returns ``(y, x, clockwise)``.
    """
    i = int(np.nonzero(np.abs(l_in.y_samples - center) >= radius)[0][-1])
    j = int(np.nonzero(np.abs(l_out.y_samples - center) >= radius)[0][0])
    p_in = center + radius * (l_in.y_samples[i] - center) / abs(l_in.y_samples[i] - center)
    p_out = center + radius * (l_out.y_samples[j] - center) / abs(l_out.y_samples[j] - center)
    best = None
    for cw in (True, False):
        arc = np.concatenate([[l_in.y_samples[i]], _arc(center, p_in, p_out, cw),
                              [l_out.y_samples[j]]])
        q = np.asarray(_leaf_q(arc, y0, eps), dtype=complex)
        x = _continuous_sqrt(q, 0, l_in.x_samples[i])
        miss = abs(x[-1] - l_out.x_samples[j])
        if best is None or miss < best[0]:
            best = (miss, arc, x, cw)
    _, arc, x, cw = best
    ys = np.concatenate([l_in.y_samples[:i], arc, l_out.y_samples[j + 1:]])
    xs = np.concatenate([l_in.x_samples[:i], x, l_out.x_samples[j + 1:]])
    return ys, xs, cw


def default_y_plus(eps):
    """Point of ``C+pi`` whose Dulac image is ``-eps/(1+eps)``; keeps the
    three ramification points of its leaf at order-one mutual distance."""
    from .dulac import h_inverse
    eps = check_eps(eps)
    yc = eps / (1 + eps)
    return h_inverse(yc ** eps * (1 + yc), math.pi, eps, "D1")


def figure_eight(y_plus, eps, n_real=N_REAL):
    """
    Figure-eight loop in the leaf through ``(0, y_plus)``, ``y_plus`` on
    ``C+pi`` (lower half plane).

    The first half lifts ``sigma_{y+}`` on the sheet with positive ``x`` at
    the center ordinate, passes ``D(y+)`` (on the negative axis) by the
    half-circle whose lift joins that sheet to the opposite one (see
    :func:`_join_sheets`), and returns along ``sigma_{y-}``
    reversed to ``y- = conj(y+)``.  The second half is the complex conjugate
    of the first.  The loop starts at the sample over the center ordinate.
    For ``y_plus`` in the upper half plane the conjugate loop is returned.
    """
    eps = check_eps(eps)
    y_plus = complex(y_plus)
    if y_plus.imag > 0:
        return figure_eight(y_plus.conjugate(), eps, n_real).conj()
    sp = build_sigma(y_plus, eps, n_real=n_real)
    y_minus = y_plus.conjugate()
    # sheet 1 over sigma_{y+}, then sheet 2 over sigma_{y-} traversed backwards
    g1 = lift_path(sp, y_plus, eps, 1)
    g2 = lift_path(SigmaPath(sp.y.conj(), sp.pin, eps), y_plus, eps, -1)
    g2r = LeafPath(g2.y_samples[::-1], g2.x_samples[::-1], g2.sign_track[::-1],
                   g2.level, y_minus, eps)
    w = sp.y[-1].real + 0j
    # keep the half-circle on the negative axis side of the origin
    radius = min(DETOUR_FRAC * abs(w - y_plus), 0.5 * abs(w))
    fy, fx, cw = _join_sheets(g1, g2r, w, radius, y_plus, eps)
    ys = np.concatenate([fy, fy.conj()[1:]])
    xs = np.concatenate([fx, fx.conj()[1:]])
    k = sp.pin
    ys = np.concatenate([ys[k:], ys[1:k + 1]])
    xs = np.concatenate([xs[k:], xs[1:k + 1]])
    r = np.sqrt(np.asarray(_leaf_q(ys, y_plus, eps), dtype=complex))
    sign = np.where(np.abs(xs - r) <= np.abs(xs + r), 1, -1)
    loop = LeafPath(ys, xs, sign, complex(h_section(y_plus, eps)), y_plus, eps)
    return FigureEight(loop, (xs[0], ys[0]), k, y_plus, eps, cw)


def holonomy_transport(loop, params, x_offset):
    """
    Holonomy of the perturbed foliation along ``loop`` on the transversal
    ``y = y_base`` through the base point.

    The leaf through ``(x_base + x_offset, y_base)`` is transported along
    the loop (x-mode near ramification points, targets shifted by the
    offset) and the returned value is its new offset ``x - x_base``.  For
    ``delta = 0`` the map is the identity.
    """
    xb, yb = loop.base
    lp = loop.loop
    x, _ = transport(params, lp.x_samples, lp.y_samples, (xb + x_offset, yb),
                     "y", x_shift=x_offset)
    return complex(x - xb)
