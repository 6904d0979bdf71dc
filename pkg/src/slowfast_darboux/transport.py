"""
Transport along complex leaves of the perturbed foliation.

A leaf of ``A dx + B dy = 0`` is followed over a guide path given as
samples ``(x0_k, y0_k)`` of an unperturbed lift.  Each guide step is
integrated in one of two charts:

* y-mode, ``dx/dy = -B/A``, moving ``y`` straight to the next guide ``y``;
* x-mode, ``dy/dx = -A/B``, moving ``x`` straight to the next guide ``x``,

chosen by ``|A| < 0.1 |B|`` at the current point (x-mode near ramification
points, where the leaf is tangent to the fibres of ``y``).

The integrator is an embedded Dormand-Prince 5(4) pair on complex scalars.
"""

import cmath

from .errors import ContinuationBreakdown

LOCAL_TOL = 1e-10
MODE_RATIO = 0.1
H_MIN = 1e-12
ATOL_FRAC = 1e-12  # error control is relative down to this magnitude

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525,
      -1 / 40)


class Field:
    """Fast scalar evaluation of ``(A, B)`` for a :class:`FoliationParams`."""

    def __init__(self, params):
        self.eps = params.eps
        self.pt, self.qt = params.terms()

    def AB(self, x, y):
        e = self.eps
        A = -2 * e * x * (1 - y)
        B = e * (1 - y) - (y - x * x)
        for i, j, c in self.pt:
            A += c * x ** i * y ** j
        for i, j, c in self.qt:
            B += c * x ** i * y ** j
        return A, B


def _dopri(f, z, s0, s1, h, tol):
    """Integrate ``dz/ds = f(s, z)`` from ``s0`` to ``s1``; returns (z, h)."""
    s = s0
    k1 = f(s, z)
    while s < s1:
        if s + h > s1:
            h = s1 - s
        if h < H_MIN * max(1.0, abs(s1 - s0)):
            raise ContinuationBreakdown("step size underflow")
        k = [k1]
        for i in range(1, 7):
            zi = z
            for a, kj in zip(_A[i], k):
                if a:
                    zi = zi + h * a * kj
            k.append(f(s + _C[i] * h, zi))
        z_new = z
        for b, kj in zip(_B, k):
            if b:
                z_new = z_new + h * b * kj
        err = 0j
        for e, kj in zip(_E, k):
            err += e * kj
        err = abs(h * err) / (tol * (abs(z_new) + ATOL_FRAC))
        if err != err or cmath.isinf(z_new):
            h *= 0.25
            continue
        if err <= 1.0:
            s += h
            z = z_new
            k1 = k[6]
            h *= min(5.0, 0.9 * err ** -0.2) if err > 0 else 5.0
        else:
            h *= max(0.1, 0.9 * err ** -0.25)
    return z, h


def _y_step(field, x, ya, yb, h, tol):
    dy = yb - ya

    def f(s, x):
        A, B = field.AB(x, ya + s * dy)
        if A == 0:
            raise ZeroDivisionError
        return -B / A * dy
    x, h = _dopri(f, x, 0.0, 1.0, h, tol)
    return x, yb, h


def _x_step(field, y, xa, xb, h, tol):
    dx = xb - xa

    def f(s, y):
        A, B = field.AB(xa + s * dx, y)
        if B == 0:
            raise ZeroDivisionError
        return -A / B * dx
    y, h = _dopri(f, y, 0.0, 1.0, h, tol)
    return xb, y, h


def transport(params, guide_x, guide_y, start, end_mode, x_shift=0.0,
              tol=LOCAL_TOL, force_first_x=False, record=False):
    """
    Follow the perturbed leaf through ``start`` along a guide lift.

    Parameters
    ----------
    params : FoliationParams
    guide_x, guide_y : sequences of complex
        Unperturbed lift the leaf is steered along.  ``guide_x`` values are
        shifted by ``x_shift`` when used as x-mode targets.
    start : (complex, complex)
        Initial point ``(x, y)``.
    end_mode : {"x", "y"}
        Chart of the final step: "x" ends on ``x = guide_x[-1] + x_shift``,
        "y" ends on ``y = guide_y[-1]``.
    force_first_x : bool
        Take the first step in x-mode (start at a ramification point).
    record : bool
        Also return the list of ``(x, y)`` states at guide nodes.

    Returns
    -------
    (x, y) or ((x, y), states)
    """
    field = Field(params)
    x, y = complex(start[0]), complex(start[1])
    n = len(guide_y)
    states = [(x, y)]
    hy = hx = 0.1
    for k in range(1, n):
        last = k == n - 1
        if last:
            xmode = end_mode == "x"
        elif k == 1 and force_first_x:
            xmode = True
        else:
            # look ahead to the guide node so the chart switches before the
            # leaf reaches a ramification point
            A, B = field.AB(x, y)
            Ag, Bg = field.AB(complex(guide_x[k]) + x_shift, complex(guide_y[k]))
            xmode = (abs(A) < MODE_RATIO * abs(B)
                     or abs(Ag) < MODE_RATIO * abs(Bg))
        try:
            if xmode:
                x, y, hx = _x_step(field, y, x, complex(guide_x[k]) + x_shift,
                                   hx, tol)
            else:
                x, y, hy = _y_step(field, x, y, complex(guide_y[k]), hy, tol)
        except (ContinuationBreakdown, ZeroDivisionError, OverflowError) as exc:
            raise ContinuationBreakdown(
                f"leaf transport failed at guide step {k}: {exc}", step=k) from None
        if record:
            states.append((x, y))
    return ((x, y), states) if record else (x, y)
