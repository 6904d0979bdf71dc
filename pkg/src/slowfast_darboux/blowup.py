"""
Weighted blow-up chart at the turning point.

In the chart ``(x, y) -> (sqrt(eps) x, eps y)`` the first integral
``(y - x**2)**eps (1 - y)`` raised to the power ``1/eps`` becomes, up to
the constant factor ``eps``, ``(1 - eps y)**(1/eps) (y - x**2)``, which is
``O(eps)``-close to ``exp(-y) (y - x**2)`` on compact sets.
"""

from dataclasses import dataclass
import math

import numpy as np

from .analytic import check_eps
from .errors import BranchCut
from .isoclines import R_MAX, trace_boundary


def rescale(p, eps):
    """Chart point ``(x, y)`` to original coordinates ``(sqrt(eps) x, eps y)``."""
    eps = check_eps(eps)
    x, y = p
    return math.sqrt(eps) * x, eps * y


def unrescale(p, eps):
    """Original point ``(X, Y)`` to chart coordinates ``(X/sqrt(eps), Y/eps)``."""
    eps = check_eps(eps)
    X, Y = p
    return X / math.sqrt(eps), Y / eps


@dataclass(frozen=True)
class BlowupChart:
    """The chart at one value of ``eps``; maps accept scalars or arrays."""

    eps: float

    def __post_init__(self):
        object.__setattr__(self, "eps", check_eps(self.eps))

    def forward(self, x, y):
        """Chart to original coordinates."""
        return np.sqrt(self.eps) * np.asarray(x), self.eps * np.asarray(y)

    def backward(self, X, Y):
        """Original to chart coordinates."""
        return np.asarray(X) / np.sqrt(self.eps), np.asarray(Y) / self.eps

    @property
    def center(self):
        """Chart ordinate of the center, ``1/(1+eps)``."""
        return 1.0 / (1.0 + self.eps)

    def round_trip_error(self, x, y):
        X, Y = self.forward(x, y)
        xb, yb = self.backward(X, Y)
        return float(max(np.max(np.abs(xb - x)), np.max(np.abs(yb - y))))


def rescaled_form(x, y, eps):
    """
    ``(1 - eps y)**(1/eps) (y - x**2)`` on a real grid.

    The power is real; a non-positive base raises BranchCut unless
    ``1/eps`` is an integer.
    """
    eps = check_eps(eps)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    base = 1 - eps * y
    k = 1.0 / eps
    integer = abs(k - round(k)) < 1e-12
    if np.any(base <= 0) and not integer:
        raise BranchCut("1 - eps*y <= 0 inside the region")
    power = base ** round(k) if integer else base ** k
    return power * (y - x * x)


def rescaled_integral_residual(eps, region=(-1.0, 1.0, -2.0, 2.0), n=201):
    """
    Sup over an ``n x n`` grid of
    ``|(1 - eps y)**(1/eps) (y - x**2) - exp(-y) (y - x**2)|``.

    Parameters
    ----------
    eps : float
    region : (x_min, x_max, y_min, y_max)
        Compact box in chart coordinates.
    n : int
        Grid points per axis (endpoints included).
    """
    x0, x1, y0, y1 = map(float, region)
    if not (x0 <= x1 and y0 <= y1):
        raise ValueError("region must be (x_min, x_max, y_min, y_max)")
    x, y = np.meshgrid(np.linspace(x0, x1, n), np.linspace(y0, y1, n))
    r = np.abs(rescaled_form(x, y, eps) - np.exp(-y) * (y - x * x))
    return float(np.max(r))


def rescaled_boundary_curves(eps, r_max=R_MAX):
    """
    ``C-pi`` and ``C+pi`` in chart coordinates (samples divided by eps),
    keyed ``'-pi'`` and ``'+pi'``.
    """
    b = trace_boundary(eps, r_max=r_max)
    return {k: b[k].samples / eps for k in ("-pi", "+pi")}


def min_rescaled_distance(eps, r_max=R_MAX):
    """``min |y|`` over the rescaled ``C+-pi``."""
    curves = rescaled_boundary_curves(eps, r_max)
    return float(min(np.min(np.abs(c)) for c in curves.values()))
