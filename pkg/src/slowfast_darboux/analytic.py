"""
Principal-branch kernels for the Darboux first integral.

All functions accept a Python scalar or a numpy array and return the same
kind.  Branch cuts are fixed once and for all:

* ``y**eps`` is cut along ``(-inf, 0]``,
* ``(1 - y)**(1/eps)`` is cut along ``[1, inf)``.

Points on a cut within ``ENDPOINT_TOL`` of its endpoint evaluate to the
analytic limit (zero) instead of raising; points off the cut are always
evaluated, since ``|z|**eps`` is not small for small ``eps``.
"""

import numpy as np

from .errors import BranchCut, InvalidEps, NonFinite

ENDPOINT_TOL = 1e-14


def check_eps(eps):
    eps = float(eps)
    if not (eps > 0 and np.isfinite(eps)):
        raise InvalidEps(f"eps must be a positive finite number, got {eps!r}")
    return eps


def y_center(eps):
    """Ordinate ``eps/(1+eps)`` of the center on the section ``x = 0``."""
    eps = check_eps(eps)
    return eps / (1.0 + eps)


def _out(value, scalar):
    if not np.all(np.isfinite(value)):
        raise NonFinite("non-finite value produced")
    return complex(value) if scalar else value


def principal_power(z, a):
    """
    ``exp(a * Log z)`` with the principal logarithm, ``arg z`` in (-pi, pi].

    Raises BranchCut on the ray (-inf, 0]; ``z == 0`` is allowed for a > 0
    and returns 0.
    """
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=complex)
    a = float(a)
    on_ray = (z.imag == 0) & (z.real <= 0)
    small = on_ray & (np.abs(z) < ENDPOINT_TOL)
    cut = on_ray & ~small
    if np.any(cut):
        raise BranchCut("argument on the cut (-inf, 0]")
    if np.any(small) and a < 0:
        raise NonFinite("negative power of zero")
    with np.errstate(all="ignore"):
        w = np.where(small, 1.0 + 0j, z)
        out = np.exp(a * np.log(w))
        if a > 0:
            out = np.where(small, 0j, out)
        elif a == 0:
            out = np.ones_like(out)
    return _out(out, scalar)


def h_section(y, eps):
    """``y**eps * (1 - y)``: the first integral restricted to ``x = 0``."""
    eps = check_eps(eps)
    y = np.asarray(y, dtype=complex) if np.ndim(y) else complex(y)
    return principal_power(y, eps) * (1 - y)


def f_rs(y, eps):
    """
    ``y * (1 - y)**(1/eps)``.

    On (0, 1) this is ``h_section(y)**(1/eps)``; its critical point is the
    center ordinate ``eps/(1+eps)``.
    """
    eps = check_eps(eps)
    y = np.asarray(y, dtype=complex) if np.ndim(y) else complex(y)
    u = 1 - y
    try:
        return y * principal_power(u, 1.0 / eps)
    except BranchCut:
        raise BranchCut("f_rs argument on the cut [1, inf)") from None


def H_full(x, y, eps):
    """
    ``(y - x**2)**eps * (1 - y)``.  The parabola itself is treated as part
    of the cut and raises BranchCut.
    """
    eps = check_eps(eps)
    scalar = np.ndim(x) == 0 and np.ndim(y) == 0
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    p0 = y - x * x
    if np.any((p0.imag == 0) & (p0.real <= 0)):
        raise BranchCut("y - x^2 on the cut (-inf, 0]")
    with np.errstate(all="ignore"):
        out = np.exp(eps * np.log(p0)) * (1 - y)
    return _out(out, scalar)


def g_rescaled(y, eps):
    """``y * (1 - eps*y)**(1/eps)``; tends to ``y * exp(-y)`` as eps -> 0."""
    eps = check_eps(eps)
    y = np.asarray(y, dtype=complex) if np.ndim(y) else complex(y)
    try:
        return y * principal_power(1 - eps * y, 1.0 / eps)
    except BranchCut:
        raise BranchCut("1 - eps*y on the cut (-inf, 0]") from None


def g_limit(y):
    """``y * exp(-y)``."""
    scalar = np.ndim(y) == 0
    y = np.asarray(y, dtype=complex)
    return _out(y * np.exp(-y), scalar)


def log_h(y, eps):
    """Principal ``eps*Log(y) + Log(1-y)``; its imaginary part is continuous
    on the plane minus both cuts, unlike ``Log(h_section)``."""
    eps = check_eps(eps)
    y = np.asarray(y, dtype=complex) if np.ndim(y) else complex(y)
    if np.any((np.imag(y) == 0) & ((np.real(y) <= 0) | (np.real(y) >= 1))):
        raise BranchCut("log_h argument on (-inf, 0] or [1, inf)")
    return eps * np.log(y) + np.log(1 - y)


def dlog_h(y, eps):
    """Derivative of ``log_h``: ``(eps - (1+eps) y) / (y (1-y))``."""
    return (eps - (1.0 + eps) * y) / (y * (1 - y))
