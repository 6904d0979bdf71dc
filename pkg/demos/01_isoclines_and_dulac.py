"""
Isoclines of arg h and the complex Dulac map of the integrable system.

Draws the boundary curves C+-0, C+-pi and a fan of C_theta for one eps,
then checks that the Dulac map sends C+0 onto C-0 and that it is an
involution on a handful of complex points.  Writes demos/out/isoclines.svg.
"""

import os

import numpy as np

from slowfast_darboux.dulac import dulac_integrable, dulac_real, h_inverse
from slowfast_darboux.export import SvgCanvas
from slowfast_darboux.isoclines import D0, D1, trace_boundary, trace_component

eps = 0.3
yc = eps / (1 + eps)
out = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(out, exist_ok=True)

# real Dulac map: an involution with fixed point y_c
for y in (0.05, 0.2, 0.6, 0.95):
    w = dulac_real(y, eps)
    print(f"D({y:.2f}) = {w:.12f}   D(D(y)) - y = {dulac_real(w, eps) - y:+.1e}")

# boundary curves and a fan of isoclines
bnd = trace_boundary(eps)
canvas = SvgCanvas((-1.5, 2.0, -1.75, 1.75), title=f"isoclines, eps={eps}")
for key, curve in bnd.items():
    canvas.curve(curve.samples, width=2.0, label=f"C{key}")
for th in np.linspace(-2.5, 2.5, 11):
    if th == 0:
        continue
    for comp in (D0, D1):
        c = trace_component(float(th), eps, comp)
        canvas.curve(c.samples, color="#bbbbbb", width=0.7)
canvas.marker(yc, 0.0, label="y_c")
canvas.marker(1.0, 0.0, color="#d62728", label="y = 1")

# complex Dulac map on C+0: image lies on C-0 (the conjugate curve)
up = bnd["+0"].samples
for y in up[:: max(1, len(up) // 6)][1:-1]:
    w = dulac_integrable(y, eps)
    print(f"y = {y:.4f}  D(y) = {w:.4f}  |D(y) - conj(y)| = {abs(w - np.conj(y)):.1e}")
    canvas.marker(w.real, w.imag, color="#2ca02c", r=2.0)

# involution on generic points of D1
hc = yc ** eps * (1 - yc)
for m, th in ((0.5, 1.0), (1.5, -2.0), (0.2, 2.9)):
    y = h_inverse(m * hc, th, eps, D1)
    back = dulac_integrable(dulac_integrable(y, eps), eps)
    print(f"|D(D(y)) - y| at y = {y:.4f}: {abs(back - y):.1e}")

print("wrote", canvas.save(os.path.join(out, "isoclines.svg")))
