"""
Real limit cycles against zeros of the Melnikov (pseudo-Abelian) integral.

For a quadratic perturbation direction, compares the displacement between
the two half-returns to the first-order prediction I(h(y)) / h'(D(y)) and
locates cycles and Melnikov zeros.  Writes demos/out/displacement.svg.
"""

import os

import numpy as np

from slowfast_darboux.export import SvgCanvas
from slowfast_darboux.foliation import (FoliationParams, displacement,
                                        find_real_cycles, level_to_y,
                                        melnikov_prediction, melnikov_zeros,
                                        y_to_level)

eps, delta = 0.5, 1e-4
p = FoliationParams(eps, delta, Pcoef=[[0.0, 1.0, -0.5]], Qcoef=[[0.0]])
yc = p.y_c

# grid geometric in 1 - y: cycles can sit close to y = 1
ys = np.sort(1 - np.geomspace(1 - yc, 1 - level_to_y(1e-2, eps), 30)[1:-1])
disp = np.array([displacement(y, p) / delta for y in ys])
pred = np.array([melnikov_prediction(y, p) for y in ys])
for y, d, m in list(zip(ys, disp, pred))[::5]:
    print(f"y = {y:.5f}  displacement/delta = {d:+.5e}  prediction = {m:+.5e}")

cycles = find_real_cycles(p, ys)
levels = np.geomspace(1e-2, 0.999 * y_to_level(yc, eps), 30)
zeros = [level_to_y(c, eps) for c in melnikov_zeros(p, levels)]
print("cycles:", [round(c.y_fixed, 6) for c in cycles])
print("Melnikov zeros:", [round(z, 6) for z in zeros])

out = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(out, exist_ok=True)
lo, hi = min(disp.min(), pred.min()), max(disp.max(), pred.max())
pad = 0.05 * (hi - lo)
canvas = SvgCanvas((ys[0], ys[-1], lo - pad, hi + pad),
                   title="displacement / delta and Melnikov prediction")
canvas.polyline(ys, disp, label="displacement / delta")
canvas.polyline(ys, pred, label="I / h'")
canvas.polyline([ys[0], ys[-1]], [0, 0], color="#999999", width=0.5)
for c in cycles:
    canvas.marker(c.y_fixed, 0.0, color="#d62728", label="cycle")
print("wrote", canvas.save(os.path.join(out, "displacement.svg")))
