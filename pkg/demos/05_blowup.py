"""
Blow-up chart at the turning point.

In the chart (sqrt(eps) x, eps y) the first integral converges to
exp(-y) (y - x^2) at rate O(eps), and the curves C+-pi stay at distance
of order one from the origin.
"""

from slowfast_darboux.blowup import (BlowupChart, min_rescaled_distance,
                                     rescaled_integral_residual)

prev = None
for eps in (0.1, 0.05, 0.025, 0.0125):
    r = rescaled_integral_residual(eps)
    ratio = "" if prev is None else f"  ratio {prev / r:.3f}"
    print(f"eps = {eps:<7} sup residual {r:.3e}{ratio}")
    prev = r

for eps in (0.2, 0.1, 0.05, 0.025):
    chart = BlowupChart(eps)
    print(f"eps = {eps:<6} center at chart y = {chart.center:.4f}, "
          f"min |y| on rescaled C+-pi = {min_rescaled_distance(eps):.3f}")
