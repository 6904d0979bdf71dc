"""
Complex leaves, the figure-eight loop and its holonomy.

Lifts a path sigma_y from y to D(y) onto both sheets of the leaf through a
real point, builds the figure-eight loop used for the holonomy and
transports small offsets around it, at delta = 0 (identity) and for a
small perturbation (first-order change).
"""

import numpy as np

from slowfast_darboux.foliation import FoliationParams
from slowfast_darboux.leaves import (build_sigma, default_y_plus, figure_eight,
                                     holonomy_transport, lift_path)

eps = 0.5
y = 0.8
sigma = build_sigma(y, eps)
for sign in (1, -1):
    lift = lift_path(sigma, y, eps, sign)
    print(f"sheet {sign:+d}: {len(sigma)} samples, covering residual "
          f"{lift.covering_residual():.1e}, H drift {lift.h_drift():.1e}")

loop = figure_eight(default_y_plus(eps), eps)
print(f"figure-eight through y+ = {loop.y_plus:.4f}, closure {loop.closure():.1e}")

# delta = 0: the holonomy is the identity
p0 = FoliationParams(eps)
for x in (1e-3, -1e-2):
    print(f"delta = 0, x = {x:+.0e}: Hol(x) - x = {abs(holonomy_transport(loop, p0, x) - x):.1e}")

# small perturbation along P = y - y^2/2: the defect is linear in delta
for delta in (1e-4, 2e-4):
    p = FoliationParams(eps, delta, Pcoef=[[0.0, 1.0, -0.5]], Qcoef=[[0.0]])
    d = holonomy_transport(loop, p, 1e-3) - 1e-3
    print(f"delta = {delta:.0e}: Hol(x) - x = {d:.3e}  (per delta {d / delta:.4f})")
