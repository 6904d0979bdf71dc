"""
Argument-principle bound on the number of cycles.

Builds the contour D around the real interval for one eps, measures the
variation of argument of D1 - D2 piece by piece, and runs the small-eps
sweep with the reference quadratic direction.  The sweep takes tens of
seconds on one core.
"""

import math

from slowfast_darboux.cyclicity import (REFERENCE_DIRECTION, build_contour,
                                        cyclicity_experiment, dulac_difference,
                                        variation_of_argument)
from slowfast_darboux.foliation import FoliationParams

p = FoliationParams(0.5, 1e-4, *REFERENCE_DIRECTION)
contour = build_contour(p)
print("contour pieces:", [pc.kind for pc in contour.pieces])
rep = variation_of_argument(dulac_difference(p), contour)
for kind, v in sorted(rep.piece_variation.items()):
    print(f"  {kind:>10s}: {v / math.pi:+.4f} pi")
print(f"total {rep.total_variation / (2 * math.pi):.6f} turns -> bound {rep.bound}")
print("Petrov sign-change counts:", rep.petrov_zero_counts)

table = cyclicity_experiment([0.05, 0.1, 0.2, 0.4, 0.8], REFERENCE_DIRECTION, [1e-4])
print(" eps    bound  cycles  Melnikov zeros")
for row in table.rows:
    print(f" {row.eps:<6} {row.bound!s:>5} {row.real_cycles:>7} {row.melnikov_zeros:>15}")
