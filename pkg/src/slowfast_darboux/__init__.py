"""
Numerical toolkit for the slow-fast Darboux integrable foliation

    eps (y - x**2) d(1 - y) + (1 - y) d(y - x**2) + delta (P dx + Q dy) = 0

and its limit cycles: first integrals, isoclines, complex Dulac maps,
leaf coverings, holonomy, argument-principle bounds and the blow-up chart.
"""

from .analytic import (H_full, dlog_h, f_rs, g_limit, g_rescaled, h_section,
                       log_h, principal_power, y_center)
from .blowup import (BlowupChart, min_rescaled_distance, rescale,
                     rescaled_boundary_curves, rescaled_integral_residual,
                     unrescale)
from .cyclicity import (ContourD, ContourPiece, ExperimentTable, WindingReport,
                        build_contour, circle_contour, count_curve_intersections,
                        cyclicity_experiment, dulac_difference, newton_zeros,
                        trace_im_zero_curve, variation_of_argument)
from .dulac import (DulacQuery, dulac_integrable, dulac_perturbed, dulac_real,
                    h_inverse)
from .errors import *  # noqa: F401,F403
from .foliation import (CycleRecord, FoliationParams, displacement,
                        find_focus, find_real_cycles, half_return,
                        integrate_orbit, melnikov, melnikov_prediction,
                        melnikov_zeros)
from .isoclines import (IsoclineCurve, classify_point, isocline_radius,
                        trace_boundary, trace_component, trace_singular_curve)
from .leaves import (FigureEight, LeafPath, SigmaPath, build_sigma,
                     figure_eight, holonomy_transport, integrated_lift,
                     leaf_x, lift_path)

__version__ = "0.1.0"
