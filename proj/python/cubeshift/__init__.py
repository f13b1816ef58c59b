"""Shifted-cube windows: solvers, density measures, circle-method objects,
and the six-cube to ternary-quadratic reduction.

Numeric inputs are exact spec strings: rationals "p/q", surds
"surd:p,q,d,r" for (p + q*sqrt(d))/r, decimals "dec:0.333...333!irr"
(the suffix declares irrationality, which finite data cannot prove).
"""

try:
    from ._cubeshift import *  # wheel layout: extension inside the package
    from ._cubeshift import __doc__ as _doc
except ImportError:  # build-tree layout: extension alongside the package
    from _cubeshift import *  # noqa: F401,F403
    from _cubeshift import __doc__ as _doc

__all__ = [
    "count", "solve", "histogram_count", "asymptotic_main_term", "moment_count",
    "represented_set", "unrepresented_measure", "density_profile",
    "closed_cube_volume", "qmc_cube_volume", "volume_bound",
    "kernel", "kernel_fourier", "weyl_sum", "complete_exp_sum",
    "classify_arc", "dirichlet_approx", "singular_integral",
    "representation_integral", "dirichlet_volume",
    "reduce", "dense_search",
    "SpecError", "PrecisionError", "BudgetError",
]
