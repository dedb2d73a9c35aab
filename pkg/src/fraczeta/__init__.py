"""Second-order zeta-corrected Caputo derivative schemes.

Quick start::

    >>> import numpy as np
    >>> from fraczeta import SampledFunction, caputo_l1z, caputo_series_oracle
    >>> y = SampledFunction.sample(np.cos, 1.0, 20)
    >>> err = abs(caputo_l1z(y, 0.25) - caputo_series_oracle("cos", 0.25, 1.0))
    >>> err < 1e-4
    True
"""

from .caputo import (
    SampledFunction,
    SchemeCoefficients,
    SchemeKind,
    caputo,
    caputo_first_step,
    caputo_l1,
    caputo_l1z,
    coefficients,
    delta_coefficients,
    sigma_coefficients,
)
from .convergence import ConvergenceReport, estimate_order, max_error, reproduce_table, run_study
from .errors import NumericalError, PivotBreakdownError, SeriesConvergenceError
from .integral import claim1_check, frac_integral_2ma, left_riemann_sum, trapezoid_sum
from .oracles import caputo_series_oracle, frac_integral_oracle
from .relaxation import RelaxationProblem, RelaxationSolution, solve_relaxation
from .special import gamma, zeta, zeta_ratio
from .subdiffusion import (
    FieldHistory,
    SubdiffusionProblem,
    TridiagonalSystem,
    solve_subdiffusion,
    thomas_solve,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceReport",
    "FieldHistory",
    "NumericalError",
    "PivotBreakdownError",
    "RelaxationProblem",
    "RelaxationSolution",
    "SampledFunction",
    "SchemeCoefficients",
    "SchemeKind",
    "SeriesConvergenceError",
    "SubdiffusionProblem",
    "TridiagonalSystem",
    "caputo",
    "caputo_first_step",
    "caputo_l1",
    "caputo_l1z",
    "caputo_series_oracle",
    "claim1_check",
    "coefficients",
    "delta_coefficients",
    "estimate_order",
    "frac_integral_2ma",
    "frac_integral_oracle",
    "gamma",
    "left_riemann_sum",
    "max_error",
    "reproduce_table",
    "run_study",
    "sigma_coefficients",
    "solve_relaxation",
    "solve_subdiffusion",
    "thomas_solve",
    "trapezoid_sum",
    "zeta",
    "zeta_ratio",
]
