"""
genlambert: real branches of the r-Lambert function, generalized Lambert
equations, their Taylor series and the integer sequences behind them.
"""
from .classic import BRANCH_POINT, lambert_w, omega_constant
from .combinatorics import (
    CoeffTriangle,
    MPolynomial,
    a_coefficient,
    a_triangle,
    c_coefficient,
    c_triangle_by_recurrence,
    falling_factorial,
    fubini,
    m_eval,
    m_polynomial,
    rising_factorial,
    stirling2,
    stirling2_row,
)
from .errors import (
    BranchError,
    ConvergenceError,
    DomainError,
    GenLambertError,
    SingularityError,
    UnsupportedConfiguration,
)
from .genw import (
    GenWParams,
    RootSet,
    canonicalize,
    count_tt_solutions,
    solve,
    solve_shifted,
    solve_ts,
    solve_tt,
)
from .rlambert import (
    Branch,
    BranchLayout,
    EvalResult,
    classify,
    f_r,
    omega1_constant,
    w_r,
    w_r_all,
    w_r_antiderivative,
    w_r_asymptotic,
    w_r_derivative,
)
from .series import (
    SeriesExpansion,
    estimate_radius,
    eval_series,
    radius_wts,
    series_wr,
    series_wts,
    series_wtt,
)

__version__ = "0.1.0"
