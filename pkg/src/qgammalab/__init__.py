"""q-deformed Gamma function family and a numerical inequality lab."""

from .core import (
    QParam,
    SeriesPolicy,
    SeriesResult,
    q_bracket,
    q_exp_E,
    q_exp_E_series,
    q_factorial,
    q_pochhammer,
    q_pochhammer_inf,
)
from .errors import (
    ConvergenceError,
    DivergenceWarning,
    EvaluationError,
    QDomainError,
    QOverflowError,
)
from .quadrature import (
    QIntegralResult,
    holder_check,
    jackson_integral_0a,
    jackson_integral_0inf,
    jackson_integral_ab,
)
from .report import BoundReport, GridSpec
from .special import (
    QGammaBackend,
    QPsiBackend,
    classical_gamma,
    classical_psi,
    log_qgamma,
    log_qgamma_ratio,
    pi_q,
    pi_q_formula_variant,
    psi_exp_moment,
    qgamma,
    qpsi,
    qpsi_difference,
)

__version__ = "0.1.0"
