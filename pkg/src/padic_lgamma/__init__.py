"""p-adic log-gamma functions by Volkenborn integration.

The package is organised in layers:

* :mod:`.core`         – p-adic numbers in unramified extensions of Q_p
* :mod:`.logarithm`    – the Iwasawa logarithm
* :mod:`.volkenborn`   – Volkenborn integration by Riemann sums
* :mod:`.loggamma`     – log-gamma functions and their companions
* :mod:`.distribution` – shift sequences and the identity checkers
* :mod:`.cli`          – command-line front end
"""

from .core import (
    AtLeast,
    DomainError,
    PadicContext,
    PadicError,
    PadicNumber,
    PrecisionError,
    ResidueElement,
    chi,
    ctx_new,
    dwork_shift,
    ell,
    from_poly,
    from_rational,
    in_Wp,
    rational_form,
    render,
    render_digits,
    residue,
    residue_in_Fp,
    teichmuller,
    valuation,
)
from .distribution import (
    IDENTITIES,
    CheckReport,
    ShiftSequence,
    build_sequence,
    check_identity,
    dist_lhs,
    dist_rhs,
    factor_n,
)
from .logarithm import log_p
from .loggamma import (
    LambdaTable,
    lambda_table,
    ld,
    lm,
    lm_series,
    lp,
    lp_prime,
    morita_gamma_nat,
    phi_p,
    rp_closed,
    rp_integral,
)
from .volkenborn import ConvergencePolicy, IntegralResult, distribution_sum, integrate, integrate_b

__version__ = "0.1.0"

__all__ = [
    "AtLeast",
    "CheckReport",
    "ConvergencePolicy",
    "DomainError",
    "IDENTITIES",
    "IntegralResult",
    "LambdaTable",
    "PadicContext",
    "PadicError",
    "PadicNumber",
    "PrecisionError",
    "ResidueElement",
    "ShiftSequence",
    "build_sequence",
    "check_identity",
    "chi",
    "ctx_new",
    "dist_lhs",
    "dist_rhs",
    "distribution_sum",
    "dwork_shift",
    "ell",
    "factor_n",
    "from_poly",
    "from_rational",
    "in_Wp",
    "integrate",
    "integrate_b",
    "lambda_table",
    "ld",
    "lm",
    "lm_series",
    "log_p",
    "lp",
    "lp_prime",
    "morita_gamma_nat",
    "phi_p",
    "rational_form",
    "render",
    "render_digits",
    "residue",
    "residue_in_Fp",
    "rp_closed",
    "rp_integral",
    "teichmuller",
    "valuation",
]
