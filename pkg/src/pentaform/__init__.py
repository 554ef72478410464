"""Almost-universality decision toolkit for weighted sums of three
generalized pentagonal numbers a*P5(x) + 2^r*b*P5(y) + 2^s*c*P5(z).

The classifier decides whether such a sum represents every sufficiently
large positive integer; the oracle provides brute-force ground truth; the
spinor module is an independent cross-check of the congruence criteria.
"""

from .classifier import (
    CrossCheckMismatch,
    Reason,
    TheoremCase,
    Verdict,
    VerdictKind,
    classify,
    classify_case,
    condition_i,
    condition_ii,
    condition_iii,
    condition_iv,
    tau,
)
from .lattice import (
    FormParams,
    ParamError,
    ParamViolation,
    gram_matrix,
    jordan_odd,
    make_params,
)
from .local import LocalReport, no_local_obstruction
from .oracle import (
    EmpiricalVerdict,
    ExceptionReport,
    ResourceCapExceeded,
    Witness,
    empirical_verdict,
    exceptions,
    is_representable,
    represented_bitmap,
    solve_admissible,
    unrepresented_residue_class,
)
from .spinor import (
    Containment,
    SpinorOutcome,
    UnsupportedRegime,
    spinor_exception_check,
    dyadic_theta_contained,
    triadic_theta_contained,
)

__version__ = "0.1.0"

__all__ = [
    "CrossCheckMismatch",
    "Containment",
    "EmpiricalVerdict",
    "ExceptionReport",
    "FormParams",
    "LocalReport",
    "ParamError",
    "ParamViolation",
    "Reason",
    "ResourceCapExceeded",
    "SpinorOutcome",
    "TheoremCase",
    "UnsupportedRegime",
    "Verdict",
    "VerdictKind",
    "Witness",
    "classify",
    "classify_case",
    "condition_i",
    "condition_ii",
    "condition_iii",
    "condition_iv",
    "empirical_verdict",
    "exceptions",
    "gram_matrix",
    "is_representable",
    "jordan_odd",
    "make_params",
    "no_local_obstruction",
    "represented_bitmap",
    "solve_admissible",
    "spinor_exception_check",
    "tau",
    "dyadic_theta_contained",
    "triadic_theta_contained",
    "unrepresented_residue_class",
    "__version__",
]
