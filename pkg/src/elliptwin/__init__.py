"""Twin-curve search over prime fields.

A curve E with invariant j over F_p is a "twin" when both its order and the
order of its quadratic twist are prime; the two orders always sum to
2p + 2.  This package provides the field and curve arithmetic to test that,
three tiers of point counting (exhaustive character sums, joint
curve-and-twist baby-step/giant-step, and a division-polynomial trace
computation with early abort on small order factors), density experiments
with bootstrap confidence intervals, and a bit-exact audit of the published
twist cofactors of seven standardized curves.
"""

__version__ = "0.1.0"

from .counting import (
    Abort,
    AbortPolicy,
    CountResult,
    count,
    count_bsgs,
    count_naive,
    count_schoof,
)
from .ecurve import INFINITY, Curve, Point, curve_from_j, twist_of
from .fp import Fe, PrimeModulus, named_modulus, solinas_value
from .nt import Factorization, factor, is_prime
from .audit import AuditRow, RegistryCurve, audit_all, audit_curve, registry
from .twin import (
    EstimateReport,
    GapRun,
    GapSample,
    ScanReport,
    Twin,
    TwinRecord,
    classify_j,
    estimate,
    prob_all,
    prob_any,
    prob_none,
    sample_gaps,
    scan_range,
)

__all__ = [
    "Abort",
    "AbortPolicy",
    "AuditRow",
    "CountResult",
    "Curve",
    "EstimateReport",
    "Factorization",
    "Fe",
    "GapRun",
    "GapSample",
    "INFINITY",
    "Point",
    "PrimeModulus",
    "RegistryCurve",
    "ScanReport",
    "Twin",
    "TwinRecord",
    "audit_all",
    "audit_curve",
    "classify_j",
    "count",
    "count_bsgs",
    "count_naive",
    "count_schoof",
    "curve_from_j",
    "estimate",
    "factor",
    "is_prime",
    "named_modulus",
    "prob_all",
    "prob_any",
    "prob_none",
    "registry",
    "sample_gaps",
    "scan_range",
    "solinas_value",
    "twist_of",
    "__version__",
]
