"""Pretty good state transfer on paths under the XY quantum walk.

Decides, certifies and numerically demonstrates transfer between vertex
pairs of the path graph P_n.
"""

from .certificates import (
    CaseTag,
    CertificateReport,
    ObstructionCertificate,
    check_certificate,
    generate_certificate,
    lemma4_sum,
    lemma5_sum,
)
from .classifier import Classification, Reason, Verdict, classify, classify_end_vertices, pgst_pairs
from .dynamics import FidelityTrace, amplitude, fidelity, oracle_expm, search_best_time
from .errors import (
    BudgetExceeded,
    CertificateNotApplicable,
    ClampViolation,
    FactorizationError,
    PGSTError,
    RangeViolation,
)
from .numtheory import TwoAdicForm, is_prime, odd_prime_factors, two_adic
from .spectra import PathPair, PathSpectrum, SupportMask, spectrum, strongly_cospectral, support

__all__ = [
    "BudgetExceeded",
    "CaseTag",
    "CertificateNotApplicable",
    "CertificateReport",
    "ClampViolation",
    "Classification",
    "FactorizationError",
    "FidelityTrace",
    "ObstructionCertificate",
    "PGSTError",
    "PathPair",
    "PathSpectrum",
    "RangeViolation",
    "Reason",
    "SupportMask",
    "TwoAdicForm",
    "Verdict",
    "amplitude",
    "check_certificate",
    "classify",
    "classify_end_vertices",
    "fidelity",
    "generate_certificate",
    "is_prime",
    "lemma4_sum",
    "lemma5_sum",
    "odd_prime_factors",
    "oracle_expm",
    "pgst_pairs",
    "search_best_time",
    "spectrum",
    "strongly_cospectral",
    "support",
    "two_adic",
]

__version__ = "0.1.0"
