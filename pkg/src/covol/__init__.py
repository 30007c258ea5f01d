"""Exact constructions and log-concavity certificates for Schubert-type polynomials."""

from .certify import CertReport, certify_report, is_dlc, is_dually_lorentzian, is_lorentzian, is_mconvex, signature
from .perm import Permutation, bruhat_leq, enumerate_bruhat_pairs
from .poly import MultiPoly, normalize, reverse, truncate
from .schubert import richardson, schubert, skew_schubert

__version__ = "0.1.0"

__all__ = [
    "CertReport",
    "MultiPoly",
    "Permutation",
    "bruhat_leq",
    "certify_report",
    "enumerate_bruhat_pairs",
    "is_dlc",
    "is_dually_lorentzian",
    "is_lorentzian",
    "is_mconvex",
    "normalize",
    "reverse",
    "richardson",
    "schubert",
    "signature",
    "skew_schubert",
    "truncate",
]
