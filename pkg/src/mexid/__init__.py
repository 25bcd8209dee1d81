"""Exact minimal-excludant partition statistics and q-series identity verification."""

from .identities import (
    IdentityEntry,
    VerificationReport,
    evaluate,
    parse,
    registry,
    verify,
    verify_all,
)
from .mexstats import MexStatRow, ZPolynomial, mex, mex_polynomial, sigma_mex
from .partitions import ColoredDistinctPartition, Partition, enumerate_partitions, p, q_distinct
from .series import TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "ColoredDistinctPartition",
    "IdentityEntry",
    "MexStatRow",
    "Partition",
    "TruncatedSeries",
    "VerificationReport",
    "ZPolynomial",
    "enumerate_partitions",
    "evaluate",
    "mex",
    "mex_polynomial",
    "p",
    "parse",
    "q_distinct",
    "registry",
    "sigma_mex",
    "verify",
    "verify_all",
]
