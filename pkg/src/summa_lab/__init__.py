"""Numerical verification harness for fractional-part identities of analytic number theory."""

from .arith import ArithmeticKind, ArithmeticTable, divisor_sum, sieve
from .errors import (
    CacheFormatError,
    DomainError,
    EmptyTableError,
    NearZeroError,
    PoleError,
    SizingError,
    SummaError,
    ZeroCountMismatch,
)
from .report import ResidualReport, TruncationSpec
from .zeros import ZeroTable, find_zeros, load_zeros, save_zeros

__version__ = "0.1.0"

__all__ = [
    "ArithmeticKind",
    "ArithmeticTable",
    "CacheFormatError",
    "DomainError",
    "EmptyTableError",
    "NearZeroError",
    "PoleError",
    "ResidualReport",
    "SizingError",
    "SummaError",
    "TruncationSpec",
    "ZeroCountMismatch",
    "ZeroTable",
    "divisor_sum",
    "find_zeros",
    "load_zeros",
    "save_zeros",
    "sieve",
]
