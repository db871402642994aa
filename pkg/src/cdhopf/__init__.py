"""Exact Cayley-Dickson arithmetic with verification suites for zero divisors,
octonion subalgebras and the sphere actions on them."""

from .core import (
    BasisTable,
    Element,
    LevelError,
    associator,
    basis,
    build_table,
    conj,
    double,
    embed,
    hat,
    inner,
    mul,
    mul_via_table,
    norm2,
    one,
    split,
    tilde,
    zero,
)
from .hopf_zero import ZeroDivisorCert, hopf, retract, search_exhaustive, search_numeric
from .report import Report
from .suites import RunConfig, run_suite

__all__ = [
    "BasisTable",
    "Element",
    "LevelError",
    "Report",
    "RunConfig",
    "ZeroDivisorCert",
    "associator",
    "basis",
    "build_table",
    "conj",
    "double",
    "embed",
    "hat",
    "hopf",
    "inner",
    "mul",
    "mul_via_table",
    "norm2",
    "one",
    "retract",
    "run_suite",
    "search_exhaustive",
    "search_numeric",
    "split",
    "tilde",
    "zero",
]
