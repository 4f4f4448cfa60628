"""Proof language for intuitionistic linear logic with scalars and sums.

Terms are checked by :mod:`oclam.typecheck`, rewritten by :mod:`oclam.reduce`,
read as vectors and matrices by :mod:`oclam.encode`, compared observationally
by :mod:`oclam.equiv` and interpreted in semimodules by :mod:`oclam.denot`.
"""
import sys

# substitution and evaluation recurse over term depth
if sys.getrecursionlimit() < 10_000:
    sys.setrecursionlimit(10_000)

from .concrete import parse_term, parse_type, print_term, print_type  # noqa: E402
from .semiring import CRAT, NAT, RAT, TRIVIAL, get_semiring  # noqa: E402

__all__ = ["parse_term", "parse_type", "print_term", "print_type",
           "CRAT", "NAT", "RAT", "TRIVIAL", "get_semiring"]
