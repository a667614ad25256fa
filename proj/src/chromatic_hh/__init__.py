"""Exact K(i)-homology presentations, Hochschild tables and degree checks.

Every function returns a dict with ``ok``, ``verdicts``, ``artifacts`` and
``manifest``; JSON artifacts come back parsed.
"""
from ._core import (
    BudgetExceeded,
    FormatError,
    MathError,
    PreconditionError,
    __version__,
    check_collapse,
    check_conjecture,
    check_splitting,
    derive,
    fixture_names,
    hh,
    reproduce,
)

__all__ = [
    "BudgetExceeded",
    "FormatError",
    "MathError",
    "PreconditionError",
    "check_collapse",
    "check_conjecture",
    "check_splitting",
    "derive",
    "fixture_names",
    "hh",
    "reproduce",
]
