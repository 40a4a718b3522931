"""Word topologies on groups: finite-group engines and a cofiniteness classifier."""

__version__ = "0.1.0"

from .cardinal import INFINITE, ExtendedNat, finite
from .classify import (AbelianD, FiniteD, FreeD, HeisenbergD, KnownGroup, ProductD, QuotientD,
                       classify, decide_cen_cofinite, decide_mon_cofinite, decide_WCL,
                       decide_zar_cofinite, oracle_check_finite)
from .groups import Element, Group
from .report import NO, UNDECIDED, YES, ClassReport, Finding, Verdict

__all__ = [
    "INFINITE", "ExtendedNat", "finite",
    "AbelianD", "FiniteD", "FreeD", "HeisenbergD", "KnownGroup", "ProductD", "QuotientD",
    "classify", "decide_cen_cofinite", "decide_mon_cofinite", "decide_WCL",
    "decide_zar_cofinite", "oracle_check_finite",
    "Element", "Group",
    "NO", "UNDECIDED", "YES", "ClassReport", "Finding", "Verdict",
]
