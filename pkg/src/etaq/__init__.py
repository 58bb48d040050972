"""Exact arithmetic for Dedekind eta quotients on Gamma0(N)."""

from .analytics import enumerate_holomorphic, is_holomorphic, order_map, valence_check
from .core import (
    BoundExceeded,
    EtaQuotient,
    LevelError,
    OrderVector,
    ParseError,
    format_eta_quotient,
    parse_eta_quotient,
    true_level,
    weight_numerator,
)
from .family import build_F, build_f, verify_family, zn_membership
from .matrices import build_A, build_B, inverse_A, smith_data, verify_proposition1
from .qseries import quotient_series, series_distinct
from .simplicity import coset_certificate, conjecture_scan, find_factorizations, is_simple

__all__ = [
    "BoundExceeded", "EtaQuotient", "LevelError", "OrderVector", "ParseError",
    "build_A", "build_B", "build_F", "build_f", "conjecture_scan", "coset_certificate",
    "enumerate_holomorphic", "find_factorizations", "format_eta_quotient", "inverse_A",
    "is_holomorphic", "is_simple", "order_map", "parse_eta_quotient", "quotient_series",
    "series_distinct", "smith_data", "true_level", "valence_check", "verify_family",
    "verify_proposition1", "weight_numerator", "zn_membership",
]
