"""Exact computation of the link invariants Theta, Theta_d and P from braid words."""

__version__ = "0.1.0"

from .braid import BraidWord, components, parse_braid  # noqa: E402
from .invariants import (  # noqa: E402
    compare,
    homflypt,
    theta,
    theta_closed,
    theta_d,
    theta_skein,
    theta_trace,
)
from .scalar import LaurentPoly, ScalarValue, TracePolynomial, parse_scalar  # noqa: E402

__all__ = [
    "BraidWord",
    "LaurentPoly",
    "ScalarValue",
    "TracePolynomial",
    "compare",
    "components",
    "homflypt",
    "parse_braid",
    "parse_scalar",
    "theta",
    "theta_closed",
    "theta_d",
    "theta_skein",
    "theta_trace",
]
