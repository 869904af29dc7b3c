"""Slope calculus on the pillowcase, fiber lifts, derivative links and
trisection diagrams for generalized square knots."""

from .slope import (
    INFINITY,
    ONE,
    ZERO,
    Slope,
    TwistMove,
    TwistWord,
    apply_twist,
    apply_word,
    intersection_number,
    reduce_slope,
)

__all__ = [
    "Slope",
    "TwistMove",
    "TwistWord",
    "apply_twist",
    "apply_word",
    "intersection_number",
    "reduce_slope",
    "ZERO",
    "ONE",
    "INFINITY",
]

__version__ = "0.1.0"
