"""Exact q-integer addition rules, zero identities and functional equations."""
from .poly import NEG_INF, Poly, degree, exact_div, q_integer
from .seqexpr import evaluate, parse, render

__all__ = ["NEG_INF", "Poly", "degree", "evaluate", "exact_div", "parse", "q_integer", "render"]
__version__ = "0.1.0"
