"""Finite rings, their commuting graphs, and exact domination numbers."""

from commring.domination import (
    gamma_bounds,
    gamma_bruteforce,
    gamma_exact,
    gamma_signed_bruteforce,
    gamma_signed_exact,
    verify_dominating,
    verify_signed,
)
from commring.factory import EnumerationSpec, enumerate_rings
from commring.graph import SimpleGraph, commuting_graph, complement
from commring.ring import (
    FiniteRing,
    center,
    centralizer,
    direct_product,
    presentation_E,
    presentation_F,
    ring_iso,
    validate_ring,
)

__version__ = "0.1.0"

__all__ = [
    "EnumerationSpec", "FiniteRing", "SimpleGraph", "center", "centralizer", "commuting_graph",
    "complement", "direct_product", "enumerate_rings", "gamma_bounds", "gamma_bruteforce",
    "gamma_exact", "gamma_signed_bruteforce", "gamma_signed_exact", "presentation_E",
    "presentation_F", "ring_iso", "validate_ring", "verify_dominating", "verify_signed",
]
