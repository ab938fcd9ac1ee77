"""Epsilon calculus, LK variants and proof transformations."""
from .syntax import All, And, App, Atom, Eps, Ex, Imp, Neg, Or, Var, alpha_eq, free_vars, substitute
from .text import ParseError, parse_formula, parse_sequent, parse_term, show, show_sequent
from .translation import from_epsilon, skolemize_formula, to_epsilon
from .proofs import ProofNode, Sequent, format_proof, parse_proof
from .kernel import CheckReport, check, metrics

__version__ = "0.1.0"

__all__ = [
    "All", "And", "App", "Atom", "Eps", "Ex", "Imp", "Neg", "Or", "Var",
    "alpha_eq", "free_vars", "substitute",
    "ParseError", "parse_formula", "parse_sequent", "parse_term", "show", "show_sequent",
    "from_epsilon", "skolemize_formula", "to_epsilon",
    "ProofNode", "Sequent", "format_proof", "parse_proof",
    "CheckReport", "check", "metrics",
]
