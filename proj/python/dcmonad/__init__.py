"""Double categories of spans and polynomials over finite sets."""

from ._core import (
    Error,
    ParseError,
    compose,
    composition_bijection,
    double_axioms,
    framed,
    free_category,
    free_monad,
    run,
    universal_property_chain,
)

__all__ = [
    "Error",
    "ParseError",
    "compose",
    "composition_bijection",
    "double_axioms",
    "framed",
    "free_category",
    "free_monad",
    "run",
    "universal_property_chain",
]
