"""Deterministic weighted tree automata over commutative semifields.

Thin wrapper around the C++ extension: parsing/serialization of the text
format, evaluation, classical minimization, and hyper-minimization.
"""

from wta._core import (
    Automaton,
    AutomatonParseError,
    DomainError,
    Report,
    ResourceError,
    chain_automaton,
    compare,
    is_hyper_minimal,
    random_automaton,
)

__all__ = [
    "Automaton",
    "AutomatonParseError",
    "DomainError",
    "Report",
    "ResourceError",
    "chain_automaton",
    "compare",
    "is_hyper_minimal",
    "random_automaton",
]
