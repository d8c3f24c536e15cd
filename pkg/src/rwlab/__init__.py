"""Reference solvers, reductions and a certificate verifier for NFA Acceptance and Colored Walk."""
from .core import (
    AnyWalkInstance, CflInstance, CliqueInstance, ColoredGraph, Grammar, Nfa, NfaInstance,
    OmvInstance, OvInstance, ParseError, PreconditionError, ValidationError, WalkInstance,
    WordBreakInstance,
)
from .io import parse_instance, serialize_instance
from .solvers import nfa_accepts, solve, solve_walk_dp

__version__ = "0.1.0"
