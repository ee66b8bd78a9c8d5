"""Temporal-planning-to-PDDL+ compiler toolkit.

The heavy lifting lives in the C++ extension module; this package just
re-exports its surface.
"""

from tempo2plus._core import (
    Compilation,
    ModelValidationError,
    PddlGroundError,
    PddlParseError,
    PlanBridgeError,
    PlusProblem,
    SolverRuntimeError,
    TemporalProblem,
    compile,
    parse_plus,
    parse_temporal,
    print_plus,
    select_delta,
    solve,
    validate_plus,
    validate_temporal,
)

__all__ = [
    "Compilation",
    "ModelValidationError",
    "PddlGroundError",
    "PddlParseError",
    "PlanBridgeError",
    "PlusProblem",
    "SolverRuntimeError",
    "TemporalProblem",
    "compile",
    "parse_plus",
    "parse_temporal",
    "print_plus",
    "select_delta",
    "solve",
    "validate_plus",
    "validate_temporal",
]
