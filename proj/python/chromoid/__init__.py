"""Colored categories, their congruences and quotient groupoids."""

from ._chromoid import (
    FORMAT,
    ClassConstancyError,
    ColoredCategory,
    Error,
    FormatError,
    GuardExceeded,
    InvariantViolation,
    PreconditionError,
    Quotient,
    StructuralError,
    check,
    count_functors_to_discrete,
    cyclic_group,
    group_classification,
    hamming,
    isomorphism,
    load,
    loads,
    morphism_classes,
    object_classes,
    quotient,
    run_cli,
)

__all__ = [
    "FORMAT",
    "ClassConstancyError",
    "ColoredCategory",
    "Error",
    "FormatError",
    "GuardExceeded",
    "InvariantViolation",
    "PreconditionError",
    "Quotient",
    "StructuralError",
    "check",
    "count_functors_to_discrete",
    "cyclic_group",
    "group_classification",
    "hamming",
    "isomorphism",
    "load",
    "loads",
    "morphism_classes",
    "object_classes",
    "quotient",
    "run_cli",
]
