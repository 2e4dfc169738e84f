"""Heegner periods, Rankin-Selberg L-values and wide moments."""

from ._core import (
    AccuracyError,
    DomainError,
    IntegrityError,
    PreconditionError,
    class_group,
    diagonal_moment,
    equidistribution,
    heegner,
    is_fundamental,
    lvalue,
    petersson_norm,
    tau,
    theta,
    waldspurger,
    whittaker,
    wide_moment,
)

__all__ = [
    "AccuracyError",
    "DomainError",
    "IntegrityError",
    "PreconditionError",
    "class_group",
    "diagonal_moment",
    "equidistribution",
    "heegner",
    "is_fundamental",
    "lvalue",
    "petersson_norm",
    "tau",
    "theta",
    "waldspurger",
    "whittaker",
    "wide_moment",
]
