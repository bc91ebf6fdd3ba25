"""Double-barrier option prices for KoBoL processes."""

from ._core import (
    DomainError,
    LevyModel,
    NumericalError,
    Payoff,
    ValidationError,
    euro_call,
    euro_digital,
    price,
    price_curve,
    reference_model,
    reference_table,
)

__all__ = [
    "DomainError",
    "LevyModel",
    "NumericalError",
    "Payoff",
    "ValidationError",
    "euro_call",
    "euro_digital",
    "price",
    "price_curve",
    "reference_model",
    "reference_table",
]
