"""Number formatting shared by the report writers and the CLI."""

from decimal import ROUND_HALF_EVEN, Decimal


def format_number(x: float, precision: int = 4) -> str:
    """Fixed-point text for ``x`` rounded half-to-even at ``precision`` decimals.

    Rounding acts on the shortest decimal representation of the float, so
    ``format_number(0.125, 2)`` gives ``'0.12'``.
    """
    quantum = Decimal(1).scaleb(-precision)
    return str(Decimal(repr(float(x))).quantize(quantum, rounding=ROUND_HALF_EVEN))
