"""Parsing and formatting of exact rationals as ``"num/den"`` strings."""

from fractions import Fraction

__all__ = ["parse_rational", "format_rational"]


def parse_rational(s) -> Fraction:
    """Parse ``"3/4"``, ``"2"`` or an int into a Fraction; floats are rejected.

    Decision-problem inputs must be exact, so anything carrying binary
    floating point is refused at the boundary.
    """
    if isinstance(s, bool):
        raise TypeError("booleans are not weights")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, Fraction):
        return s
    if isinstance(s, float):
        raise TypeError(f"refusing float weight {s!r}: weights must be exact rationals")
    if isinstance(s, str):
        return Fraction(s.strip())
    raise TypeError(f"cannot parse rational from {type(s).__name__}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"
