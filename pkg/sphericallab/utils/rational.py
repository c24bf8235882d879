import fractions
import numbers
import typing

import numpy as np


def parse_rational(s: typing.Union[str, int, fractions.Fraction]) -> fractions.Fraction:
    """
        Parse "num/den" or an integer into an exact Fraction. Decimal strings
        are rejected so that exponent points stay exact.
    """
    if isinstance(s, fractions.Fraction):
        return s
    if isinstance(s, numbers.Integral):
        return fractions.Fraction(int(s))
    txt = str(s).strip()
    if "." in txt or "e" in txt.lower():
        raise ValueError(f"expected an exact rational like 3/4, got {s!r}")
    try:
        return fractions.Fraction(txt)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational: {s!r}")


def format_rational(x: fractions.Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def jsonable(value: typing.Any) -> typing.Any:
    """
        Convert a report value into plain JSON types. Fractions become
        "num/den" strings, complex numbers [re, im] pairs.
    """
    if hasattr(value, "get_state"):
        return jsonable(value.get_state())
    if isinstance(value, fractions.Fraction):
        return format_rational(value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real):
        return float(value)
    if isinstance(value, numbers.Complex):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in items]
    return value
