"""Decimal rendering of exact rationals and arbitrary-precision floats.

Values are rendered at a requested number of significant digits with
round-half-even, switching to scientific notation for magnitudes of 1e7
and above (or below 1e-4).  Rendering goes through exact integer
arithmetic (the ``decimal`` module), so a printed string is a faithful
rounding of the underlying value, never of a double.
"""

from __future__ import annotations

import decimal
from fractions import Fraction

SCI_UPPER_EXPONENT = 7   # |x| >= 1e7 prints as d.ddd...e+NN
SCI_LOWER_EXPONENT = -4  # |x| < 1e-4 prints as d.ddd...e-NN


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of an mpmath mpf (every finite mpf is m*2^e)."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if x == 0:
            return Fraction(0)
        raise ValueError(f"cannot convert non-finite value {x!r}")
    value = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -value if sign else value


def round_to_sig(value: Fraction, digits: int) -> Fraction:
    """Round-half-even to the given count of significant decimal digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if value == 0:
        return Fraction(0)
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = decimal.ROUND_HALF_EVEN
        ctx.Emax = decimal.MAX_EMAX
        ctx.Emin = decimal.MIN_EMIN
        d = decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
    return Fraction(d)


def fraction_to_sig_str(value: Fraction, digits: int) -> str:
    """Render an exact rational at ``digits`` significant figures."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if value == 0:
        return "0." + "0" * (digits - 1) if digits > 1 else "0"
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = decimal.ROUND_HALF_EVEN
        ctx.Emax = decimal.MAX_EMAX
        ctx.Emin = decimal.MIN_EMIN
        d = decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
    return _format_decimal(d, digits)


def _format_decimal(d: decimal.Decimal, digits: int) -> str:
    sign, mantissa, exponent = d.as_tuple()
    digs = list(mantissa)
    # pad to the full significance so 1 prints as 1.000000000 at 10 digits
    while len(digs) < digits:
        digs.append(0)
        exponent -= 1
    adjusted = exponent + len(digs) - 1
    body = "".join(str(t) for t in digs)
    prefix = "-" if sign else ""
    if SCI_LOWER_EXPONENT < adjusted < SCI_UPPER_EXPONENT:
        point = adjusted + 1
        if point <= 0:
            text = "0." + "0" * (-point) + body
        elif point >= len(body):
            text = body + "0" * (point - len(body))
        else:
            text = body[:point] + "." + body[point:]
        return prefix + text
    head = body[0] if len(body) == 1 else body[0] + "." + body[1:]
    return f"{prefix}{head}e{adjusted:+03d}"


def sig_digits_of(value: Fraction, digits: int) -> tuple[str, int]:
    """Normalized (mantissa digits, decimal exponent) of a rounded value.

    Two values print identically at ``digits`` significant figures iff
    this tuple matches; used by table-reproduction checks.
    """
    if value == 0:
        return ("0" * digits, 0)
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = decimal.ROUND_HALF_EVEN
        ctx.Emax = decimal.MAX_EMAX
        ctx.Emin = decimal.MIN_EMIN
        d = decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
    sign, mantissa, exponent = d.as_tuple()
    digs = list(mantissa)
    while len(digs) < digits:
        digs.append(0)
        exponent -= 1
    body = "".join(str(t) for t in digs)
    if sign:
        body = "-" + body
    return (body, exponent + len(digs) - 1)


def parse_sig_str(text: str) -> Fraction:
    """Exact rational value of a decimal string (round-trip test support)."""
    return Fraction(decimal.Decimal(text))
