"""Sexagesimal literals of the form ``359;45,40``.

The semicolon separates the integer part from the fractional places and
commas separate successive base-60 places, so ``359;45,40`` is
359 + 45/60 + 40/60**2.  Everything downstream works in decimal degrees;
these helpers only sit at the I/O boundary.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

_TOKEN = re.compile(r"\d+")


class SexagesimalError(ValueError):
    """Malformed sexagesimal literal; ``position`` is the 0-based offset."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


@dataclass(frozen=True)
class SexNum:
    sign: int
    integer_part: int
    fraction_digits: tuple[int, ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.integer_part < 0:
            raise ValueError("integer_part must be non-negative")
        for d in self.fraction_digits:
            if not 0 <= d < 60:
                raise ValueError(f"fraction digit {d} outside 0..59")
        if self.sign == -1 and self.integer_part == 0 and not any(self.fraction_digits):
            object.__setattr__(self, "sign", 1)

    @property
    def exact(self) -> Fraction:
        v = Fraction(self.integer_part)
        for i, d in enumerate(self.fraction_digits, start=1):
            v += Fraction(d, 60**i)
        return self.sign * v

    def __float__(self) -> float:
        return float(self.exact)

    def padded(self, places: int) -> SexNum:
        """Same value with the fraction extended by zeros to ``places`` digits."""
        extra = max(0, places - len(self.fraction_digits))
        return SexNum(self.sign, self.integer_part, self.fraction_digits + (0,) * extra)

    def __str__(self) -> str:
        s = "-" if self.sign < 0 else ""
        s += str(self.integer_part)
        if self.fraction_digits:
            s += ";" + ",".join(str(d) for d in self.fraction_digits)
        return s


def parse_sex(text: str) -> SexNum:
    """Parse ``[-]INT(;INT(,INT)*)?`` without losing precision."""
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    if not s:
        raise SexagesimalError("empty literal", text, offset)
    pos = 0
    sign = 1
    if s[0] == "-":
        sign = -1
        pos = 1
    m = _TOKEN.match(s, pos)
    if m is None:
        raise SexagesimalError("expected integer part", text, offset + pos)
    integer_part = int(m.group())
    pos = m.end()
    digits = []
    if pos < len(s):
        if s[pos] != ";":
            raise SexagesimalError(f"unexpected character {s[pos]!r}", text, offset + pos)
        sep = ";"
        while pos < len(s):
            if s[pos] != sep:
                raise SexagesimalError(f"unexpected character {s[pos]!r}", text, offset + pos)
            pos += 1
            m = _TOKEN.match(s, pos)
            if m is None:
                raise SexagesimalError("expected digit", text, offset + pos)
            d = int(m.group())
            if d >= 60:
                raise SexagesimalError(f"digit {d} is not below 60", text, offset + pos)
            digits.append(d)
            pos = m.end()
            sep = ","
    return SexNum(sign, integer_part, tuple(digits))


def to_degrees(x: SexNum | str) -> float:
    if isinstance(x, str):
        x = parse_sex(x)
    return float(x)


def sex(text: str) -> float:
    """Shorthand: literal straight to decimal degrees."""
    return float(parse_sex(text))


def from_degrees(x: float, places: int) -> SexNum:
    """Round ``x`` half-up (on magnitude) to ``places`` base-60 places."""
    if places < 0:
        raise ValueError("places must be >= 0")
    mag = Decimal(repr(abs(float(x))))
    units = int((mag * 60**places).quantize(Decimal(1), rounding=ROUND_HALF_UP))
    digits = []
    for _ in range(places):
        units, d = divmod(units, 60)
        digits.append(d)
    return SexNum(-1 if x < 0 else 1, units, tuple(reversed(digits)))


def format_sex(x: float, places: int) -> str:
    """Format decimal degrees, e.g. ``format_sex(359.761111, 2) == '359;45,40'``."""
    return str(from_degrees(x, places))
