"""Exact rational arithmetic and extended group orders.

Every invariant computed by this package is an exact rational number; no
floating point is used anywhere.  Rationals are ``fractions.Fraction``
values (arbitrary precision, eagerly normalized: positive denominator,
gcd(|num|, den) = 1), re-exported here as ``Rat``.

A group order is either a finite positive integer or infinite.  The
reciprocal 1/|G| follows the convention 1/|G| = 0 for infinite G.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

Rat = Fraction

_RAT_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def rat(numerator: int, denominator: int = 1) -> Rat:
    """Build an exact rational; rejects a zero denominator."""
    return Fraction(numerator, denominator)


def parse_rat(text: str) -> Rat:
    """Parse the wire form "p/q" (or "p" when q = 1).

    Only integer-slash-integer strings are accepted; decimal or float
    notation is rejected so exactness can never be silently lost.
    """
    s = text.strip()
    if not _RAT_RE.match(s):
        raise ValueError(f"not a rational in p/q form: {text!r}")
    return Fraction(s)


def format_rat(value: Rat) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(value))


@total_ordering
@dataclass(frozen=True, slots=True)
class GroupOrder:
    """The order of a group: a positive integer, or infinite (value None).

    Orders are totally ordered with the infinite order as maximum.
    Serialized as a positive decimal integer, or the string "inf".
    """

    value: int | None

    def __post_init__(self) -> None:
        if self.value is not None:
            if not isinstance(self.value, int) or isinstance(self.value, bool):
                raise TypeError(f"finite order must be an int, got {self.value!r}")
            if self.value < 1:
                raise ValueError(f"finite order must be >= 1, got {self.value}")

    @classmethod
    def finite(cls, n: int) -> "GroupOrder":
        return cls(n)

    @classmethod
    def infinite(cls) -> "GroupOrder":
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __lt__(self, other: "GroupOrder") -> bool:
        if not isinstance(other, GroupOrder):
            return NotImplemented
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def divides(self, other: "GroupOrder") -> bool:
        """Whether a subgroup of this order can sit inside one of `other`'s.

        Finite-into-finite requires divisibility (Lagrange); anything fits
        inside an infinite group; an infinite order never divides a finite one.
        """
        if self.value is None:
            return other.value is None
        if other.value is None:
            return True
        return other.value % self.value == 0

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)

    def __repr__(self) -> str:
        return f"GroupOrder({self.value!r})"


INFINITE = GroupOrder.infinite()


def parse_order(data: int | str) -> GroupOrder:
    """Parse the wire form: a positive decimal integer, or "inf"."""
    if isinstance(data, bool):
        raise ValueError(f"not a group order: {data!r}")
    if isinstance(data, int):
        return GroupOrder.finite(data)
    if isinstance(data, str):
        s = data.strip()
        if s == "inf":
            return INFINITE
        if s.isdigit():
            return GroupOrder.finite(int(s))
    raise ValueError(f"not a group order: {data!r}")


def format_order(order: GroupOrder) -> int | str:
    """JSON form: int when finite, "inf" otherwise."""
    return order.value if order.value is not None else "inf"


def reciprocal_order(order: GroupOrder) -> Rat:
    """1/|G|, with 1/|G| = 0 when the order is infinite."""
    if order.value is None:
        return Fraction(0)
    return Fraction(1, order.value)
