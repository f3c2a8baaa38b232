"""Group metadata records and the invariants derivable from them.

A ``GroupDescriptor`` carries the data this tool works with: the order of
the group, its first and second l2-Betti numbers, and its l2-Euler
characteristic.  Fields other than the order may be left unspecified;
unspecified is a first-class state ("undetermined"), never a silent 0.

For a finite group of order n the whole record is forced: b1 = b2 = 0 and
chi = 1/n.  For an infinite group, chi is derivable from b1 and b2 only
when the descriptor explicitly asserts that the group has a model of
dimension at most two (``two_dim_model``), because chi = b0 - b1 + b2
silently truncates any higher Betti numbers otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rationals import (
    GroupOrder,
    INFINITE,
    Rat,
    format_order,
    format_rat,
    parse_order,
    parse_rat,
    reciprocal_order,
)


class InsufficientDataError(ValueError):
    """A requested invariant is not derivable from the specified fields."""


class DescriptorConflictError(ValueError):
    """Specified fields contradict each other (exact equality required)."""


def _coerce_rat(value, field: str) -> Rat | None:
    if value is None:
        return None
    if isinstance(value, bool):
        raise TypeError(f"{field} must be a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    raise TypeError(f"{field} must be a rational, got {value!r}")


@dataclass(frozen=True, slots=True)
class GroupDescriptor:
    """Metadata for a single group: order, b1, b2, chi (all exact).

    b1, b2 and chi may be None (unspecified).  ``two_dim_model`` asserts
    that Betti numbers above degree two vanish, enabling chi derivation
    for infinite groups.
    """

    name: str
    order: GroupOrder
    b1: Rat | None = None
    b2: Rat | None = None
    chi: Rat | None = None
    two_dim_model: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "b1", _coerce_rat(self.b1, "b1"))
        object.__setattr__(self, "b2", _coerce_rat(self.b2, "b2"))
        object.__setattr__(self, "chi", _coerce_rat(self.chi, "chi"))
        if self.b1 is not None and self.b1 < 0:
            raise ValueError(f"{self.name}: b1 must be >= 0, got {self.b1}")
        if self.b2 is not None and self.b2 < 0:
            raise ValueError(f"{self.name}: b2 must be >= 0, got {self.b2}")
        if self.order.is_finite:
            n = self.order.value
            if self.b1 not in (None, Fraction(0)):
                raise DescriptorConflictError(
                    f"{self.name}: finite group has b1 = 0, got {self.b1}"
                )
            if self.b2 not in (None, Fraction(0)):
                raise DescriptorConflictError(
                    f"{self.name}: finite group has b2 = 0, got {self.b2}"
                )
            if self.chi is not None and self.chi != Fraction(1, n):
                raise DescriptorConflictError(
                    f"{self.name}: finite group of order {n} has chi = 1/{n}, "
                    f"got {self.chi}"
                )
        elif (
            self.two_dim_model
            and self.b1 is not None
            and self.b2 is not None
            and self.chi is not None
            and self.chi != -self.b1 + self.b2
        ):
            raise DescriptorConflictError(
                f"{self.name}: chi = {self.chi} but -b1 + b2 = {-self.b1 + self.b2} "
                f"under the two-dimensional-model assertion"
            )

    def to_json_dict(self) -> dict:
        out: dict = {"name": self.name, "order": format_order(self.order)}
        if self.b1 is not None:
            out["b1"] = format_rat(self.b1)
        if self.b2 is not None:
            out["b2"] = format_rat(self.b2)
        if self.chi is not None:
            out["chi"] = format_rat(self.chi)
        if self.two_dim_model:
            out["two_dim_model"] = True
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "GroupDescriptor":
        if not isinstance(data, dict):
            raise ValueError(f"group descriptor must be an object, got {data!r}")
        unknown = set(data) - {"name", "order", "b1", "b2", "chi", "two_dim_model"}
        if unknown:
            raise ValueError(f"unknown descriptor fields: {sorted(unknown)}")
        if "name" not in data or "order" not in data:
            raise ValueError("group descriptor requires 'name' and 'order'")
        def opt(field: str) -> Rat | None:
            return parse_rat(data[field]) if field in data else None
        return cls(
            name=str(data["name"]),
            order=parse_order(data["order"]),
            b1=opt("b1"),
            b2=opt("b2"),
            chi=opt("chi"),
            two_dim_model=bool(data.get("two_dim_model", False)),
        )


def effective_b1(d: GroupDescriptor) -> Rat | None:
    """b1 as specified, or 0 for finite groups; None when undetermined."""
    if d.b1 is not None:
        return d.b1
    if d.order.is_finite:
        return Fraction(0)
    return None


def effective_b2(d: GroupDescriptor) -> Rat | None:
    if d.b2 is not None:
        return d.b2
    if d.order.is_finite:
        return Fraction(0)
    return None


def chi_l2(d: GroupDescriptor) -> Rat:
    """The l2-Euler characteristic of the described group.

    Derivation routes, all of which must agree exactly:
      - chi as specified;
      - 1/n for a finite group of order n (all higher Betti numbers vanish);
      - b0 - b1 + b2 = -b1 + b2 for an infinite group carrying the
        two-dimensional-model assertion.
    """
    candidates: list[tuple[str, Rat]] = []
    if d.chi is not None:
        candidates.append(("specified chi", d.chi))
    if d.order.is_finite:
        candidates.append(("finite order", Fraction(1, d.order.value)))
    elif d.two_dim_model and d.b1 is not None and d.b2 is not None:
        candidates.append(("two-dimensional model", -d.b1 + d.b2))
    if not candidates:
        missing = "chi" if not d.two_dim_model else "b1/b2"
        raise InsufficientDataError(
            f"{d.name}: chi is not derivable (missing {missing}; for an infinite "
            f"group specify chi, or set two_dim_model together with b1 and b2)"
        )
    first_route, value = candidates[0]
    for route, other in candidates[1:]:
        if other != value:
            raise DescriptorConflictError(
                f"{d.name}: chi disagrees between {first_route} ({value}) "
                f"and {route} ({other})"
            )
    return value


@dataclass(frozen=True, slots=True)
class ClassCOutcome:
    """Result of a class-C membership check.

    status is True / False when decidable, None when the descriptor lacks
    the fields needed to decide; ``missing`` then names those fields.
    """

    status: bool | None
    reason: str
    missing: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.status is True


def is_in_class_C(d: GroupDescriptor) -> ClassCOutcome:
    """Class C: b1 = b2 = 0, and chi = 0 or the group is finite.

    Finite groups always qualify.  Adding data to a descriptor can only
    resolve an undetermined outcome, never flip a decided one.
    """
    b1 = effective_b1(d)
    b2 = effective_b2(d)
    if b1 is not None and b1 != 0:
        return ClassCOutcome(False, f"{d.name}: b1 = {b1} != 0")
    if b2 is not None and b2 != 0:
        return ClassCOutcome(False, f"{d.name}: b2 = {b2} != 0")
    if d.order.is_finite:
        return ClassCOutcome(True, f"{d.name}: finite of order {d.order}")
    missing = tuple(f for f, v in (("b1", b1), ("b2", b2)) if v is None)
    if missing:
        return ClassCOutcome(
            None, f"{d.name}: unspecified {', '.join(missing)}", missing
        )
    try:
        chi = chi_l2(d)
    except InsufficientDataError:
        return ClassCOutcome(None, f"{d.name}: chi not derivable", ("chi",))
    if chi == 0:
        return ClassCOutcome(True, f"{d.name}: b1 = b2 = 0 and chi = 0")
    return ClassCOutcome(False, f"{d.name}: infinite with chi = {chi} != 0")


@dataclass(frozen=True, slots=True)
class OrbitCell:
    """One orbit of cells in a cocompact complex: dimension and stabilizer order."""

    dimension: int
    stabilizer_order: GroupOrder

    def __post_init__(self) -> None:
        if self.dimension < 0:
            raise ValueError(f"cell dimension must be >= 0, got {self.dimension}")
        if not self.stabilizer_order.is_finite:
            raise ValueError("orbit cells require finite stabilizers")


def euler_char_from_orbit_cells(cells) -> Rat:
    """Alternating sum of reciprocal stabilizer orders over orbit cells.

    chi = sum over cells of (-1)^dim / |stabilizer|.  All stabilizers must
    be finite and the cell sequence nonempty.
    """
    cells = list(cells)
    if not cells:
        raise ValueError("orbit cell sequence must be nonempty")
    total = Fraction(0)
    for cell in cells:
        if not cell.stabilizer_order.is_finite:
            raise ValueError(
                f"infinite stabilizer in dimension {cell.dimension} cell"
            )
        sign = -1 if cell.dimension % 2 else 1
        total += sign * reciprocal_order(cell.stabilizer_order)
    return total


# Built-in catalog.  These are the descriptors the data files and tests
# reach for; values are classical.

def trivial_group(name: str = "1") -> GroupDescriptor:
    return GroupDescriptor(name, GroupOrder.finite(1))


def cyclic_group(n: int, name: str | None = None) -> GroupDescriptor:
    if n < 1:
        raise ValueError(f"cyclic group order must be >= 1, got {n}")
    return GroupDescriptor(name or f"C{n}", GroupOrder.finite(n))


def infinite_cyclic_group(name: str = "Z") -> GroupDescriptor:
    return GroupDescriptor(
        name, INFINITE, b1=Fraction(0), b2=Fraction(0), chi=Fraction(0),
        two_dim_model=True,
    )


def free_group(rank: int, name: str | None = None) -> GroupDescriptor:
    """Free group of the given rank: b1 = rank - 1, chi = 1 - rank."""
    if rank < 0:
        raise ValueError(f"free group rank must be >= 0, got {rank}")
    if rank == 0:
        return trivial_group(name or "F0")
    return GroupDescriptor(
        name or f"F{rank}", INFINITE,
        b1=Fraction(rank - 1), b2=Fraction(0), chi=Fraction(1 - rank),
        two_dim_model=True,
    )


def surface_group(genus: int, name: str | None = None) -> GroupDescriptor:
    """Fundamental group of the closed orientable surface of the given genus."""
    if genus < 0:
        raise ValueError(f"genus must be >= 0, got {genus}")
    if genus == 0:
        return trivial_group(name or "S0")
    return GroupDescriptor(
        name or f"Sigma{genus}", INFINITE,
        b1=Fraction(2 * genus - 2), b2=Fraction(0), chi=Fraction(2 - 2 * genus),
        two_dim_model=True,
    )
