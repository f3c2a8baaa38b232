"""Graphs of groups and the invariants of their fundamental groups.

A graph of groups here is a finite connected multigraph (loops and
parallel edges allowed, edges unoriented and counted once) carrying a
``GroupDescriptor`` on every vertex and edge.  Edge-group embeddings are
not represented; everything below is computed from the metadata alone.

The two central computations:

  - chi of the fundamental group: sum of vertex chis minus sum of edge
    chis (additivity over the graph);
  - b1 of the fundamental group: sum over vertices of (b1 - 1/|order|)
    plus sum over edges of 1/|order|, with 1/|order| = 0 for infinite
    groups, valid when every edge group has b1 = 0.  The displayed sum is
    correct for infinite fundamental groups; when the fundamental group is
    known finite the answer is 0 instead, and when finiteness cannot be
    settled the sum is returned flagged "assumes-infinite".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .descriptors import (
    GroupDescriptor,
    InsufficientDataError,
    chi_l2,
    effective_b1,
)
from .rationals import GroupOrder, Rat, reciprocal_order


class GraphValidationError(ValueError):
    """The graph violates a structural invariant; carries the violations."""

    def __init__(self, violations: list["Violation"]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


class HypothesisError(ValueError):
    """A formula's hypothesis fails for the given graph."""


@dataclass(frozen=True, slots=True)
class Violation:
    where: str
    rule: str
    detail: str

    def __str__(self) -> str:
        return f"{self.where}: {self.rule}: {self.detail}"


@dataclass(frozen=True, slots=True)
class Edge:
    id: str
    ends: tuple[str, str]
    group: GroupDescriptor

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class GraphOfGroups:
    """Vertex map and edge list; immutable after construction."""

    vertices: dict[str, GroupDescriptor]
    edges: tuple[Edge, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "vertices": [
                {"id": vid, "group": d.to_json_dict()}
                for vid, d in self.vertices.items()
            ],
            "edges": [
                {"id": e.id, "ends": list(e.ends), "group": e.group.to_json_dict()}
                for e in self.edges
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "GraphOfGroups":
        if not isinstance(data, dict):
            raise ValueError("graph of groups must be an object")
        unknown = set(data) - {"vertices", "edges"}
        if unknown:
            raise ValueError(f"unknown graph fields: {sorted(unknown)}")
        vertices: dict[str, GroupDescriptor] = {}
        for entry in data.get("vertices", []):
            if not isinstance(entry, dict) or "id" not in entry or "group" not in entry:
                raise ValueError(f"vertex entry needs 'id' and 'group': {entry!r}")
            vid = str(entry["id"])
            if vid in vertices:
                raise ValueError(f"duplicate vertex id {vid!r}")
            vertices[vid] = GroupDescriptor.from_json_dict(entry["group"])
        edges = []
        for entry in data.get("edges", []):
            if (
                not isinstance(entry, dict)
                or "id" not in entry
                or "ends" not in entry
                or "group" not in entry
            ):
                raise ValueError(f"edge entry needs 'id', 'ends', 'group': {entry!r}")
            ends = entry["ends"]
            if not isinstance(ends, (list, tuple)) or len(ends) != 2:
                raise ValueError(f"edge 'ends' must list two vertex ids: {ends!r}")
            edges.append(
                Edge(
                    id=str(entry["id"]),
                    ends=(str(ends[0]), str(ends[1])),
                    group=GroupDescriptor.from_json_dict(entry["group"]),
                )
            )
        return cls(vertices=vertices, edges=tuple(edges))


def validate(g: GraphOfGroups) -> list[Violation]:
    """All invariant violations, empty iff the graph is well formed.

    Rules: nonempty vertex set; edge endpoints exist; edge ids unique;
    graph connected; an edge into a finite vertex is finite, of order
    dividing the vertex order.
    """
    out: list[Violation] = []
    if not g.vertices:
        out.append(Violation("graph", "nonempty", "graph has no vertices"))
        return out

    seen_edge_ids: set[str] = set()
    endpoints_ok: list[Edge] = []
    for e in g.edges:
        if e.id in seen_edge_ids:
            out.append(Violation(f"edge {e.id!r}", "unique-edge-id", "duplicate id"))
        seen_edge_ids.add(e.id)
        missing = [v for v in e.ends if v not in g.vertices]
        if missing:
            out.append(
                Violation(
                    f"edge {e.id!r}", "endpoint-exists",
                    f"unknown vertex {missing[0]!r}",
                )
            )
            continue
        endpoints_ok.append(e)
        for vid in dict.fromkeys(e.ends):
            vorder = g.vertices[vid].order
            eorder = e.group.order
            if vorder.is_finite and not eorder.is_finite:
                out.append(
                    Violation(
                        f"edge {e.id!r}", "finite-endpoint",
                        f"infinite edge group into finite vertex {vid!r}",
                    )
                )
            elif not eorder.divides(vorder):
                out.append(
                    Violation(
                        f"edge {e.id!r}", "lagrange",
                        f"edge order {eorder} does not divide order {vorder} "
                        f"of vertex {vid!r}",
                    )
                )

    reached = set()
    first = next(iter(g.vertices))
    stack = [first]
    while stack:
        v = stack.pop()
        if v in reached:
            continue
        reached.add(v)
        for e in endpoints_ok:
            if e.ends[0] == v and e.ends[1] not in reached:
                stack.append(e.ends[1])
            elif e.ends[1] == v and e.ends[0] not in reached:
                stack.append(e.ends[0])
    if reached != set(g.vertices):
        missing = sorted(set(g.vertices) - reached)
        out.append(
            Violation("graph", "connected", f"unreachable vertices: {missing}")
        )
    return out


def require_valid(g: GraphOfGroups) -> None:
    violations = validate(g)
    if violations:
        raise GraphValidationError(violations)


def chi_l2_fundamental(g: GraphOfGroups) -> Rat:
    """chi of the fundamental group: vertex chis minus edge chis."""
    require_valid(g)
    total = Fraction(0)
    for vid, d in g.vertices.items():
        try:
            total += chi_l2(d)
        except InsufficientDataError as exc:
            raise InsufficientDataError(f"vertex {vid!r}: {exc}") from exc
    for e in g.edges:
        try:
            total -= chi_l2(e.group)
        except InsufficientDataError as exc:
            raise InsufficientDataError(f"edge {e.id!r}: {exc}") from exc
    return total


class Unknown:
    """Finiteness of the fundamental group cannot be settled from orders."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Unknown"


UNKNOWN = Unknown()


def fundamental_group_order(g: GraphOfGroups) -> GroupOrder | Unknown:
    """Exact finiteness of the fundamental group, from orders alone.

    Decides Infinite when the graph has a loop edge (nontrivial HNN
    extension), an edge of order strictly smaller than both endpoint
    orders (nontrivial amalgam), or any infinite vertex group (vertex
    groups embed in the fundamental group).  Otherwise contracts edges
    whose order equals an endpoint order, which for finite orders means
    the edge group fills that endpoint; if a single finite vertex remains
    its order is the answer.  Never guesses: anything undecided is
    ``UNKNOWN``.
    """
    require_valid(g)
    orders = {vid: d.order for vid, d in g.vertices.items()}
    work = [(e.ends[0], e.ends[1], e.group.order) for e in g.edges]

    while True:
        for u, v, eo in work:
            if u == v:
                return GroupOrder.infinite()
            if eo < orders[u] and eo < orders[v]:
                return GroupOrder.infinite()
        if any(not o.is_finite for o in orders.values()):
            return GroupOrder.infinite()
        if not work:
            (only,) = orders.values()
            return only
        contracted = False
        for idx, (u, v, eo) in enumerate(work):
            if eo == orders[u] or eo == orders[v]:
                merged = orders[v] if eo == orders[u] else orders[u]
                del work[idx]
                orders[u] = merged
                del orders[v]
                work = [
                    (u if a == v else a, u if b == v else b, o)
                    for a, b, o in work
                ]
                contracted = True
                break
        if not contracted:
            return UNKNOWN


@dataclass(frozen=True, slots=True)
class B1Result:
    """Value of the b1 computation plus any assumption flags attached."""

    value: Rat
    assumptions: tuple[str, ...] = ()
    order: GroupOrder | Unknown = UNKNOWN


ASSUMES_INFINITE = "assumes-infinite"


def b1_l2_fundamental(g: GraphOfGroups) -> B1Result:
    """First l2-Betti number of the fundamental group.

    Requires every edge group to have b1 = 0 (finite edge groups qualify
    automatically) and every vertex to have a derivable b1.  Returns 0
    when the fundamental group is established finite; otherwise the sum
    over vertices of (b1 - 1/|order|) plus the sum over edges of
    1/|order|, flagged "assumes-infinite" when finiteness is unsettled.
    """
    require_valid(g)
    for e in g.edges:
        eb1 = effective_b1(e.group)
        if eb1 is None:
            raise HypothesisError(
                f"edge {e.id!r}: b1 unspecified; the formula requires b1 = 0 "
                f"for every edge group"
            )
        if eb1 != 0:
            raise HypothesisError(f"edge {e.id!r}: b1 = {eb1} != 0")
    vertex_b1: dict[str, Rat] = {}
    for vid, d in g.vertices.items():
        vb1 = effective_b1(d)
        if vb1 is None:
            raise InsufficientDataError(f"vertex {vid!r}: b1 unspecified")
        vertex_b1[vid] = vb1

    order = fundamental_group_order(g)
    if isinstance(order, GroupOrder) and order.is_finite:
        return B1Result(Fraction(0), (), order)
    total = Fraction(0)
    for vid, d in g.vertices.items():
        total += vertex_b1[vid] - reciprocal_order(d.order)
    for e in g.edges:
        total += reciprocal_order(e.group.order)
    flags = (ASSUMES_INFINITE,) if order is UNKNOWN else ()
    return B1Result(total, flags, order)


def stable_letter_rank(g: GraphOfGroups) -> int:
    """Rank of a free complement of the vertex-stabilizer subgroup.

    Equals the first Betti number |E| - |V| + 1 of the connected quotient
    graph; zero exactly when the graph is a tree.
    """
    require_valid(g)
    return len(g.edges) - len(g.vertices) + 1
