import random
from fractions import Fraction

import pytest

from l2trees.descriptors import (
    GroupDescriptor,
    InsufficientDataError,
    OrbitCell,
    cyclic_group,
    euler_char_from_orbit_cells,
    free_group,
    surface_group,
    trivial_group,
)
from l2trees.graphs import (
    Edge,
    GraphOfGroups,
    GraphValidationError,
    HypothesisError,
    b1_l2_fundamental,
    chi_l2_fundamental,
    fundamental_group_order,
    stable_letter_rank,
    validate,
)
from l2trees.rationals import GroupOrder, INFINITE, reciprocal_order


def fin(n):
    return GroupOrder.finite(n)


def segment(left, right, edge_group):
    return GraphOfGroups(
        {"a": left, "b": right}, (Edge("e", ("a", "b"), edge_group),)
    )


def wedge(loops):
    """One trivial vertex carrying `loops` trivial loop edges (free group)."""
    return GraphOfGroups(
        {"v": trivial_group()},
        tuple(Edge(f"l{i}", ("v", "v"), trivial_group()) for i in range(loops)),
    )


MODULAR = segment(cyclic_group(2), cyclic_group(3), trivial_group())


class TestValidate:
    def test_well_formed_amalgam(self):
        assert validate(MODULAR) == []

    def test_lagrange_violation(self):
        g = segment(cyclic_group(6), cyclic_group(4), cyclic_group(4))
        rules = [v.rule for v in validate(g)]
        assert "lagrange" in rules

    def test_disconnected_graph(self):
        g = GraphOfGroups({"a": cyclic_group(2), "b": cyclic_group(3)})
        rules = [v.rule for v in validate(g)]
        assert "connected" in rules

    def test_empty_graph(self):
        assert [v.rule for v in validate(GraphOfGroups({}))] == ["nonempty"]

    def test_unknown_endpoint(self):
        g = GraphOfGroups(
            {"a": cyclic_group(2)},
            (Edge("e", ("a", "zz"), trivial_group()),),
        )
        assert any(v.rule == "endpoint-exists" for v in validate(g))

    def test_duplicate_edge_id(self):
        g = GraphOfGroups(
            {"a": trivial_group()},
            (
                Edge("e", ("a", "a"), trivial_group()),
                Edge("e", ("a", "a"), trivial_group()),
            ),
        )
        assert any(v.rule == "unique-edge-id" for v in validate(g))

    def test_infinite_edge_into_finite_vertex(self):
        g = segment(cyclic_group(2), surface_group(2), free_group(1))
        assert any(v.rule == "finite-endpoint" for v in validate(g))

    def test_violations_name_the_offender(self):
        g = segment(cyclic_group(6), cyclic_group(4), cyclic_group(4))
        v = next(v for v in validate(g) if v.rule == "lagrange")
        assert "'e'" in str(v) and "'a'" in str(v)

    def test_operations_refuse_invalid_graphs(self):
        g = GraphOfGroups({"a": cyclic_group(2), "b": cyclic_group(3)})
        with pytest.raises(GraphValidationError):
            chi_l2_fundamental(g)


class TestChi:
    def test_modular_group(self):
        assert chi_l2_fundamental(MODULAR) == Fraction(-1, 6)

    def test_trivial_hnn_is_integer_line(self):
        assert chi_l2_fundamental(wedge(1)) == Fraction(0)

    def test_free_product_of_three_cyclics(self):
        g = GraphOfGroups(
            {"a": cyclic_group(2), "b": cyclic_group(3), "c": cyclic_group(5)},
            (
                Edge("e1", ("a", "b"), trivial_group()),
                Edge("e2", ("b", "c"), trivial_group()),
            ),
        )
        assert chi_l2_fundamental(g) == Fraction(-29, 30)

    def test_insufficient_data_names_first_offender(self):
        g = segment(
            cyclic_group(2),
            GroupDescriptor("riddle", INFINITE),
            trivial_group(),
        )
        with pytest.raises(InsufficientDataError, match="vertex 'b'"):
            chi_l2_fundamental(g)


class TestB1:
    def test_modular_group(self):
        res = b1_l2_fundamental(MODULAR)
        assert res.value == Fraction(1, 6)
        assert res.assumptions == ()
        assert res.order == INFINITE

    @pytest.mark.parametrize("n", range(1, 11))
    def test_free_groups(self, n):
        res = b1_l2_fundamental(wedge(n))
        assert res.value == Fraction(n - 1)

    def test_single_finite_vertex_is_corrected_to_zero(self):
        g = GraphOfGroups({"v": cyclic_group(6)})
        res = b1_l2_fundamental(g)
        # the raw vertex sum would give -1/6; finiteness forces 0
        assert res.value == Fraction(0)
        assert res.order == fin(6)

    def test_edge_with_nonzero_b1_rejected(self):
        g = segment(surface_group(2), surface_group(2), surface_group(2))
        with pytest.raises(HypothesisError, match="'e'"):
            b1_l2_fundamental(g)

    def test_edge_with_unspecified_b1_rejected(self):
        g = segment(
            surface_group(2),
            surface_group(2),
            GroupDescriptor("E", INFINITE, chi=0),
        )
        with pytest.raises(HypothesisError, match="unspecified"):
            b1_l2_fundamental(g)

    def test_vertex_missing_b1_is_insufficient_data(self):
        g = segment(
            GroupDescriptor("V", INFINITE, chi=0),
            cyclic_group(2),
            trivial_group(),
        )
        with pytest.raises(InsufficientDataError, match="vertex 'a'"):
            b1_l2_fundamental(g)

    def test_surface_vertex_unflagged(self):
        g = GraphOfGroups({"s": surface_group(2)})
        res = b1_l2_fundamental(g)
        assert res.value == Fraction(2)
        assert res.assumptions == ()
        assert res.order == INFINITE


class TestFundamentalGroupOrder:
    def test_single_finite_vertex(self):
        assert fundamental_group_order(
            GraphOfGroups({"v": cyclic_group(6)})
        ) == fin(6)

    def test_loop_edge_forces_infinite(self):
        assert fundamental_group_order(wedge(1)) == INFINITE

    def test_proper_amalgam_forces_infinite(self):
        assert fundamental_group_order(MODULAR) == INFINITE

    def test_infinite_vertex_forces_infinite(self):
        g = GraphOfGroups({"s": surface_group(2)})
        assert fundamental_group_order(g) == INFINITE

    def test_contraction_of_full_edge(self):
        # C4 amalgamated with C2 over the full C2: the C2 side is swallowed
        g = segment(cyclic_group(4), cyclic_group(2), cyclic_group(2))
        assert fundamental_group_order(g) == fin(4)

    def test_contraction_chain(self):
        g = GraphOfGroups(
            {"a": cyclic_group(8), "b": cyclic_group(4), "c": cyclic_group(2)},
            (
                Edge("e1", ("a", "b"), cyclic_group(4)),
                Edge("e2", ("b", "c"), cyclic_group(2)),
            ),
        )
        assert fundamental_group_order(g) == fin(8)

    def test_parallel_edges_after_contraction_force_infinite(self):
        g = GraphOfGroups(
            {"a": cyclic_group(2), "b": cyclic_group(2)},
            (
                Edge("e1", ("a", "b"), cyclic_group(2)),
                Edge("e2", ("a", "b"), cyclic_group(2)),
            ),
        )
        assert fundamental_group_order(g) == INFINITE


class TestStableLetterRank:
    def test_tree_has_rank_zero(self):
        g = GraphOfGroups(
            {"a": cyclic_group(2), "b": cyclic_group(3), "c": cyclic_group(5)},
            (
                Edge("e1", ("a", "b"), trivial_group()),
                Edge("e2", ("b", "c"), trivial_group()),
            ),
        )
        assert stable_letter_rank(g) == 0

    @pytest.mark.parametrize("n", [1, 2, 3, 7])
    def test_wedge_of_circles(self, n):
        assert stable_letter_rank(wedge(n)) == n

    def test_theta_graph(self):
        g = GraphOfGroups(
            {"a": trivial_group(), "b": trivial_group()},
            tuple(
                Edge(f"e{i}", ("a", "b"), trivial_group()) for i in range(3)
            ),
        )
        assert stable_letter_rank(g) == 2

    def test_rank_zero_iff_tree(self):
        rng = random.Random(7)
        for _ in range(50):
            g = random_finite_gog(rng)
            is_tree = len(g.edges) == len(g.vertices) - 1
            assert (stable_letter_rank(g) == 0) == is_tree


def random_finite_gog(rng: random.Random, max_vertices=6, max_edges=8):
    """Connected multigraph with finite groups satisfying the edge embeddings."""
    nv = rng.randint(1, max_vertices)
    orders = [rng.randint(1, 12) for _ in range(nv)]
    vertices = {f"v{i}": cyclic_group(orders[i], name=f"G{i}") for i in range(nv)}
    edges = []
    for i in range(1, nv):
        j = rng.randrange(i)
        gcd = _gcd(orders[i], orders[j])
        d = rng.choice(_divisors(gcd))
        edges.append(Edge(f"t{i}", (f"v{j}", f"v{i}"), cyclic_group(d, name=f"E{i}")))
    extra = rng.randint(0, max_edges - len(edges)) if max_edges > len(edges) else 0
    for k in range(extra):
        i, j = rng.randrange(nv), rng.randrange(nv)
        gcd = _gcd(orders[i], orders[j])
        d = rng.choice(_divisors(gcd))
        edges.append(
            Edge(f"x{k}", (f"v{i}", f"v{j}"), cyclic_group(d, name=f"X{k}"))
        )
    return GraphOfGroups(vertices, tuple(edges))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


class TestCrossChecks:
    def test_orbit_cell_consistency_on_random_graphs(self):
        rng = random.Random(20240817)
        for _ in range(100):
            g = random_finite_gog(rng)
            assert validate(g) == []
            cells = [OrbitCell(0, d.order) for d in g.vertices.values()]
            cells += [OrbitCell(1, e.group.order) for e in g.edges]
            assert chi_l2_fundamental(g) == euler_char_from_orbit_cells(cells)

    def test_b1_literal_identity_on_random_infinite_graphs(self):
        rng = random.Random(991)
        for _ in range(100):
            g = random_finite_gog(rng)
            # a trivial loop guarantees an infinite fundamental group
            g = GraphOfGroups(
                g.vertices,
                g.edges + (Edge("loop", ("v0", "v0"), trivial_group()),),
            )
            res = b1_l2_fundamental(g)
            assert res.order == INFINITE and res.assumptions == ()
            folded = sum(
                (Fraction(0) - reciprocal_order(d.order)
                 for d in g.vertices.values()),
                Fraction(0),
            ) + sum(
                (reciprocal_order(e.group.order) for e in g.edges), Fraction(0)
            )
            assert res.value == folded

    def test_chi_invariant_under_relabeling_and_permutation(self):
        rng = random.Random(5150)
        for _ in range(50):
            g = random_finite_gog(rng)
            chi = chi_l2_fundamental(g)
            names = list(g.vertices)
            shuffled = names[:]
            rng.shuffle(shuffled)
            mapping = dict(zip(names, shuffled))
            edges = [
                Edge(f"r_{e.id}", (mapping[e.ends[0]], mapping[e.ends[1]]), e.group)
                for e in g.edges
            ]
            rng.shuffle(edges)
            relabeled = GraphOfGroups(
                {mapping[v]: d for v, d in g.vertices.items()}, tuple(edges)
            )
            assert chi_l2_fundamental(relabeled) == chi

    def test_contracting_edge_identical_to_endpoint_preserves_chi(self):
        # a -- b with the edge group equal to a's group: chi(edge) cancels
        # chi(a), so contracting onto b changes nothing
        a, b = cyclic_group(3, name="A"), cyclic_group(6, name="B")
        g = segment(a, b, a)
        contracted = GraphOfGroups({"b": b})
        assert chi_l2_fundamental(g) == chi_l2_fundamental(contracted)

    def test_contraction_within_larger_graph(self):
        a, b, c = cyclic_group(2, "A"), cyclic_group(4, "B"), cyclic_group(2, "C")
        g = GraphOfGroups(
            {"a": a, "b": b, "c": c},
            (
                Edge("ab", ("a", "b"), a),
                Edge("bc", ("b", "c"), trivial_group()),
            ),
        )
        contracted = GraphOfGroups(
            {"b": b, "c": c}, (Edge("bc", ("b", "c"), trivial_group()),)
        )
        assert chi_l2_fundamental(g) == chi_l2_fundamental(contracted)


class TestJson:
    def test_round_trip(self):
        g = MODULAR
        assert GraphOfGroups.from_json_dict(g.to_json_dict()) == g

    def test_schema_errors(self):
        with pytest.raises(ValueError):
            GraphOfGroups.from_json_dict({"vertices": [{"id": "a"}]})
        with pytest.raises(ValueError):
            GraphOfGroups.from_json_dict(
                {"vertices": [], "edges": [], "extra": 1}
            )
        with pytest.raises(ValueError):
            GraphOfGroups.from_json_dict(
                {
                    "vertices": [
                        {"id": "a", "group": {"name": "1", "order": 1}},
                        {"id": "a", "group": {"name": "1", "order": 1}},
                    ]
                }
            )
