import random

import pytest

from lbcolor import (
    ColoringInstance,
    DecompositionError,
    RawDecomposition,
    UsageError,
    brute_force_solve,
    build_nice_decomposition,
    dp_edge,
    dp_vertex,
)
from lbcolor.treewidth import (
    _edge_tables,
    _vertex_tables,
    exact_elimination_order,
    heuristic_width,
    normalize_decomposition,
    order_to_raw,
    validate_raw_decomposition,
)

from corpus import (
    assert_outcome,
    random_edge_instance,
    random_vertex_instance,
    treewidth_by_elimination_orders,
)


def full(k):
    return frozenset(range(1, k + 1))


def vertex_inst(n, edges, k, p, part_of, weight, bounds, allowed=None, profit=None):
    return ColoringInstance(mode="vertex", n=n, edges=tuple(edges), k=k, p=p,
                            part_of=part_of, weight=weight, bounds=bounds,
                            allowed=allowed or (full(k),) * n, profit=profit)


# ---------------------------------------------------------------------------
# construction


def test_path_has_width_one():
    inst = vertex_inst(3, ((0, 1), (1, 2)), 2, 1, (1,) * 3, (1,) * 3, ((2, 1),))
    _, width = build_nice_decomposition(inst)
    assert width == 1


def test_triangle_has_width_two():
    inst = vertex_inst(3, ((0, 1), (1, 2), (0, 2)), 3, 1, (1,) * 3, (1,) * 3, ((1, 1, 1),))
    _, width = build_nice_decomposition(inst)
    assert width == 2


def test_heuristic_width_at_least_exact():
    rng = random.Random(47)
    for _ in range(25):
        n = 8
        edges = tuple((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3)
        exact = treewidth_by_elimination_orders(n, edges)
        assert heuristic_width(n, edges) >= exact
        _, subset_dp = exact_elimination_order(n, edges)
        assert subset_dp == exact


def nice_invariants(dec, n, edges):
    seen = set()
    for bag in dec.bags:
        seen.update(bag)
        assert list(bag) == sorted(set(bag))
    assert seen == set(range(n))
    for u, v in edges:
        assert any(u in bag and v in bag for bag in dec.bags)
    # per-vertex occurrences form a connected subtree
    parent = [-1] * dec.size
    for i in range(dec.size):
        for ch in dec.children[i]:
            parent[ch] = i
    for v in range(n):
        holders = [i for i in range(dec.size) if v in dec.bags[i]]
        tops = [i for i in holders if parent[i] not in holders]
        assert len(tops) == 1, f"vertex {v} occurrences split"
    for i in range(dec.size):
        kids = dec.children[i]
        kind = dec.kinds[i]
        if kind == "leaf":
            assert kids == ()
        elif kind == "join":
            assert len(kids) == 2
            assert dec.bags[kids[0]] == dec.bags[i] == dec.bags[kids[1]]
        elif kind == "forget":
            (j,) = kids
            assert set(dec.bags[j]) - set(dec.bags[i]) == {dec.vertex[i]}
            assert len(dec.bags[j]) == len(dec.bags[i]) + 1
        else:
            (j,) = kids
            assert set(dec.bags[i]) - set(dec.bags[j]) == {dec.vertex[i]}
            assert len(dec.bags[i]) == len(dec.bags[j]) + 1


def test_nice_form_invariants_on_random_graphs():
    rng = random.Random(53)
    for _ in range(30):
        inst = random_vertex_instance(rng, n_max=8)
        dec, width = build_nice_decomposition(inst)
        nice_invariants(dec, inst.n, inst.edges)
        assert dec.size <= 4 * (inst.n + 1) * (width + 2)


def test_supplied_decomposition_validation_errors():
    edges = ((0, 1), (1, 2))
    with pytest.raises(DecompositionError, match=r"condition \(1\)"):
        validate_raw_decomposition(3, edges, RawDecomposition(((0, 1),), (), 0))
    with pytest.raises(DecompositionError, match=r"condition \(2\)"):
        validate_raw_decomposition(
            3, edges, RawDecomposition(((0, 1), (2,)), ((0, 1),), 0)
        )
    with pytest.raises(DecompositionError, match=r"condition \(3\)"):
        validate_raw_decomposition(
            3, edges,
            RawDecomposition(((0, 1), (2,), (1, 2)), ((0, 1), (1, 2)), 0),
        )
    with pytest.raises(DecompositionError, match="tree"):
        validate_raw_decomposition(
            3, edges, RawDecomposition(((0, 1), (1, 2)), (), 0)
        )


def test_supplied_decomposition_is_used():
    inst = vertex_inst(3, ((0, 1), (1, 2)), 2, 1, (1,) * 3, (1,) * 3, ((2, 1),))
    raw = RawDecomposition(bags=((0, 1), (1, 2)), tree_edges=((0, 1),), root=0)
    dec, width = build_nice_decomposition(inst, raw)
    assert width == 1
    out = dp_vertex(inst, dec)
    assert out.feasible and out.witness.color_of == (1, 2, 1)


# ---------------------------------------------------------------------------
# vertex DP


def test_dp_vertex_path_matches_forced_coloring():
    inst = vertex_inst(3, ((0, 1), (1, 2)), 2, 1, (1,) * 3, (1,) * 3, ((2, 1),))
    dec, _ = build_nice_decomposition(inst)
    out = dp_vertex(inst, dec)
    assert out.feasible and out.witness.color_of == (1, 2, 1)


def test_dp_vertex_star_with_pinned_center():
    star = ((0, 1), (0, 2), (0, 3))
    lists = (frozenset({1}),) + (full(2),) * 3
    feasible = vertex_inst(4, star, 2, 1, (1,) * 4, (1,) * 4, ((1, 3),), allowed=lists)
    dec, _ = build_nice_decomposition(feasible)
    out = dp_vertex(feasible, dec)
    assert out.feasible and out.witness.color_of == (1, 2, 2, 2)
    tight = vertex_inst(4, star, 2, 1, (1,) * 4, (1,) * 4, ((2, 2),), allowed=lists)
    assert not dp_vertex(tight, build_nice_decomposition(tight)[0]).feasible


def test_dp_vertex_matches_oracle_decide_and_maximize():
    rng = random.Random(59)
    for _ in range(120):
        inst = random_vertex_instance(rng, tw_cap=3, profit=True)
        dec, _ = build_nice_decomposition(inst)
        decide = dp_vertex(inst, dec)
        assert decide.status == brute_force_solve(inst).status
        assert_outcome(inst, decide)
        best = dp_vertex(inst, dec, "maximize")
        oracle_best = brute_force_solve(inst, "maximize")
        assert best.status == oracle_best.status
        if best.feasible:
            assert best.objective == oracle_best.objective
            assert_outcome(inst, best)


def test_dp_vertex_usage_errors():
    inst = random_vertex_instance(random.Random(0), profit=False)
    dec, _ = build_nice_decomposition(inst)
    with pytest.raises(UsageError):
        dp_vertex(inst, dec, "maximize")
    with pytest.raises(UsageError):
        dp_vertex(inst, dec, "minimize")


def test_decomposition_independence():
    rng = random.Random(61)
    for _ in range(25):
        inst = random_vertex_instance(rng, n_max=6, profit=True)
        dec_a, _ = build_nice_decomposition(inst)
        # alternative decomposition from the identity elimination order
        raw = order_to_raw(inst.n, inst.edges, list(range(inst.n)))
        validate_raw_decomposition(inst.n, inst.edges, raw)
        dec_b = normalize_decomposition(raw)
        assert dp_vertex(inst, dec_a).status == dp_vertex(inst, dec_b).status
        a = dp_vertex(inst, dec_a, "maximize")
        b = dp_vertex(inst, dec_b, "maximize")
        assert a.status == b.status and a.objective == b.objective


def test_stored_tuples_stay_within_bounds():
    rng = random.Random(67)
    for _ in range(20):
        inst = random_vertex_instance(rng, n_max=6)
        dec, _ = build_nice_decomposition(inst)
        tables = _vertex_tables(inst, dec, maximize=False)
        for table in tables:
            for row in table.values():
                for tup in row:
                    assert all(x <= b for x, b in zip(tup, inst.bounds_flat))
                    assert all(x >= 0 for x in tup)


def trace_join_conservation(inst, dec, tables, slot_weight):
    """Walk every stored join entry and check q + q' = omega + bag weight."""
    checked = 0
    for node in range(dec.size):
        if dec.kinds[node] != "join":
            continue
        for key, row in tables[node].items():
            bag_w = [0] * len(inst.bounds_flat)
            for element, c in zip(slot_weight(node), key):
                bag_w[element[0] * inst.k + (c - 1)] += element[1]
            for tup, pred in row.items():
                tag, qa, qb = pred
                assert tag == "j"
                assert all(a + b == t + w for a, b, t, w in zip(qa, qb, tup, bag_w))
                checked += 1
    return checked


def test_join_conservation_holds_on_traced_tables():
    rng = random.Random(71)
    total = 0
    for _ in range(40):
        inst = random_vertex_instance(rng, n_max=7, edge_p=0.45)
        dec, _ = build_nice_decomposition(inst)
        tables = _vertex_tables(inst, dec, maximize=False)

        def bag_slots(node):
            return [(inst.part_of[v] - 1, inst.weight[v]) for v in dec.bags[node]]

        total += trace_join_conservation(inst, dec, tables, bag_slots)
    assert total > 0


# ---------------------------------------------------------------------------
# edge DP


def test_dp_edge_two_edge_path_alternates():
    inst = ColoringInstance(mode="edge", n=3, edges=((0, 1), (1, 2)), k=2, p=1,
                            part_of=(1, 1), weight=(1, 1), bounds=((1, 1),),
                            allowed=(full(2),) * 2)
    dec, _ = build_nice_decomposition(inst)
    out = dp_edge(inst, dec)
    assert out.feasible
    assert_outcome(inst, out)


def test_dp_edge_triangle_needs_three_colors():
    inst = ColoringInstance(mode="edge", n=3, edges=((0, 1), (0, 2), (1, 2)), k=2, p=1,
                            part_of=(1, 1, 1), weight=(1, 1, 1), bounds=((2, 1),),
                            allowed=(full(2),) * 3)
    dec, _ = build_nice_decomposition(inst)
    assert not dp_edge(inst, dec).feasible


def test_dp_edge_adjacent_edges_in_distant_bags():
    # shares only vertex 1; a decomposition of the bare graph would split them
    inst = ColoringInstance(mode="edge", n=5, edges=((1, 2), (1, 4)), k=1, p=2,
                            part_of=(2, 2), weight=(1, 2), bounds=((0,), (3,)),
                            allowed=(frozenset({1}),) * 2)
    dec, _ = build_nice_decomposition(inst)
    assert not dp_edge(inst, dec).feasible


def test_dp_edge_rejects_decomposition_splitting_conflicts():
    inst = ColoringInstance(mode="edge", n=3, edges=((0, 1), (1, 2)), k=2, p=1,
                            part_of=(1, 1), weight=(1, 1), bounds=((1, 1),),
                            allowed=(full(2),) * 2)
    raw = RawDecomposition(bags=((0, 1), (1, 2)), tree_edges=((0, 1),), root=0)
    dec, _ = build_nice_decomposition(inst, raw)
    with pytest.raises(UsageError, match="adjacent edges"):
        dp_edge(inst, dec)


def test_dp_edge_accepts_supplied_single_bag_decomposition():
    inst = ColoringInstance(mode="edge", n=3, edges=((0, 1), (1, 2)), k=2, p=1,
                            part_of=(1, 1), weight=(1, 1), bounds=((1, 1),),
                            allowed=(full(2),) * 2)
    raw = RawDecomposition(bags=((0, 1, 2),), tree_edges=(), root=0)
    dec, width = build_nice_decomposition(inst, raw)
    assert width == 2
    out = dp_edge(inst, dec)
    assert out.feasible
    assert_outcome(inst, out)


def test_dp_edge_matches_oracle():
    rng = random.Random(73)
    for _ in range(120):
        inst = random_edge_instance(rng)
        dec, _ = build_nice_decomposition(inst)
        out = dp_edge(inst, dec)
        assert out.status == brute_force_solve(inst).status
        assert_outcome(inst, out)


def test_edge_join_conservation():
    rng = random.Random(79)
    total = 0
    for _ in range(30):
        inst = random_edge_instance(rng, m_max=6)
        dec, _ = build_nice_decomposition(inst)
        tables, bag_edges = _edge_tables(inst, dec)
        for node in range(dec.size):
            if dec.kinds[node] != "join":
                continue
            for key, row in tables[node].items():
                bag_w = [0] * len(inst.bounds_flat)
                for e, c in zip(bag_edges[node], key):
                    bag_w[(inst.part_of[e] - 1) * inst.k + (c - 1)] += inst.weight[e]
                for tup, pred in row.items():
                    tag, qa, qb = pred
                    assert tag == "j"
                    assert all(a + b == t + w for a, b, t, w in zip(qa, qb, tup, bag_w))
                    total += 1
    assert total > 0
