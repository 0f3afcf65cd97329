"""Split-graph recognition and the split-graph solvers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .basic import part_weight_assignment, solve_isolated_unit
from .errors import UsageError
from .instance import ColoringInstance, SolveOutcome
from .matching import AssignmentProblem, max_weight_perfect_assignment


@dataclass(frozen=True)
class SplitPartition:
    clique: tuple[int, ...]
    independent: tuple[int, ...]


@dataclass(frozen=True)
class SingularSpec:
    """Colors whose bound column deviates from the shared constant column B."""

    singular: tuple[int, ...]
    common_bound: int


def split_partition_graph(n: int, edges) -> SplitPartition | None:
    """Split partition via the degree-sequence splittance test.

    Returns the partition with the largest clique side; edgeless graphs are
    reported with an empty clique.  None when the graph is not split.
    """
    if not edges:
        return SplitPartition(clique=(), independent=tuple(range(n)))
    adjacency = [set() for _ in range(n)]
    for u, v in edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    order = sorted(range(n), key=lambda v: (-len(adjacency[v]), v))
    degs = [len(adjacency[v]) for v in order]
    m = max(i + 1 for i in range(n) if degs[i] >= i)
    if sum(degs[:m]) != m * (m - 1) + sum(degs[m:]):
        return None
    clique = sorted(order[:m])
    independent = sorted(order[m:])
    assert all(b in adjacency[a] for i, a in enumerate(clique) for b in clique[i + 1 :])
    assert all(b not in adjacency[a] for i, a in enumerate(independent) for b in independent[i + 1 :])
    # at most one independent vertex can be adjacent to the whole clique
    for v in independent:
        if all(u in adjacency[v] for u in clique):
            clique = sorted(clique + [v])
            independent = [u for u in independent if u != v]
            break
    return SplitPartition(clique=tuple(clique), independent=tuple(independent))


def split_partition(inst: ColoringInstance) -> SplitPartition | None:
    if inst.mode != "vertex":
        raise UsageError("split_partition: requires a vertex-mode instance")
    return split_partition_graph(inst.n, inst.edges)


def is_split(n: int, edges) -> bool:
    return split_partition_graph(n, edges) is not None


def infer_singular_spec(inst: ColoringInstance) -> SingularSpec:
    """Derive (B, singular colors) from the bound matrix.

    B is the most frequent value among constant columns (ties toward the
    smaller value); the singular colors are exactly the columns that are not
    constant at B.  With no constant column at all there is no candidate B.
    """
    constant_values = {}
    for c in range(1, inst.k + 1):
        column = {inst.bounds[h][c - 1] for h in range(inst.p)}
        if len(column) == 1:
            value = column.pop()
            constant_values[value] = constant_values.get(value, 0) + 1
    if not constant_values:
        raise UsageError("infer_singular_spec: no bound column is constant across parts")
    common = min(constant_values, key=lambda v: (-constant_values[v], v))
    singular = tuple(
        c
        for c in range(1, inst.k + 1)
        if any(inst.bounds[h][c - 1] != common for h in range(inst.p))
    )
    return SingularSpec(singular=singular, common_bound=common)


def _require_split(inst: ColoringInstance, op: str) -> SplitPartition:
    if inst.mode != "vertex":
        raise UsageError(f"{op}: requires a vertex-mode instance")
    sp = split_partition(inst)
    if sp is None:
        raise UsageError(f"{op}: the graph is not a split graph")
    return sp


def solve_split_k_fixed(inst: ColoringInstance) -> SolveOutcome:
    """Enumerate the proper list-colorings of the clique; each one leaves an
    edgeless residual instance on the independent set."""
    sp = _require_split(inst, "solve_split_k_fixed")
    clique, indep = list(sp.clique), list(sp.independent)
    if len(clique) > inst.k:
        return SolveOutcome.infeasible_outcome()

    adjacency = inst.adjacency
    for combo in product(*[sorted(inst.allowed[u]) for u in clique]):
        if len(set(combo)) != len(combo):
            continue
        residual = [list(row) for row in inst.bounds]
        ok = True
        for u, c in zip(clique, combo):
            residual[inst.part_of[u] - 1][c - 1] -= inst.weight[u]
            if residual[inst.part_of[u] - 1][c - 1] < 0:
                ok = False
                break
        if not ok:
            continue
        lists = []
        for v in indep:
            taken = {c for u, c in zip(clique, combo) if u in adjacency[v]}
            rest = inst.allowed[v] - taken
            if not rest:
                ok = False
                break
            lists.append(rest)
        if not ok:
            continue
        color_of = [0] * inst.n
        for u, c in zip(clique, combo):
            color_of[u] = c
        for h in range(1, inst.p + 1):
            members = [i for i, v in enumerate(indep) if inst.part_of[v] == h]
            colors = part_weight_assignment(
                [inst.weight[indep[i]] for i in members],
                [lists[i] for i in members],
                residual[h - 1],
            )
            if colors is None:
                ok = False
                break
            for i, c in zip(members, colors):
                color_of[indep[i]] = c
        if ok:
            return SolveOutcome.feasible_from(inst, color_of)
    return SolveOutcome.infeasible_outcome()


def solve_split_singular(inst: ColoringInstance, clique_general: bool = False) -> SolveOutcome:
    """Split graphs where all bound columns except a few singular ones share a
    common value B, independent-set vertices are unweighted and unrestricted.

    Guesses, for each singular color, which clique vertex takes it (or that
    none does); the remaining clique vertices take distinct non-singular
    colors, which B-symmetry makes interchangeable (a matching instance picks
    them when ``clique_general`` allows clique lists and weights).  The
    residual independent set is solved by one saturating flow.
    """
    sp = _require_split(inst, "solve_split_singular")
    clique, indep = list(sp.clique), list(sp.independent)
    for v in indep:
        if inst.weight[v] != 1:
            raise UsageError("solve_split_singular: independent-set vertices must have weight 1")
        if len(inst.allowed[v]) != inst.k:
            raise UsageError("solve_split_singular: independent-set vertices must allow every color")
    if not clique_general:
        for u in clique:
            if inst.weight[u] != 1:
                raise UsageError(
                    "solve_split_singular: clique vertices must have weight 1 "
                    "(pass clique_general to lift this)"
                )
            if len(inst.allowed[u]) != inst.k:
                raise UsageError(
                    "solve_split_singular: clique vertices must allow every color "
                    "(pass clique_general to lift this)"
                )
    spec = infer_singular_spec(inst)
    if len(clique) > inst.k:
        return SolveOutcome.infeasible_outcome()

    singular = list(spec.singular)
    nonsingular = [c for c in range(1, inst.k + 1) if c not in set(singular)]
    adjacency = inst.adjacency

    for guess in product(range(len(clique) + 1), repeat=len(singular)):
        picked = [i for i in guess if i > 0]
        if len(set(picked)) != len(picked):
            continue
        chosen = {}  # clique vertex -> singular color
        ok = True
        for c, g in zip(singular, guess):
            if g == 0:
                continue
            u = clique[g - 1]
            if c not in inst.allowed[u]:
                ok = False
                break
            if inst.bounds[inst.part_of[u] - 1][c - 1] < inst.weight[u]:
                ok = False
                break
            chosen[u] = c
        if not ok:
            continue
        remaining = [u for u in clique if u not in chosen]
        if len(remaining) > len(nonsingular):
            continue
        if clique_general:
            ap = AssignmentProblem(
                weights=tuple((0,) * len(nonsingular) for _ in remaining),
                allowed=tuple(
                    tuple(
                        c in inst.allowed[u] and spec.common_bound >= inst.weight[u]
                        for c in nonsingular
                    )
                    for u in remaining
                ),
            )
            result = max_weight_perfect_assignment(ap)
            if result is None:
                continue
            for u, col in zip(remaining, result.columns):
                chosen[u] = nonsingular[col]
        else:
            if remaining and spec.common_bound < 1:
                continue
            for u, c in zip(remaining, nonsingular):
                chosen[u] = c

        residual = [list(row) for row in inst.bounds]
        for u, c in chosen.items():
            residual[inst.part_of[u] - 1][c - 1] -= inst.weight[u]
        if any(x < 0 for row in residual for x in row):
            continue

        lists = []
        ok = True
        for v in indep:
            taken = frozenset(chosen[u] for u in clique if u in adjacency[v])
            rest = frozenset(range(1, inst.k + 1)) - taken
            if not rest:
                ok = False
                break
            lists.append(rest)
        if not ok:
            continue
        sub = ColoringInstance(
            mode="vertex",
            n=len(indep),
            edges=(),
            k=inst.k,
            p=inst.p,
            part_of=tuple(inst.part_of[v] for v in indep),
            weight=tuple(inst.weight[v] for v in indep),
            bounds=tuple(tuple(row) for row in residual),
            allowed=tuple(lists),
        )
        outcome = solve_isolated_unit(sub)
        if outcome.feasible:
            color_of = [0] * inst.n
            for u, c in chosen.items():
                color_of[u] = c
            for i, v in enumerate(indep):
                color_of[v] = outcome.witness.color_of[i]
            return SolveOutcome.feasible_from(inst, color_of)
    return SolveOutcome.infeasible_outcome()


def solve_split_edges(inst: ColoringInstance) -> SolveOutcome:
    """Edge coloring in split graphs with few colors: the edge count is tiny
    (every edge touches the clique), so prune-and-backtrack directly."""
    if inst.mode != "edge":
        raise UsageError("solve_split_edges: requires an edge-mode instance")
    sp = split_partition_graph(inst.n, inst.edges)
    if sp is None:
        raise UsageError("solve_split_edges: the graph is not a split graph")
    degree = [0] * inst.n
    for u, v in inst.edges:
        degree[u] += 1
        degree[v] += 1
    if any(d > inst.k for d in degree):
        return SolveOutcome.infeasible_outcome()
    if len(sp.clique) > inst.k + 1:
        return SolveOutcome.infeasible_outcome()

    m = len(inst.edges)
    bounds = inst.bounds_flat
    adjacent = [
        [f for f in range(e) if set(inst.edges[e]) & set(inst.edges[f])] for e in range(m)
    ]
    colors = [0] * m
    tally = [0] * len(bounds)

    def backtrack(e):
        if e == m:
            return list(tally) == list(bounds)
        base = (inst.part_of[e] - 1) * inst.k - 1
        for c in sorted(inst.allowed[e]):
            if any(colors[f] == c for f in adjacent[e]):
                continue
            s = base + c
            if tally[s] + inst.weight[e] > bounds[s]:
                continue
            tally[s] += inst.weight[e]
            colors[e] = c
            if backtrack(e + 1):
                return True
            tally[s] -= inst.weight[e]
            colors[e] = 0
        return False

    if not backtrack(0):
        return SolveOutcome.infeasible_outcome()
    return SolveOutcome.feasible_from(inst, colors)
