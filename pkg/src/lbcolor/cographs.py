"""Cotrees, the cograph coloring DP, and the complete/complete-bipartite solvers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .basic import part_weight_assignment
from .errors import NotACographError, UsageError
from .instance import ColoringInstance, SolveOutcome
from .matching import AssignmentProblem, max_weight_perfect_assignment


@dataclass(frozen=True)
class Cotree:
    """Binary cotree: leaves carry graph vertices, internal nodes are union/join."""

    kinds: tuple[str, ...]  # "leaf" | "union" | "join"
    children: tuple[tuple[int, ...], ...]
    vertex: tuple[int | None, ...]
    root: int

    def post_order(self):
        order = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            order.append(node)
            stack.extend(self.children[node])
        order.reverse()
        return order

    def leaves_under(self):
        """Per node, the sorted tuple of graph vertices below it."""
        below = [None] * len(self.kinds)
        for node in self.post_order():
            if self.kinds[node] == "leaf":
                below[node] = (self.vertex[node],)
            else:
                acc = []
                for ch in self.children[node]:
                    acc.extend(below[ch])
                below[node] = tuple(sorted(acc))
        return below


def reconstruct_graph(ct: Cotree) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Rebuild (n, edges) from a cotree; join nodes add all cross edges."""
    below = ct.leaves_under()
    edges = set()
    for node in ct.post_order():
        if ct.kinds[node] == "join":
            left, right = ct.children[node]
            for u in below[left]:
                for v in below[right]:
                    edges.add((u, v) if u < v else (v, u))
    n = len(below[ct.root])
    return n, tuple(sorted(edges))


def find_induced_p4(vertices, adjacency):
    """First 4-subset (in sorted order) inducing a path, returned in path order."""
    for quad in combinations(sorted(vertices), 4):
        inside = [sum(1 for u in quad if u != v and u in adjacency[v]) for v in quad]
        if sorted(inside) != [1, 1, 2, 2]:
            continue
        edge_count = sum(inside) // 2
        if edge_count != 3:
            continue
        ends = [v for v, d in zip(quad, inside) if d == 1]
        path = [ends[0]]
        rest = set(quad) - {ends[0]}
        while rest:
            nxt = min(u for u in rest if u in adjacency[path[-1]])
            path.append(nxt)
            rest.discard(nxt)
        return tuple(path)
    return None


def build_cotree_graph(n: int, edges) -> Cotree:
    """Recursive cotree construction; raises NotACographError with a P4 witness."""
    adjacency = [set() for _ in range(n)]
    for u, v in edges:
        adjacency[u].add(v)
        adjacency[v].add(u)

    kinds, children, vertex = [], [], []

    def add(kind, kids=(), v=None):
        kinds.append(kind)
        children.append(tuple(kids))
        vertex.append(v)
        return len(kinds) - 1

    def comps(vertices, neighbors):
        left = set(vertices)
        out = []
        while left:
            start = min(left)
            seen = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in neighbors(u):
                    if w in left and w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(sorted(seen))
            left -= seen
        return out

    def build(vertices) -> int:
        if len(vertices) == 1:
            return add("leaf", v=vertices[0])
        vset = set(vertices)
        parts = comps(vertices, lambda u: adjacency[u] & vset)
        kind = "union"
        if len(parts) == 1:
            parts = comps(vertices, lambda u: vset - adjacency[u] - {u})
            kind = "join"
        if len(parts) == 1:
            raise NotACographError(find_induced_p4(vertices, adjacency))
        top = build(parts[0])
        for part in parts[1:]:
            top = add(kind, (top, build(part)))
        return top

    if n == 0:
        raise UsageError("cotree: the graph has no vertices")
    root = build(list(range(n)))
    return Cotree(kinds=tuple(kinds), children=tuple(children), vertex=tuple(vertex), root=root)


def build_cotree(inst: ColoringInstance) -> Cotree:
    if inst.mode != "vertex":
        raise UsageError("build_cotree: requires a vertex-mode instance")
    return build_cotree_graph(inst.n, inst.edges)


def is_cograph(n: int, edges) -> bool:
    if n == 0:
        return True
    try:
        build_cotree_graph(n, edges)
        return True
    except NotACographError:
        return False


# ---------------------------------------------------------------------------
# cotree DP


def dp_cograph(inst: ColoringInstance, ct: Cotree, objective: str = "decide") -> SolveOutcome:
    """Coloring DP over a cotree.

    Tables map reachable weight tuples to predecessors.  At union nodes child
    tuples simply add; at join nodes they add under the exclusivity rule that
    each color draws weight from at most one child, which is what keeps the
    combined coloring proper across the join.
    """
    if inst.mode != "vertex":
        raise UsageError("dp_cograph: requires a vertex-mode instance")
    if objective not in ("decide", "maximize"):
        raise UsageError(f"dp_cograph: objective must be decide or maximize, got {objective!r}")
    maximize = objective == "maximize"
    if maximize and inst.profit is None:
        raise UsageError("dp_cograph: maximize requires a profit matrix")

    bounds = inst.bounds_flat
    k = inst.k
    p = inst.p
    tables: list[dict] = [None] * len(ct.kinds)

    def color_sums(tup):
        return tuple(sum(tup[h * k + c] for h in range(p)) for c in range(k))

    for node in ct.post_order():
        kind = ct.kinds[node]
        table: dict = {}
        if kind == "leaf":
            v = ct.vertex[node]
            for c in sorted(inst.allowed[v]):
                s = inst.flat_index(inst.part_of[v], c)
                if inst.weight[v] > bounds[s]:
                    continue
                tup = tuple(inst.weight[v] if i == s else 0 for i in range(len(bounds)))
                entry = (inst.profit_of(v, c), c) if maximize else c
                if tup not in table:
                    table[tup] = entry
                elif maximize and entry[0] > table[tup][0]:
                    table[tup] = entry
        else:
            left, right = ct.children[node]
            lt, rt = tables[left], tables[right]
            joining = kind == "join"
            lsums = {t: color_sums(t) for t in lt} if joining else None
            rsums = {t: color_sums(t) for t in rt} if joining else None
            for ta in sorted(lt):
                for tb in sorted(rt):
                    if joining and any(a and b for a, b in zip(lsums[ta], rsums[tb])):
                        continue
                    tup = tuple(a + b for a, b in zip(ta, tb))
                    if any(x > bound for x, bound in zip(tup, bounds)):
                        continue
                    if maximize:
                        profit = lt[ta][0] + rt[tb][0]
                        cur = table.get(tup)
                        if cur is None or profit > cur[0]:
                            table[tup] = (profit, (ta, tb))
                    elif tup not in table:
                        table[tup] = (ta, tb)
        tables[node] = table

    target = inst.bounds_flat
    if target not in tables[ct.root]:
        return SolveOutcome.infeasible_outcome()

    color_of = [0] * inst.n
    stack = [(ct.root, target)]
    while stack:
        node, tup = stack.pop()
        entry = tables[node][tup]
        pred = entry[1] if maximize else entry
        if ct.kinds[node] == "leaf":
            color_of[ct.vertex[node]] = pred
        else:
            left, right = ct.children[node]
            stack.append((left, pred[0]))
            stack.append((right, pred[1]))
    return SolveOutcome.feasible_from(inst, color_of)


# ---------------------------------------------------------------------------
# complete graphs


def is_complete(n: int, edges) -> bool:
    return len(edges) == n * (n - 1) // 2


def solve_complete_graph(inst: ColoringInstance) -> SolveOutcome:
    """Complete graphs: every color is used exactly once, so after dropping
    all-zero bound columns, vertices match to compatible colors via a
    maximum-weight assignment (weights are profits when supplied)."""
    if inst.mode != "vertex":
        raise UsageError("solve_complete_graph: requires a vertex-mode instance")
    if not is_complete(inst.n, inst.edges):
        raise UsageError("solve_complete_graph: the graph is not complete")

    kept = [c for c in range(1, inst.k + 1) if any(inst.bounds[h][c - 1] for h in range(inst.p))]
    if len(kept) != inst.n:
        return SolveOutcome.infeasible_outcome()
    owner = {}
    for c in kept:
        positive = [h for h in range(1, inst.p + 1) if inst.bounds[h - 1][c - 1] > 0]
        if len(positive) != 1:
            return SolveOutcome.infeasible_outcome()
        owner[c] = positive[0]

    weights = []
    allowed = []
    for v in range(inst.n):
        wrow, arow = [], []
        for c in kept:
            h = owner[c]
            ok = (
                c in inst.allowed[v]
                and inst.part_of[v] == h
                and inst.weight[v] == inst.bounds[h - 1][c - 1]
            )
            arow.append(ok)
            wrow.append(inst.profit_of(v, c))
        weights.append(tuple(wrow))
        allowed.append(tuple(arow))
    result = max_weight_perfect_assignment(
        AssignmentProblem(weights=tuple(weights), allowed=tuple(allowed))
    )
    if result is None:
        return SolveOutcome.infeasible_outcome()
    return SolveOutcome.feasible_from(inst, [kept[c] for c in result.columns])


# ---------------------------------------------------------------------------
# complete bipartite graphs


def bipartition(n: int, edges):
    """Two-color the graph; returns the side sets or None if an odd cycle exists."""
    adjacency = [set() for _ in range(n)]
    for u, v in edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    side = [-1] * n
    for start in range(n):
        if side[start] >= 0:
            continue
        side[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adjacency[u]:
                if side[w] < 0:
                    side[w] = side[u] ^ 1
                    stack.append(w)
                elif side[w] == side[u]:
                    return None
    a = tuple(v for v in range(n) if side[v] == 0)
    b = tuple(v for v in range(n) if side[v] == 1)
    return a, b


def complete_bipartite_sides(n: int, edges):
    """Sides (A, B) when the graph is complete bipartite with edges, else None."""
    if n < 2 or not edges:
        return None
    sides = bipartition(n, edges)
    if sides is None:
        return None
    a, b = sides
    if not a or not b:
        return None
    if len(edges) != len(a) * len(b):
        return None
    edge_set = set(edges)
    for u in a:
        for v in b:
            if (min(u, v), max(u, v)) not in edge_set:
                return None
    return a, b


def is_complete_bipartite(n: int, edges) -> bool:
    return complete_bipartite_sides(n, edges) is not None


def solve_complete_bipartite(inst: ColoringInstance) -> SolveOutcome:
    """Complete bipartite graphs with few colors: try each way of committing
    every color to one side; the two sides then decouple into edgeless
    per-part subproblems."""
    if inst.mode != "vertex":
        raise UsageError("solve_complete_bipartite: requires a vertex-mode instance")
    sides = complete_bipartite_sides(inst.n, inst.edges)
    if sides is None:
        raise UsageError("solve_complete_bipartite: the graph is not complete bipartite")
    side_a, side_b = sides

    k = inst.k
    part_members = {
        (h, s): [v for v in (side_a if s == 0 else side_b) if inst.part_of[v] == h]
        for h in range(1, inst.p + 1)
        for s in (0, 1)
    }
    for mask in range(1 << k):
        side_colors = (
            frozenset(c for c in range(1, k + 1) if not mask >> (c - 1) & 1),
            frozenset(c for c in range(1, k + 1) if mask >> (c - 1) & 1),
        )
        color_of = [0] * inst.n
        ok = True
        for h in range(1, inst.p + 1):
            for s in (0, 1):
                members = part_members[(h, s)]
                masked_row = tuple(
                    inst.bounds[h - 1][c - 1] if c in side_colors[s] else 0
                    for c in range(1, k + 1)
                )
                if sum(masked_row) != sum(inst.weight[v] for v in members):
                    ok = False
                    break
                colors = part_weight_assignment(
                    [inst.weight[v] for v in members],
                    [inst.allowed[v] & side_colors[s] for v in members],
                    masked_row,
                )
                if colors is None:
                    ok = False
                    break
                for v, c in zip(members, colors):
                    color_of[v] = c
            if not ok:
                break
        if ok:
            return SolveOutcome.feasible_from(inst, color_of)
    return SolveOutcome.infeasible_outcome()


# ---------------------------------------------------------------------------
# cograph edge coloring


def solve_cograph_edges(inst: ColoringInstance, ct: Cotree) -> SolveOutcome:
    """Edge coloring in cographs with few colors: components are small (their
    diameter is at most two), so enumerate each component's proper list
    edge-colorings and combine the reachable weight tuples across components."""
    if inst.mode != "edge":
        raise UsageError("solve_cograph_edges: requires an edge-mode instance")
    degree = [0] * inst.n
    for u, v in inst.edges:
        degree[u] += 1
        degree[v] += 1
    if any(d > inst.k for d in degree):
        return SolveOutcome.infeasible_outcome()

    bounds = inst.bounds_flat
    dim = len(bounds)

    # edge ids grouped by connected component, skipping isolated vertices
    parent = list(range(inst.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in inst.edges:
        parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for idx, (u, v) in enumerate(inst.edges):
        groups.setdefault(find(u), []).append(idx)
    comp_edges = [groups[r] for r in sorted(groups)]

    def component_tuples(edge_ids):
        """All reachable weight tuples of one component, with one witness each."""
        adjacent = [
            [f for f in edge_ids if f != e and (set(inst.edges[e]) & set(inst.edges[f]))]
            for e in edge_ids
        ]
        pos = {e: i for i, e in enumerate(edge_ids)}
        found: dict[tuple, tuple] = {}
        colors = [0] * len(edge_ids)

        def backtrack(i, tup):
            if i == len(edge_ids):
                key = tuple(tup)
                if key not in found:
                    found[key] = tuple(colors)
                return
            e = edge_ids[i]
            s_base = (inst.part_of[e] - 1) * inst.k - 1
            for c in sorted(inst.allowed[e]):
                if any(pos[f] < i and colors[pos[f]] == c for f in adjacent[i]):
                    continue
                s = s_base + c
                if tup[s] + inst.weight[e] > bounds[s]:
                    continue
                tup[s] += inst.weight[e]
                colors[i] = c
                backtrack(i + 1, tup)
                tup[s] -= inst.weight[e]
            colors[i] = 0

        backtrack(0, [0] * dim)
        return found

    layers = [{(0,) * dim: None}]
    per_comp = []
    for edge_ids in comp_edges:
        options = component_tuples(edge_ids)
        per_comp.append((edge_ids, options))
        nxt = {}
        for state in layers[-1]:
            for delta in sorted(options):
                ns = tuple(a + b for a, b in zip(state, delta))
                if all(x <= bound for x, bound in zip(ns, bounds)) and ns not in nxt:
                    nxt[ns] = (state, delta)
        if not nxt:
            return SolveOutcome.infeasible_outcome()
        layers.append(nxt)

    target = inst.bounds_flat
    if target not in layers[-1]:
        return SolveOutcome.infeasible_outcome()
    color_of = [0] * len(inst.edges)
    state = target
    for layer, (edge_ids, options) in zip(reversed(layers[1:]), reversed(per_comp)):
        state, delta = layer[state]
        for e, c in zip(edge_ids, options[delta]):
            color_of[e] = c
    return SolveOutcome.feasible_from(inst, color_of)
