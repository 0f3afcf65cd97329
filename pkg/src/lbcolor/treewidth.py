"""Nice tree decompositions and the coloring DPs that run over them.

A nice decomposition is a rooted binary tree of bags whose nodes are leaf,
forget(v), introduce(v), or join nodes.  Both DP engines keep sparse tables:
per node, a map from (bag coloring, flattened part-by-color weight tuple) to
the predecessor that produced it, so unreachable states are simply absent and
witnesses fall out of a top-down trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DecompositionError, UsageError
from .instance import ColoringInstance, RawDecomposition, SolveOutcome

EXACT_WIDTH_LIMIT = 10


@dataclass(frozen=True)
class NiceDecomposition:
    kinds: tuple[str, ...]  # "leaf" | "forget" | "introduce" | "join"
    bags: tuple[tuple[int, ...], ...]  # each bag sorted ascending
    children: tuple[tuple[int, ...], ...]
    vertex: tuple[int | None, ...]  # the forgotten/introduced vertex
    root: int

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    @property
    def size(self) -> int:
        return len(self.kinds)

    def post_order(self):
        order = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            order.append(node)
            stack.extend(self.children[node])
        order.reverse()
        return order


# ---------------------------------------------------------------------------
# elimination orders


def _adj_masks(n: int, edges) -> list[int]:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _reach_count(adj, eliminated: int, v: int) -> int:
    # vertices outside `eliminated` reachable from v through eliminated ones
    seen = 1 << v
    frontier = adj[v] & ~seen
    found = 0
    while frontier:
        seen |= frontier
        found |= frontier & ~eliminated
        inner = frontier & eliminated
        nxt = 0
        while inner:
            low = inner & -inner
            nxt |= adj[low.bit_length() - 1]
            inner ^= low
        frontier = nxt & ~seen
    return bin(found).count("1")


def exact_elimination_order(n: int, edges) -> tuple[list[int], int]:
    """Minimum-width elimination order by dynamic programming over subsets."""
    if n == 0:
        return [], -1
    adj = _adj_masks(n, edges)
    full = (1 << n) - 1
    best = [n + 1] * (full + 1)
    choice = [-1] * (full + 1)
    best[0] = -1
    for s in range(1, full + 1):
        rest = s
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            prior = s ^ low
            cand = best[prior]
            deg = _reach_count(adj, prior, v)
            if deg > cand:
                cand = deg
            if cand < best[s]:
                best[s] = cand
                choice[s] = v
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    return order, best[full]


def min_fill_order(n: int, edges) -> list[int]:
    """Greedy elimination order picking the vertex adding fewest fill edges."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    remaining = set(range(n))
    order = []
    while remaining:
        best_v = None
        best_key = None
        for v in sorted(remaining):
            nbrs = adj[v] & remaining
            fill = 0
            nb = sorted(nbrs)
            for i in range(len(nb)):
                for j in range(i + 1, len(nb)):
                    if nb[j] not in adj[nb[i]]:
                        fill += 1
            key = (fill, len(nbrs), v)
            if best_key is None or key < best_key:
                best_key = key
                best_v = v
        nbrs = sorted(adj[best_v] & remaining)
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                adj[nbrs[i]].add(nbrs[j])
                adj[nbrs[j]].add(nbrs[i])
        remaining.discard(best_v)
        order.append(best_v)
    return order


def order_to_raw(n: int, edges, order) -> RawDecomposition:
    """Clique-tree decomposition induced by an elimination order."""
    if n == 0:
        return RawDecomposition(bags=((),), tree_edges=(), root=0)
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    position = {v: i for i, v in enumerate(order)}
    remaining = set(range(n))
    bags = []
    tree_edges = []
    pending_roots = []
    for v in order:
        nbrs = sorted(adj[v] & remaining, key=lambda u: position[u])
        bags.append(tuple(sorted([v] + nbrs)))
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                adj[nbrs[i]].add(nbrs[j])
                adj[nbrs[j]].add(nbrs[i])
        remaining.discard(v)
        if nbrs:
            tree_edges.append((position[v], position[nbrs[0]]))
        else:
            pending_roots.append(position[v])
    # chains together the roots of different connected components
    for a, b in zip(pending_roots, pending_roots[1:]):
        tree_edges.append((a, b))
    return RawDecomposition(bags=tuple(bags), tree_edges=tuple(tree_edges), root=len(order) - 1)


# ---------------------------------------------------------------------------
# validation and normalization


def validate_raw_decomposition(n: int, edges, raw: RawDecomposition) -> None:
    """Check tree shape plus the three tree-decomposition conditions."""
    nb = len(raw.bags)
    if nb == 0:
        raise DecompositionError("decomposition: needs at least one bag")
    if not 0 <= raw.root < nb:
        raise DecompositionError(f"decomposition: root {raw.root} out of range")
    for i, bag in enumerate(raw.bags):
        for v in bag:
            if not 0 <= v < n:
                raise DecompositionError(f"decomposition: bags[{i}] mentions unknown vertex {v}")
        if len(set(bag)) != len(bag):
            raise DecompositionError(f"decomposition: bags[{i}] repeats a vertex")
    if len(raw.tree_edges) != nb - 1:
        raise DecompositionError(
            f"decomposition: {nb} bags need {nb - 1} tree edges, got {len(raw.tree_edges)}"
        )
    nbrs = [[] for _ in range(nb)]
    for i, j in raw.tree_edges:
        if not (0 <= i < nb and 0 <= j < nb) or i == j:
            raise DecompositionError(f"decomposition: bad tree edge ({i}, {j})")
        nbrs[i].append(j)
        nbrs[j].append(i)
    seen = {raw.root}
    stack = [raw.root]
    while stack:
        u = stack.pop()
        for w in nbrs[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != nb:
        raise DecompositionError("decomposition: tree edges do not connect all bags")

    covered = set()
    for bag in raw.bags:
        covered.update(bag)
    if covered != set(range(n)):
        missing = sorted(set(range(n)) - covered)
        raise DecompositionError(f"condition (1): vertices {missing} appear in no bag")
    bag_sets = [set(b) for b in raw.bags]
    for u, v in edges:
        if not any(u in b and v in b for b in bag_sets):
            raise DecompositionError(f"condition (2): edge ({u}, {v}) is inside no bag")
    for v in range(n):
        holders = [i for i in range(nb) if v in bag_sets[i]]
        start = holders[0]
        seen = {start}
        stack = [start]
        holder_set = set(holders)
        while stack:
            u = stack.pop()
            for w in nbrs[u]:
                if w in holder_set and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(holders):
            raise DecompositionError(f"condition (3): bags containing vertex {v} are not connected")


class _NiceBuilder:
    def __init__(self):
        self.kinds = []
        self.bags = []
        self.children = []
        self.vertex = []

    def add(self, kind, bag, children=(), vertex=None) -> int:
        self.kinds.append(kind)
        self.bags.append(tuple(sorted(bag)))
        self.children.append(tuple(children))
        self.vertex.append(vertex)
        return len(self.kinds) - 1

    def lift(self, top: int, from_bag, to_bag) -> int:
        """Insert forget/introduce chains taking bag `from_bag` to `to_bag`."""
        cur = set(from_bag)
        for v in sorted(set(from_bag) - set(to_bag)):
            cur.discard(v)
            top = self.add("forget", cur, (top,), v)
        for v in sorted(set(to_bag) - cur):
            cur.add(v)
            top = self.add("introduce", cur, (top,), v)
        return top

    def build(self, root: int) -> NiceDecomposition:
        return NiceDecomposition(
            kinds=tuple(self.kinds),
            bags=tuple(self.bags),
            children=tuple(self.children),
            vertex=tuple(self.vertex),
            root=root,
        )


def normalize_decomposition(raw: RawDecomposition) -> NiceDecomposition:
    nb = len(raw.bags)
    nbrs = [[] for _ in range(nb)]
    for i, j in raw.tree_edges:
        nbrs[i].append(j)
        nbrs[j].append(i)

    builder = _NiceBuilder()
    done: dict[int, int] = {}
    stack = [(raw.root, -1, False)]
    while stack:
        node, parent, expanded = stack.pop()
        kids = [w for w in nbrs[node] if w != parent]
        if not expanded:
            stack.append((node, parent, True))
            for w in kids:
                stack.append((w, node, False))
            continue
        bag = raw.bags[node]
        if not kids:
            done[node] = builder.add("leaf", bag)
            continue
        lifted = [builder.lift(done[w], raw.bags[w], bag) for w in kids]
        top = lifted[0]
        for other in lifted[1:]:
            top = builder.add("join", bag, (top, other))
        done[node] = top
    return builder.build(done[raw.root])


def conflict_closure(n: int, edges) -> tuple[tuple[int, int], ...]:
    """Edges of G plus a pair for every two vertices with a common neighbor.

    Any two G-edges sharing a vertex span a triangle of this closure, so a
    tree decomposition of the closure puts them inside one common bag, which
    is what the edge-coloring DP needs to see their conflict.
    """
    closed = set(tuple(e) for e in edges)
    nbr = [set() for _ in range(n)]
    for u, v in edges:
        nbr[u].add(v)
        nbr[v].add(u)
    for v in range(n):
        mates = sorted(nbr[v])
        for i in range(len(mates)):
            for j in range(i + 1, len(mates)):
                closed.add((mates[i], mates[j]))
    return tuple(sorted(closed))


def build_nice_decomposition(
    inst: ColoringInstance, supplied: RawDecomposition | None = None
) -> tuple[NiceDecomposition, int]:
    """Build (or validate and normalize) a nice decomposition of the graph.

    Without a supplied decomposition, the elimination order is exact for
    n <= 10 and min-fill otherwise; the returned width is the width of the
    constructed decomposition.  For edge-mode instances the construction runs
    over the conflict closure of the graph, so that every two edges sharing a
    vertex meet inside some bag (still a valid decomposition of the graph
    itself, just a deeper one).
    """
    if supplied is None:
        supplied = inst.decomposition
    if supplied is not None:
        validate_raw_decomposition(inst.n, inst.edges, supplied)
        raw = supplied
    else:
        edges = inst.edges if inst.mode == "vertex" else conflict_closure(inst.n, inst.edges)
        if inst.n <= EXACT_WIDTH_LIMIT:
            order, _ = exact_elimination_order(inst.n, edges)
        else:
            order = min_fill_order(inst.n, edges)
        raw = order_to_raw(inst.n, edges, order)
    nice = normalize_decomposition(raw)
    return nice, nice.width


def heuristic_width(n: int, edges) -> int:
    """Width of the min-fill decomposition (an upper bound on tree-width)."""
    raw = order_to_raw(n, edges, min_fill_order(n, edges))
    return max(len(b) for b in raw.bags) - 1


# ---------------------------------------------------------------------------
# vertex DP


def _store_decide(table, key, tup, pred):
    row = table.setdefault(key, {})
    if tup not in row:
        row[tup] = pred


def _store_max(table, key, tup, pred, profit):
    row = table.setdefault(key, {})
    cur = row.get(tup)
    if cur is None or profit > cur[0]:
        row[tup] = (profit, pred)


def _vertex_tables(inst: ColoringInstance, dec: NiceDecomposition, maximize: bool):
    bounds = inst.bounds_flat
    dim = len(bounds)
    adjacency = inst.adjacency
    tables: list[dict] = [None] * dec.size

    def slot(v, c):
        return inst.flat_index(inst.part_of[v], c)

    for node in dec.post_order():
        kind = dec.kinds[node]
        bag = dec.bags[node]
        table: dict = {}

        if kind == "leaf":
            pairs = [
                (i, j)
                for i in range(len(bag))
                for j in range(i + 1, len(bag))
                if bag[j] in adjacency[bag[i]]
            ]
            for key in product(*[sorted(inst.allowed[v]) for v in bag]):
                if any(key[i] == key[j] for i, j in pairs):
                    continue
                tup = [0] * dim
                ok = True
                for v, c in zip(bag, key):
                    s = slot(v, c)
                    tup[s] += inst.weight[v]
                    if tup[s] > bounds[s]:
                        ok = False
                        break
                if not ok:
                    continue
                tup = tuple(tup)
                if maximize:
                    _store_max(table, key, tup, None, sum(inst.profit_of(v, c) for v, c in zip(bag, key)))
                else:
                    _store_decide(table, key, tup, None)

        elif kind == "introduce":
            child = dec.children[node][0]
            v = dec.vertex[node]
            pos = bag.index(v)
            child_bag = dec.bags[child]
            nbr_pos = [i for i, u in enumerate(child_bag) if u in adjacency[v]]
            w = inst.weight[v]
            for ckey in sorted(tables[child]):
                for ctup in sorted(tables[child][ckey]):
                    centry = tables[child][ckey][ctup]
                    for c in sorted(inst.allowed[v]):
                        if any(ckey[i] == c for i in nbr_pos):
                            continue
                        s = slot(v, c)
                        if ctup[s] + w > bounds[s]:
                            continue
                        tup = ctup[:s] + (ctup[s] + w,) + ctup[s + 1 :]
                        key = ckey[:pos] + (c,) + ckey[pos:]
                        pred = ("i", ckey, ctup)
                        if maximize:
                            _store_max(table, key, tup, pred, centry[0] + inst.profit_of(v, c))
                        else:
                            _store_decide(table, key, tup, pred)

        elif kind == "forget":
            child = dec.children[node][0]
            v = dec.vertex[node]
            pos = dec.bags[child].index(v)
            for ckey in sorted(tables[child]):
                key = ckey[:pos] + ckey[pos + 1 :]
                for ctup in sorted(tables[child][ckey]):
                    centry = tables[child][ckey][ctup]
                    pred = ("f", ckey, ctup)
                    if maximize:
                        _store_max(table, key, ctup, pred, centry[0])
                    else:
                        _store_decide(table, key, ctup, pred)

        else:  # join
            left, right = dec.children[node]
            lt, rt = tables[left], tables[right]
            for key in sorted(set(lt) & set(rt)):
                bag_w = [0] * dim
                for v, c in zip(bag, key):
                    bag_w[slot(v, c)] += inst.weight[v]
                bag_profit = sum(inst.profit_of(v, c) for v, c in zip(bag, key)) if maximize else 0
                for ta in sorted(lt[key]):
                    ea = lt[key][ta]
                    for tb in sorted(rt[key]):
                        eb = rt[key][tb]
                        assert all(a >= bw and b >= bw for a, b, bw in zip(ta, tb, bag_w))
                        tup = tuple(a + b - bw for a, b, bw in zip(ta, tb, bag_w))
                        if any(x > bound for x, bound in zip(tup, bounds)):
                            continue
                        pred = ("j", ta, tb)
                        if maximize:
                            _store_max(table, key, tup, pred, ea[0] + eb[0] - bag_profit)
                        else:
                            _store_decide(table, key, tup, pred)

        tables[node] = table
    return tables


def _trace(inst, dec, tables, root_key, root_tup, maximize, record):
    stack = [(dec.root, root_key, root_tup)]
    while stack:
        node, key, tup = stack.pop()
        record(node, key)
        entry = tables[node][key][tup]
        pred = entry[1] if maximize else entry
        if pred is None:
            continue
        tag = pred[0]
        if tag == "i":
            stack.append((dec.children[node][0], pred[1], pred[2]))
        elif tag == "f":
            stack.append((dec.children[node][0], pred[1], pred[2]))
        else:
            left, right = dec.children[node]
            stack.append((left, key, pred[1]))
            stack.append((right, key, pred[2]))


def dp_vertex(inst: ColoringInstance, dec: NiceDecomposition, objective: str = "decide") -> SolveOutcome:
    """Vertex-coloring DP over a nice decomposition; decide or maximize profit."""
    if inst.mode != "vertex":
        raise UsageError("dp_vertex: requires a vertex-mode instance")
    if objective not in ("decide", "maximize"):
        raise UsageError(f"dp_vertex: objective must be decide or maximize, got {objective!r}")
    maximize = objective == "maximize"
    if maximize and inst.profit is None:
        raise UsageError("dp_vertex: maximize requires a profit matrix")

    tables = _vertex_tables(inst, dec, maximize)
    target = inst.bounds_flat
    root_table = tables[dec.root]
    chosen_key = None
    best = None
    for key in sorted(root_table):
        if target in root_table[key]:
            if not maximize:
                chosen_key = key
                break
            profit = root_table[key][target][0]
            if best is None or profit > best:
                best = profit
                chosen_key = key
    if chosen_key is None:
        return SolveOutcome.infeasible_outcome()

    color_of = [0] * inst.n

    def record(node, key):
        for v, c in zip(dec.bags[node], key):
            color_of[v] = c

    _trace(inst, dec, tables, chosen_key, target, maximize, record)
    return SolveOutcome.feasible_from(inst, color_of)


# ---------------------------------------------------------------------------
# edge DP


def _bag_edge_ids(inst, bag):
    bag_set = set(bag)
    return tuple(
        idx for idx, (u, v) in enumerate(inst.edges) if u in bag_set and v in bag_set
    )


def _edge_tables(inst: ColoringInstance, dec: NiceDecomposition):
    bounds = inst.bounds_flat
    dim = len(bounds)
    tables: list[dict] = [None] * dec.size
    bag_edges = [_bag_edge_ids(inst, dec.bags[node]) for node in range(dec.size)]

    def slot(e, c):
        return inst.flat_index(inst.part_of[e], c)

    def share_vertex(e, f):
        a, b = inst.edges[e]
        return a in inst.edges[f] or b in inst.edges[f]

    for node in dec.post_order():
        kind = dec.kinds[node]
        ys = bag_edges[node]
        table: dict = {}

        if kind == "leaf":
            pairs = [
                (i, j)
                for i in range(len(ys))
                for j in range(i + 1, len(ys))
                if share_vertex(ys[i], ys[j])
            ]
            for key in product(*[sorted(inst.allowed[e]) for e in ys]):
                if any(key[i] == key[j] for i, j in pairs):
                    continue
                tup = [0] * dim
                ok = True
                for e, c in zip(ys, key):
                    s = slot(e, c)
                    tup[s] += inst.weight[e]
                    if tup[s] > bounds[s]:
                        ok = False
                        break
                if ok:
                    _store_decide(table, key, tuple(tup), None)

        elif kind == "introduce":
            child = dec.children[node][0]
            old = bag_edges[child]
            old_set = set(old)
            new = tuple(e for e in ys if e not in old_set)
            old_pos = {e: i for i, e in enumerate(old)}
            key_order = {e: i for i, e in enumerate(ys)}
            # conflicts of each new edge against old bag edges and other new edges
            old_conf = [[old_pos[f] for f in old if share_vertex(e, f)] for e in new]
            new_conf = [
                [j for j in range(i) if share_vertex(new[i], new[j])] for i in range(len(new))
            ]
            for ckey in sorted(tables[child]):
                for ctup in sorted(tables[child][ckey]):
                    for new_cols in product(*[sorted(inst.allowed[e]) for e in new]):
                        ok = True
                        for i, c in enumerate(new_cols):
                            if any(ckey[p] == c for p in old_conf[i]) or any(
                                new_cols[j] == c for j in new_conf[i]
                            ):
                                ok = False
                                break
                        if not ok:
                            continue
                        tup = list(ctup)
                        for e, c in zip(new, new_cols):
                            s = slot(e, c)
                            tup[s] += inst.weight[e]
                            if tup[s] > bounds[s]:
                                ok = False
                                break
                        if not ok:
                            continue
                        merged = {e: ckey[old_pos[e]] for e in old}
                        merged.update(dict(zip(new, new_cols)))
                        key = tuple(merged[e] for e in ys)
                        _store_decide(table, key, tuple(tup), ("i", ckey, ctup))

        elif kind == "forget":
            child = dec.children[node][0]
            old = bag_edges[child]
            ys_set = set(ys)
            keep_pos = [i for i, e in enumerate(old) if e in ys_set]
            for ckey in sorted(tables[child]):
                key = tuple(ckey[i] for i in keep_pos)
                for ctup in sorted(tables[child][ckey]):
                    _store_decide(table, key, ctup, ("f", ckey, ctup))

        else:  # join
            left, right = dec.children[node]
            lt, rt = tables[left], tables[right]
            for key in sorted(set(lt) & set(rt)):
                bag_w = [0] * dim
                for e, c in zip(ys, key):
                    bag_w[slot(e, c)] += inst.weight[e]
                for ta in sorted(lt[key]):
                    for tb in sorted(rt[key]):
                        assert all(a >= bw and b >= bw for a, b, bw in zip(ta, tb, bag_w))
                        tup = tuple(a + b - bw for a, b, bw in zip(ta, tb, bag_w))
                        if any(x > bound for x, bound in zip(tup, bounds)):
                            continue
                        _store_decide(table, key, tup, ("j", ta, tb))

        tables[node] = table
    return tables, bag_edges


def _check_conflicts_coresident(inst: ColoringInstance, dec: NiceDecomposition) -> None:
    bag_sets = [set(b) for b in dec.bags]
    for a, b in inst.conflict_pairs:
        span = set(inst.edges[a]) | set(inst.edges[b])
        if not any(span <= bag for bag in bag_sets):
            raise UsageError(
                "dp_edge: the decomposition never gathers adjacent edges "
                f"{inst.edges[a]} and {inst.edges[b]} into one bag; build one "
                "over the conflict closure (omit the supplied decomposition)"
            )


def dp_edge(inst: ColoringInstance, dec: NiceDecomposition) -> SolveOutcome:
    """Edge-coloring DP over a nice decomposition of the underlying graph.

    Conflicts are checked between co-resident bag edges, so the decomposition
    must gather every pair of adjacent edges into some bag;
    build_nice_decomposition does this for edge-mode instances.
    """
    if inst.mode != "edge":
        raise UsageError("dp_edge: requires an edge-mode instance")
    _check_conflicts_coresident(inst, dec)
    tables, bag_edges = _edge_tables(inst, dec)
    target = inst.bounds_flat
    root_table = tables[dec.root]
    chosen_key = None
    for key in sorted(root_table):
        if target in root_table[key]:
            chosen_key = key
            break
    if chosen_key is None:
        return SolveOutcome.infeasible_outcome()

    color_of = [0] * len(inst.edges)

    def record(node, key):
        for e, c in zip(bag_edges[node], key):
            color_of[e] = c

    _trace(inst, dec, tables, chosen_key, target, maximize=False, record=record)
    return SolveOutcome.feasible_from(inst, color_of)
