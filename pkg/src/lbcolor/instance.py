"""Instance model and coloring validation for locally bounded list coloring.

An instance couples a graph with positive integer element weights, a
partition of the elements into parts, a per-element list of allowed colors,
and an exact weight target for every (part, color) pair: a coloring is valid
when it is proper, list-respecting, and the total weight of color c inside
part h equals bounds[h][c] for all h and c.

Elements are vertices in ``vertex`` mode and edges (by their position in the
``edges`` sequence) in ``edge`` mode.  Elements are 0-indexed internally;
colors and parts are 1-indexed everywhere, matching the file format.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import InstanceFormatError, UsageError

MODES = ("vertex", "edge")


@dataclass(frozen=True)
class RawDecomposition:
    """A tree decomposition as supplied in an instance document (not yet nice)."""

    bags: tuple[tuple[int, ...], ...]
    tree_edges: tuple[tuple[int, int], ...]
    root: int

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(tuple(b) for b in self.bags))
        object.__setattr__(self, "tree_edges", tuple(tuple(e) for e in self.tree_edges))


@dataclass(frozen=True)
class ColoringInstance:
    mode: str
    n: int
    edges: tuple[tuple[int, int], ...]
    k: int
    p: int
    part_of: tuple[int, ...]
    weight: tuple[int, ...]
    bounds: tuple[tuple[int, ...], ...]
    allowed: tuple[frozenset[int], ...]
    profit: tuple[tuple[int, ...], ...] | None = None
    decomposition: RawDecomposition | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise InstanceFormatError(f"mode: expected one of {MODES}, got {self.mode!r}")
        if not isinstance(self.n, int) or self.n < 0:
            raise InstanceFormatError(f"n: expected a non-negative integer, got {self.n!r}")
        if not isinstance(self.k, int) or self.k < 1:
            raise InstanceFormatError(f"k: expected a positive integer, got {self.k!r}")
        if not isinstance(self.p, int) or self.p < 1:
            raise InstanceFormatError(f"p: expected a positive integer, got {self.p!r}")

        edges = []
        seen = set()
        for pos, pair in enumerate(self.edges):
            u, v = pair
            if not (isinstance(u, int) and isinstance(v, int)):
                raise InstanceFormatError(f"edges[{pos}]: endpoints must be integers")
            if u == v:
                raise InstanceFormatError(f"edges[{pos}]: self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InstanceFormatError(f"edges[{pos}]: endpoint out of range 0..{self.n - 1}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise InstanceFormatError(f"edges[{pos}]: duplicate edge {e}")
            seen.add(e)
            edges.append(e)
        object.__setattr__(self, "edges", tuple(edges))

        m = self.n if self.mode == "vertex" else len(self.edges)
        for name, seq in (("part_of", self.part_of), ("weight", self.weight)):
            if len(seq) != m:
                raise InstanceFormatError(f"{name}: expected {m} entries, got {len(seq)}")
        if len(self.allowed) != m:
            raise InstanceFormatError(f"allowed: expected {m} entries, got {len(self.allowed)}")
        object.__setattr__(self, "part_of", tuple(self.part_of))
        object.__setattr__(self, "weight", tuple(self.weight))
        for e in range(m):
            h = self.part_of[e]
            if not isinstance(h, int) or not 1 <= h <= self.p:
                raise InstanceFormatError(f"part_of[{e}]: expected a part in 1..{self.p}, got {h!r}")
            w = self.weight[e]
            if not isinstance(w, int) or w < 1:
                raise InstanceFormatError(f"weight[{e}]: weights must be positive integers, got {w!r}")
        allowed = []
        for e, colors in enumerate(self.allowed):
            cols = frozenset(colors)
            if not cols:
                raise InstanceFormatError(f"allowed[{e}]: color list is empty")
            for c in cols:
                if not isinstance(c, int) or not 1 <= c <= self.k:
                    raise InstanceFormatError(f"allowed[{e}]: color {c!r} outside 1..{self.k}")
            allowed.append(cols)
        object.__setattr__(self, "allowed", tuple(allowed))

        if len(self.bounds) != self.p:
            raise InstanceFormatError(f"bounds: expected {self.p} rows, got {len(self.bounds)}")
        rows = []
        for h, row in enumerate(self.bounds, start=1):
            row = tuple(row)
            if len(row) != self.k:
                raise InstanceFormatError(f"bounds[{h}]: expected {self.k} entries, got {len(row)}")
            for c, b in enumerate(row, start=1):
                if not isinstance(b, int) or b < 0:
                    raise InstanceFormatError(f"bounds[{h}][{c}]: expected a non-negative integer, got {b!r}")
            rows.append(row)
        object.__setattr__(self, "bounds", tuple(rows))
        for h in range(1, self.p + 1):
            part_weight = sum(self.weight[e] for e in range(m) if self.part_of[e] == h)
            if part_weight != sum(self.bounds[h - 1]):
                raise InstanceFormatError(
                    f"bounds[{h}]: row sums to {sum(self.bounds[h - 1])} but part {h} "
                    f"carries total weight {part_weight}"
                )

        if self.profit is not None:
            if len(self.profit) != m:
                raise InstanceFormatError(f"profit: expected {m} rows, got {len(self.profit)}")
            prof = []
            for e, row in enumerate(self.profit):
                row = tuple(row)
                if len(row) != self.k or not all(isinstance(x, int) for x in row):
                    raise InstanceFormatError(f"profit[{e}]: expected {self.k} integers")
                prof.append(row)
            object.__setattr__(self, "profit", tuple(prof))

    @property
    def num_elements(self) -> int:
        return self.n if self.mode == "vertex" else len(self.edges)

    @property
    def unit_weights(self) -> bool:
        return all(w == 1 for w in self.weight)

    @property
    def full_lists(self) -> bool:
        return all(len(a) == self.k for a in self.allowed)

    def flat_index(self, h: int, c: int) -> int:
        """Position of (part h, color c), both 1-based, in a flattened p*k tuple."""
        return (h - 1) * self.k + (c - 1)

    @cached_property
    def bounds_flat(self) -> tuple[int, ...]:
        return tuple(b for row in self.bounds for b in row)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbr = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbr[u].add(v)
            nbr[v].add(u)
        return tuple(frozenset(s) for s in nbr)

    @cached_property
    def conflict_pairs(self) -> tuple[tuple[int, int], ...]:
        """Pairs of elements that must receive different colors."""
        if self.mode == "vertex":
            return self.edges
        incident = [[] for _ in range(self.n)]
        for idx, (u, v) in enumerate(self.edges):
            incident[u].append(idx)
            incident[v].append(idx)
        pairs = []
        for ids in incident:
            for a in range(len(ids)):
                for b in range(a + 1, len(ids)):
                    pairs.append((ids[a], ids[b]))
        return tuple(pairs)

    def profit_of(self, element: int, color: int) -> int:
        return self.profit[element][color - 1] if self.profit is not None else 0


@dataclass(frozen=True)
class Coloring:
    """A total assignment of one color (1..k) to every element."""

    color_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "color_of", tuple(self.color_of))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violation: str | None = None


@dataclass(frozen=True)
class SolveOutcome:
    status: str  # "feasible" | "infeasible"
    witness: Coloring | None = None
    objective: int | None = None

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"

    @staticmethod
    def infeasible_outcome() -> "SolveOutcome":
        return SolveOutcome(status="infeasible")

    @staticmethod
    def feasible_from(inst: ColoringInstance, color_of) -> "SolveOutcome":
        col = Coloring(tuple(color_of))
        objective = None
        if inst.profit is not None:
            objective = sum(inst.profit_of(e, col.color_of[e]) for e in range(inst.num_elements))
        return SolveOutcome(status="feasible", witness=col, objective=objective)


def validate_coloring(inst: ColoringInstance, col: Coloring) -> ValidationReport:
    """Check a coloring against an instance.

    Returns a report whose ``violation`` names the first failed condition:
    properness, then list membership, then the exact per-part weight bounds.
    A coloring over the wrong element set raises UsageError instead, since
    that is a structural mismatch rather than an invalid coloring.
    """
    m = inst.num_elements
    if len(col.color_of) != m:
        raise UsageError(f"coloring assigns {len(col.color_of)} elements, instance has {m}")
    for e, c in enumerate(col.color_of):
        if not isinstance(c, int):
            raise UsageError(f"coloring entry {e} is not an integer color")

    for a, b in inst.conflict_pairs:
        if col.color_of[a] == col.color_of[b]:
            what = "adjacent vertices" if inst.mode == "vertex" else "edges sharing a vertex"
            return ValidationReport(False, f"properness: {what} {a} and {b} both have color {col.color_of[a]}")
    for e in range(m):
        if col.color_of[e] not in inst.allowed[e]:
            return ValidationReport(
                False, f"list: element {e} has color {col.color_of[e]}, allowed {sorted(inst.allowed[e])}"
            )
    tally = [0] * (inst.p * inst.k)
    for e in range(m):
        tally[inst.flat_index(inst.part_of[e], col.color_of[e])] += inst.weight[e]
    for h in range(1, inst.p + 1):
        for c in range(1, inst.k + 1):
            got = tally[inst.flat_index(h, c)]
            want = inst.bounds[h - 1][c - 1]
            if got != want:
                return ValidationReport(
                    False, f"bounds: part {h} color {c} carries weight {got}, required {want}"
                )
    return ValidationReport(True, None)
