"""Graph-class recognition used for solver auto-dispatch."""

from __future__ import annotations

from dataclasses import dataclass

from .cographs import is_cograph, is_complete, is_complete_bipartite
from .errors import UsageError
from .instance import ColoringInstance
from .split import is_split
from .treewidth import EXACT_WIDTH_LIMIT, exact_elimination_order, heuristic_width


@dataclass(frozen=True)
class ClassReport:
    edgeless: bool
    complete: bool
    complete_bipartite: bool
    split: bool
    cograph: bool
    treewidth: int
    treewidth_exact: bool


def classify_graph(n: int, edges) -> ClassReport:
    exact = n <= EXACT_WIDTH_LIMIT
    if exact:
        _, width = exact_elimination_order(n, edges)
    else:
        width = heuristic_width(n, edges)
    return ClassReport(
        edgeless=not edges,
        complete=is_complete(n, edges),
        complete_bipartite=is_complete_bipartite(n, edges),
        split=is_split(n, edges),
        cograph=is_cograph(n, edges),
        treewidth=width,
        treewidth_exact=exact,
    )


def classify_instance(inst: ColoringInstance) -> ClassReport:
    if inst.mode != "vertex":
        raise UsageError("classify_instance: requires a vertex-mode instance")
    return classify_graph(inst.n, inst.edges)
