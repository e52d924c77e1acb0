"""
Vertex-weighted graphs, the 1-in-k+ reduction and the line file format.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, NamedTuple, Optional, Tuple, Union

import networkx as nx
import numpy as np

from ..sat.instance import Mode, SatInstance
from ..utils.errors import CapacityError, GraphFormatError, WrongModeError

logger = logging.getLogger(__name__)

BRUTE_FORCE_LIMIT = 20


@dataclass
class WeightedGraph:
    """Undirected graph with a non-negative ``weight`` attribute on every vertex."""

    graph: nx.Graph

    @classmethod
    def build(cls, weights: Iterable[float], edges: Iterable[Tuple[int, int]] = ()) -> "WeightedGraph":
        g = nx.Graph()
        for v, w in enumerate(weights):
            if w < 0:
                raise ValueError(f"vertex {v} has negative weight {w}")
            g.add_node(v, weight=w)
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop on vertex {a}")
            if a not in g or b not in g:
                raise ValueError(f"edge ({a}, {b}) references an unknown vertex")
            g.add_edge(a, b)
        return cls(g)

    @property
    def n(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def vertices(self) -> List[int]:
        return sorted(self.graph.nodes)

    def weight(self, v: int) -> float:
        return self.graph.nodes[v]["weight"]

    def total_weight(self, vertices: Optional[Iterable[int]] = None) -> float:
        if vertices is None:
            vertices = self.graph.nodes
        return sum(self.weight(v) for v in vertices)

    def edges(self) -> List[Tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.graph.edges)

    def is_independent(self, vertices: Iterable[int]) -> bool:
        chosen = set(vertices)
        return not any(a in chosen and b in chosen for a, b in self.graph.edges)


def reduce_to_mwis(inst: SatInstance) -> WeightedGraph:
    """Weights are occurrence counts; an edge joins every pair sharing a clause."""
    if inst.mode is not Mode.ONE_IN_K:
        raise WrongModeError("the MWIS reduction is defined for 1-in-k+ instances only")
    occ = [0] * inst.n
    edges = set()
    for clause in inst.clauses:
        for v in clause.variables:
            occ[v] += 1
        vs = clause.variables
        edges.update((vs[a], vs[b]) for a in range(len(vs)) for b in range(a + 1, len(vs)))
    return WeightedGraph.build(occ, sorted(edges))


class MwisResult(NamedTuple):
    weight: float
    vertices: Tuple[int, ...]


def brute_force_mwis(g: WeightedGraph) -> MwisResult:
    """Exact maximum-weight independent set over all vertex subsets."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise CapacityError("brute-force MWIS vertices", g.n, BRUTE_FORCE_LIMIT)
    order = g.vertices
    position = {v: i for i, v in enumerate(order)}
    masks = np.arange(1 << g.n, dtype=np.int64)
    ok = np.ones(masks.shape[0], dtype=bool)
    for a, b in g.edges():
        ok &= ((masks >> position[a]) & (masks >> position[b]) & 1) == 0
    totals = np.zeros(masks.shape[0], dtype=np.float64)
    for i, v in enumerate(order):
        totals += g.weight(v) * ((masks >> i) & 1)
    totals[~ok] = -np.inf
    best = int(np.argmax(totals))
    return MwisResult(float(totals[best]), tuple(v for i, v in enumerate(order) if (best >> i) & 1))


def format_graph(g: WeightedGraph) -> str:
    lines = [f"v {v} {g.weight(v):g}" for v in g.vertices]
    lines.extend(f"e {a} {b}" for a, b in g.edges())
    return "\n".join(lines) + "\n"


def write_graph(g: WeightedGraph, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(format_graph(g), encoding="utf-8")
    return path


def parse_graph(text: str) -> WeightedGraph:
    """``v <id> <weight>`` and ``e <id> <id>`` lines; ``#`` starts a comment."""
    g = nx.Graph()
    for line_number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        kind, args = tokens[0], tokens[1:]
        try:
            if kind == "v" and len(args) == 2:
                v, w = int(args[0]), float(args[1])
                if v in g:
                    raise GraphFormatError(f"duplicate vertex {v}", line_number)
                if w < 0:
                    raise GraphFormatError(f"negative weight {w}", line_number)
                g.add_node(v, weight=w)
            elif kind == "e" and len(args) == 2:
                a, b = int(args[0]), int(args[1])
                if a == b:
                    raise GraphFormatError(f"self-loop on vertex {a}", line_number)
                if a not in g or b not in g:
                    raise GraphFormatError(f"edge ({a}, {b}) before its vertices", line_number)
                g.add_edge(a, b)
            else:
                raise GraphFormatError(f"unrecognized line {raw.strip()!r}", line_number)
        except ValueError as e:
            raise GraphFormatError(f"bad number in {raw.strip()!r}", line_number) from e
    return WeightedGraph(g)


def read_graph(path: Union[str, Path]) -> WeightedGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))
