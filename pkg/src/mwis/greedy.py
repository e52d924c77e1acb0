"""
Greedy MWIS baselines (GWMIN, GWMAX, GWMIN2, WG) and their weight bounds.

Every argmax/argmin breaks ties toward the lowest vertex index.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import networkx as nx

from ..sat.instance import SatInstance
from ..sat.oracle import brute_force_max_sat
from ..utils.errors import QptlabError
from .graph import WeightedGraph, brute_force_mwis, reduce_to_mwis

logger = logging.getLogger(__name__)


class Algorithm(str, Enum):
    GWMIN = "GWMIN"
    GWMAX = "GWMAX"
    GWMIN2 = "GWMIN2"
    WG = "WG"


@dataclass
class GreedyResult:
    algorithm: Algorithm
    vertices: Tuple[int, ...]
    weight: float
    bound: float


def _weight(work: nx.Graph, v: int) -> float:
    return work.nodes[v]["weight"]


def _neighbor_weight(work: nx.Graph, v: int) -> float:
    return sum(_weight(work, u) for u in work.neighbors(v))


def _pick(candidates: Iterable[int], score: Callable[[int], float], largest: bool) -> int:
    best: Optional[int] = None
    best_score: Optional[float] = None
    for v in sorted(candidates):
        s = score(v)
        if best_score is None or (s > best_score if largest else s < best_score):
            best, best_score = v, s
    assert best is not None
    return best


def _select_and_cover(g: WeightedGraph, score: Callable[[nx.Graph, int], float], largest: bool,
                      drop_zero_weight: bool = False) -> List[int]:
    """Pick a vertex, keep it, delete its closed neighborhood; repeat until empty."""
    work = g.graph.copy()
    if drop_zero_weight:
        # weights never change, so one pass before the first selection suffices
        work.remove_nodes_from([v for v in list(work.nodes) if _weight(work, v) == 0])
    chosen = []
    while work.number_of_nodes():
        q = _pick(work.nodes, lambda v: score(work, v), largest)
        chosen.append(q)
        work.remove_nodes_from([q, *work.neighbors(q)])
    return chosen


def _gwmin_score(work: nx.Graph, v: int) -> float:
    return _weight(work, v) / (work.degree(v) + 1)


def _gwmin2_score(work: nx.Graph, v: int) -> float:
    closed = _weight(work, v) + _neighbor_weight(work, v)
    return 0.0 if closed == 0 else _weight(work, v) / closed


def _wg_score(work: nx.Graph, v: int) -> float:
    # only called on positive weights; zero-weight vertices are deleted up front
    return _neighbor_weight(work, v) / _weight(work, v)


def _gwmax_vertices(g: WeightedGraph) -> List[int]:
    work = g.graph.copy()
    while work.number_of_edges():
        candidates = [v for v in work.nodes if work.degree(v) >= 1]
        q = _pick(candidates, lambda v: _weight(work, v) / (work.degree(v) * (work.degree(v) + 1)), False)
        work.remove_node(q)
    return list(work.nodes)


def greedy_bounds(g: WeightedGraph) -> Dict[Algorithm, float]:
    """The closed-form guarantees, in weight units, evaluated on the input graph."""
    graph = g.graph
    total = g.total_weight()
    per_degree = sum(_weight(graph, v) / (graph.degree(v) + 1) for v in graph.nodes)
    gwmin2 = 0.0
    for v in graph.nodes:
        closed = _weight(graph, v) + _neighbor_weight(graph, v)
        if closed:
            gwmin2 += _weight(graph, v) ** 2 / closed
    if total:
        wg = total / (sum(_neighbor_weight(graph, v) for v in graph.nodes) / total + 1)
    else:
        wg = 0.0
    return {Algorithm.GWMIN: per_degree, Algorithm.GWMAX: per_degree, Algorithm.GWMIN2: gwmin2, Algorithm.WG: wg}


_RUNNERS = {
    Algorithm.GWMIN: lambda g: _select_and_cover(g, _gwmin_score, True),
    Algorithm.GWMAX: _gwmax_vertices,
    Algorithm.GWMIN2: lambda g: _select_and_cover(g, _gwmin2_score, True),
    Algorithm.WG: lambda g: _select_and_cover(g, _wg_score, False, drop_zero_weight=True),
}


def run_greedy(g: WeightedGraph, algorithm: Algorithm) -> GreedyResult:
    algorithm = Algorithm(algorithm)
    vertices = tuple(sorted(_RUNNERS[algorithm](g)))
    if not g.is_independent(vertices):
        raise QptlabError(f"{algorithm.value} returned a dependent set {vertices}")
    weight = g.total_weight(vertices)
    bound = greedy_bounds(g)[algorithm]
    if algorithm is not Algorithm.GWMAX and bound > weight + 1e-9:
        logger.warning(f"{algorithm.value}: weight {weight} below its bound {bound:.4f}")
    return GreedyResult(algorithm, vertices, weight, bound)


def gwmin(g: WeightedGraph) -> GreedyResult:
    return run_greedy(g, Algorithm.GWMIN)


def gwmax(g: WeightedGraph) -> GreedyResult:
    return run_greedy(g, Algorithm.GWMAX)


def gwmin2(g: WeightedGraph) -> GreedyResult:
    return run_greedy(g, Algorithm.GWMIN2)


def wg(g: WeightedGraph) -> GreedyResult:
    return run_greedy(g, Algorithm.WG)


@dataclass
class BestGreedy:
    best: GreedyResult
    optimum: float
    max_satisfied: int
    ratio_mwis: float
    ratio_max_sat: float
    approximation_error: float
    results: List[GreedyResult] = field(default_factory=list)


def best_greedy(inst: SatInstance) -> BestGreedy:
    """
    Heaviest of the four greedy sets on the reduced graph, against the exact
    MWIS weight and the brute-force maximum of satisfied clauses. An
    independent set satisfies exactly w(S) clauses, so ``approximation_error``
    counts the extra violated clauses, comparable to the QAOA figure.
    """
    g = reduce_to_mwis(inst)
    results = [run_greedy(g, a) for a in Algorithm]
    best = max(results, key=lambda r: r.weight)
    optimum = brute_force_mwis(g).weight
    max_satisfied = brute_force_max_sat(inst).max_satisfied
    ratio_mwis = 1.0 if optimum == 0 else best.weight / optimum
    ratio_max_sat = 1.0 if max_satisfied == 0 else best.weight / max_satisfied
    return BestGreedy(best, optimum, max_satisfied, ratio_mwis, ratio_max_sat,
                      max_satisfied - best.weight, results)
