"""
Maximum weighted independent set reduction and greedy baselines.
"""

from .graph import (
    WeightedGraph,
    MwisResult,
    reduce_to_mwis,
    brute_force_mwis,
    read_graph,
    write_graph,
    parse_graph,
    format_graph,
)
from .greedy import (
    Algorithm,
    GreedyResult,
    BestGreedy,
    gwmin,
    gwmax,
    gwmin2,
    wg,
    run_greedy,
    greedy_bounds,
    best_greedy,
)

__all__ = [
    'WeightedGraph',
    'MwisResult',
    'reduce_to_mwis',
    'brute_force_mwis',
    'read_graph',
    'write_graph',
    'parse_graph',
    'format_graph',
    'Algorithm',
    'GreedyResult',
    'BestGreedy',
    'gwmin',
    'gwmax',
    'gwmin2',
    'wg',
    'run_greedy',
    'greedy_bounds',
    'best_greedy',
]
