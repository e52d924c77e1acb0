"""Tests for instances, generation, oracles, seeds and DIMACS I/O."""

from collections import Counter
from math import sqrt

import numpy as np
import pytest

from src.hamiltonian.cost import build_cost_hamiltonian
from src.sat.dimacs import format_dimacs, parse_dimacs, read_dimacs, write_dimacs
from src.sat.instance import (
    Assignment,
    Clause,
    Mode,
    SatInstance,
    clauses_for_ratio,
    count_violations,
    generate_instance,
    violation_vector,
)
from src.sat.oracle import brute_force_max_sat, crossing_ratio, is_satisfiable, sat_probability
from src.sat.rng import SplitMix64, derive_seed
from src.utils.errors import CapacityError, DimacsParseError, DimensionError, InvalidDimensionError


class TestDeriveSeed:
    def test_golden_value(self):
        assert derive_seed(0, 0, 0) == 0xE220A8397B1DCDAF

    def test_matches_first_splitmix_output(self):
        assert derive_seed(42, 0, 0) == SplitMix64(42).next_u64()

    def test_distinct_over_repetitions(self):
        seeds = {derive_seed(5, 3, r) for r in range(100000)}
        assert len(seeds) == 100000

    def test_distinct_over_grid(self):
        seeds = {derive_seed(9, i, r) for i in range(1000) for r in range(20)}
        assert len(seeds) == 20000

    def test_rejects_out_of_range_index(self):
        with pytest.raises(ValueError):
            derive_seed(0, -1, 0)
        with pytest.raises(ValueError):
            derive_seed(0, 0, 1 << 32)


class TestSplitMix64:
    def test_below_stays_in_range(self):
        stream = SplitMix64(1)
        assert all(0 <= stream.below(7) < 7 for _ in range(1000))

    def test_sample_distinct_is_sorted_and_distinct(self):
        stream = SplitMix64(2)
        for _ in range(200):
            picked = stream.sample_distinct(5, 3)
            assert list(picked) == sorted(set(picked))
            assert len(picked) == 3


class TestClause:
    def test_of_sorts_literals(self):
        clause = Clause.of([(2, -1), (0, 1)])
        assert clause.variables == (0, 2)
        assert clause.signs == (1, -1)

    def test_rejects_repeated_variable(self):
        with pytest.raises(InvalidDimensionError):
            Clause((1, 1), (1, 1))

    def test_rejects_negative_variable(self):
        with pytest.raises(InvalidDimensionError):
            Clause((-1, 2), (1, 1))
        with pytest.raises(InvalidDimensionError):
            SatInstance(n=3, k=2, mode=Mode.KSAT, clauses=(Clause.of([(-2, 1), (0, 1)]),))

    def test_one_in_k_semantics(self):
        clause = Clause((0, 1, 2), (1, 1, 1))
        assert clause.is_satisfied([True, False, False], Mode.ONE_IN_K)
        assert not clause.is_satisfied([True, True, False], Mode.ONE_IN_K)
        assert not clause.is_satisfied([False, False, False], Mode.ONE_IN_K)


class TestGenerateInstance:
    def test_deterministic_for_seed(self):
        a = generate_instance(10, 30, 3, Mode.KSAT, seed=123)
        b = generate_instance(10, 30, 3, Mode.KSAT, seed=123)
        assert a.clauses == b.clauses

    def test_different_seeds_differ(self):
        a = generate_instance(10, 30, 3, Mode.KSAT, seed=1)
        b = generate_instance(10, 30, 3, Mode.KSAT, seed=2)
        assert a.clauses != b.clauses

    def test_one_in_k_literals_positive(self):
        inst = generate_instance(8, 20, 3, Mode.ONE_IN_K, seed=4)
        assert all(s == 1 for clause in inst.clauses for s in clause.signs)

    def test_zero_clauses(self):
        inst = generate_instance(4, 0, 3, Mode.KSAT, seed=0)
        assert inst.m == 0
        assert is_satisfiable(inst)

    def test_rejects_n_below_k(self):
        with pytest.raises(InvalidDimensionError):
            generate_instance(2, 1, 3, Mode.KSAT, seed=0)

    def test_reject_duplicates(self):
        inst = generate_instance(4, 4, 3, Mode.ONE_IN_K, seed=0, reject_duplicates=True)
        assert len(set(inst.clauses)) == 4

    def test_reject_duplicates_capacity(self):
        with pytest.raises(CapacityError):
            generate_instance(3, 2, 3, Mode.ONE_IN_K, seed=0, reject_duplicates=True)

    def test_clauses_for_ratio(self):
        assert clauses_for_ratio(10, 4.26) == 43
        assert clauses_for_ratio(10, 0.0) == 0

    def test_pair_cooccurrence_is_uniform(self):
        inst = generate_instance(10, 5000, 2, Mode.ONE_IN_K, seed=2024)
        counts = Counter(clause.variables for clause in inst.clauses)
        assert len(counts) == 45
        expected = 1 / 45
        stderr = sqrt(expected * (1 - expected) / inst.m)
        # 45 pairs checked at once
        for pair, count in counts.items():
            assert abs(count / inst.m - expected) <= 3.5 * stderr, pair
        assert abs(counts[(0, 1)] / inst.m - expected) <= 3 * stderr

    def test_prefix_property(self):
        short = generate_instance(8, 10, 3, Mode.KSAT, seed=31)
        long = generate_instance(8, 25, 3, Mode.KSAT, seed=31)
        assert long.clauses[:10] == short.clauses


class TestViolations:
    def test_vector_matches_assignment_count(self, small_3sat):
        vector = violation_vector(small_3sat)
        for index in range(0, 1 << small_3sat.n, 5):
            assert vector[index] == count_violations(small_3sat, Assignment.from_index(index, small_3sat.n))

    def test_assignment_length_checked(self, single_3sat):
        with pytest.raises(DimensionError):
            count_violations(single_3sat, Assignment((True,)))

    def test_assignment_index_round_trip(self):
        assert Assignment.from_index(5, 4).bits == (True, False, True, False)
        assert Assignment((True, False, True, False)).to_index() == 5


class TestOracle:
    def test_unsat_2sat(self, unsat_2sat):
        result = brute_force_max_sat(unsat_2sat)
        assert result.max_satisfied == 3
        assert result.ground_degeneracy == 4
        assert not is_satisfiable(unsat_2sat)

    def test_single_clause_degeneracy(self, single_3sat):
        result = brute_force_max_sat(single_3sat)
        assert result.max_satisfied == 1
        assert result.ground_degeneracy == 7

    def test_sat_probability_ratio_zero(self):
        curve = sat_probability(6, 3, Mode.KSAT, [0.0], 10, seed=0)
        assert curve[0].probability == 1.0
        assert curve[0].stderr == 0.0
        assert len(curve[0].seeds) == 10

    def test_sat_probability_decreases(self):
        curve = sat_probability(6, 2, Mode.ONE_IN_K, [0.2, 3.0], 30, seed=1)
        assert curve[0].probability > curve[1].probability

    def test_crossing_ratio_interpolates(self):
        curve = sat_probability(6, 2, Mode.ONE_IN_K, [0.0, 4.0], 20, seed=2)
        crossing = crossing_ratio(curve)
        assert 0.0 <= crossing <= 4.0

    @pytest.mark.parametrize("n", [3, 6, 9, 12])
    @pytest.mark.parametrize("k, mode, ratio", [(2, Mode.KSAT, 1.5), (3, Mode.KSAT, 4.0), (2, Mode.ONE_IN_K, 0.6),
                                             (3, Mode.ONE_IN_K, 0.7)])
    def test_satisfiable_iff_some_assignment_violates_nothing(self, n, k, mode, ratio):
        for j in range(3):
            inst = generate_instance(n, clauses_for_ratio(n, ratio), k, mode, seed=derive_seed(n, j, 0))
            least = min(count_violations(inst, Assignment.from_index(x, n)) for x in range(1 << n))
            assert is_satisfiable(inst) == (least == 0)
            assert is_satisfiable(inst) == (build_cost_hamiltonian(inst).ground_energy == 0)

    def test_adding_clauses_never_restores_satisfiability(self):
        for j in range(10):
            previous = True
            for m in range(0, 40, 4):
                current = is_satisfiable(generate_instance(7, m, 3, Mode.KSAT, seed=derive_seed(3, j, 0)))
                assert previous or not current
                previous = current

    @pytest.mark.parametrize("k, mode, grid", [
        (3, Mode.KSAT, [1.0, 3.0, 4.0, 5.0, 6.0, 8.0]),
        (2, Mode.ONE_IN_K, [0.2, 0.4, 0.6, 0.8, 1.0, 1.5]),
    ])
    def test_sat_probability_non_increasing(self, k, mode, grid):
        curve = sat_probability(8, k, mode, grid, 40, seed=5)
        for left, right in zip(curve, curve[1:]):
            slack = 3 * sqrt(left.stderr ** 2 + right.stderr ** 2) + 1 / left.count
            assert right.probability <= left.probability + slack


@pytest.mark.slow
@pytest.mark.parametrize("k, mode, low, high, grid", [
    (3, Mode.KSAT, 3.3, 5.3, np.arange(1.0, 8.01, 0.5)),
    (2, Mode.ONE_IN_K, 0.35, 0.8, np.arange(0.1, 1.51, 0.1)),
])
def test_sat_unsat_crossing(k, mode, low, high, grid):
    curve = sat_probability(10, k, mode, [round(float(r), 6) for r in grid], 100, seed=0)
    assert low <= crossing_ratio(curve) <= high


class TestDimacs:
    def test_round_trip_ksat(self, small_3sat):
        parsed = parse_dimacs(format_dimacs(small_3sat))
        assert parsed == small_3sat

    def test_round_trip_one_in_k_file(self, small_oneinthree, tmp_path):
        path = write_dimacs(small_oneinthree, tmp_path / "inst.cnf")
        assert read_dimacs(path) == small_oneinthree

    def test_empty_instance_keeps_k(self):
        inst = SatInstance(n=4, k=2, mode=Mode.KSAT, clauses=())
        assert parse_dimacs(format_dimacs(inst)).k == 2

    def test_missing_header(self):
        with pytest.raises(DimacsParseError) as excinfo:
            parse_dimacs("1 2 3 0\n")
        assert excinfo.value.line_number == 1

    def test_literal_out_of_range(self):
        with pytest.raises(DimacsParseError) as excinfo:
            parse_dimacs("p cnf 3 1\n1 2 4 0\n")
        assert excinfo.value.line_number == 2

    def test_clause_count_mismatch(self):
        with pytest.raises(DimacsParseError):
            parse_dimacs("p cnf 3 2\n1 2 3 0\n")

    def test_negative_literal_in_one_in_k(self):
        with pytest.raises(DimacsParseError):
            parse_dimacs("c mode one-in-k\np cnf 3 1\n1 -2 3 0\n")

    def test_non_integer_token(self):
        with pytest.raises(DimacsParseError):
            parse_dimacs("p cnf 3 1\n1 x 3 0\n")
