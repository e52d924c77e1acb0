"""Tests for Pauli algebra, exact Lie closure and DLA scans."""

from fractions import Fraction

import numpy as np
import pytest

from src.dla.closure import commutator, dim_upper_bound, lie_closure, lower_expectation_report
from src.dla.generators import (
    dla_scan,
    instance_closure,
    mixer_element,
    qaoa_generators,
    rank_correlation,
    symmetric_dimension,
    symmetric_generators,
    terms_element,
)
from src.dla.pauli import PauliElement, PauliString, parse_element, read_generator_file
from src.hamiltonian.cost import SymmetricVariant, build_cost_hamiltonian
from src.qaoa.gradient_scan import grad_sd_scan
from src.sat.instance import Mode, clauses_for_ratio, generate_instance
from src.sat.rng import derive_seed
from src.utils.errors import CapacityError, ConfigError, DimensionError, GeneratorParseError

_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


def _dense(element: PauliElement) -> np.ndarray:
    out = np.zeros((2 ** element.n, 2 ** element.n), dtype=complex)
    for pauli, coeff in element.terms.items():
        mat = np.array([[1.0 + 0j]])
        for char in pauli.label():
            mat = np.kron(_MATS[char], mat)
        out += float(coeff) * mat
    return out


def _dense_closure_dim(generators) -> int:
    """Brute-force span of nested commutators of i*G as real vectors."""

    basis, ortho = [], []

    def add(m) -> bool:
        v = np.concatenate([m.real.ravel(), m.imag.ravel()])
        scale = np.linalg.norm(v)
        if scale < 1e-12:
            return False
        v = v / scale
        for _ in range(2):
            for q in ortho:
                v = v - (q @ v) * q
        if np.linalg.norm(v) < 1e-8:
            return False
        ortho.append(v / np.linalg.norm(v))
        basis.append(m / scale)
        return True

    for g in generators:
        add(1j * _dense(g.traceless()))
    grew = True
    while grew:
        grew = False
        for a in list(basis):
            for b in list(basis):
                if add(a @ b - b @ a):
                    grew = True
    return len(basis)


class TestPauliString:
    def test_label_round_trip(self):
        assert PauliString.from_label("XYZI").label() == "XYZI"

    def test_products(self):
        e, r = PauliString.from_label("X").product(PauliString.from_label("Y"))
        assert (e, r.label()) == (1, "Z")
        e, r = PauliString.from_label("Y").product(PauliString.from_label("X"))
        assert (e, r.label()) == (3, "Z")

    def test_commutation(self):
        xx, zz = PauliString.from_label("XX"), PauliString.from_label("ZZ")
        assert xx.commutes_with(zz)
        assert not PauliString.from_label("XI").commutes_with(zz)

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            PauliString.from_label("X").product(PauliString.from_label("XX"))

    def test_unknown_character(self):
        with pytest.raises(ValueError):
            PauliString.from_label("XQ")


class TestPauliElement:
    def test_commutator_xy(self):
        c = commutator(PauliElement.from_labels([(1, "X")]), PauliElement.from_labels([(1, "Y")]))
        assert c == PauliElement.from_labels([(2, "Z")])

    def test_commutator_of_commuting_terms_is_zero(self):
        assert commutator(PauliElement.from_labels([(1, "ZZ")]), PauliElement.from_labels([(3, "XX")])).is_zero()

    def test_traceless_drops_identity(self):
        element = PauliElement.from_labels([(1, "II"), (2, "XZ")])
        assert element.traceless() == PauliElement.from_labels([(2, "XZ")])

    def test_cancellation(self):
        element = PauliElement.from_labels([(1, "XI"), (-1, "XI")])
        assert element.is_zero()

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_commutator_matches_dense_matrices(self, n):
        mixer = mixer_element(n)
        couplings = PauliElement(n, {
            PauliString(0, (1 << i) | (1 << j), n): 1 for i in range(n) for j in range(i + 1, n)
        })
        a, b = _dense(mixer), _dense(couplings)
        np.testing.assert_allclose(a @ b - b @ a, 1j * _dense(commutator(mixer, couplings)), atol=1e-12)


class TestGeneratorParsing:
    def test_parse_element(self):
        element = parse_element("3/2 * XIZ + -1 * ZZI")
        assert element.terms == {
            PauliString.from_label("XIZ"): Fraction(3, 2),
            PauliString.from_label("ZZI"): Fraction(-1),
        }

    def test_bad_term(self):
        with pytest.raises(GeneratorParseError):
            parse_element("3 XIZ", line_number=4)

    def test_mixed_lengths(self):
        with pytest.raises(GeneratorParseError):
            parse_element("1 * XI + 1 * Z")

    def test_read_file_skips_comments(self, tmp_path):
        path = tmp_path / "gens.txt"
        path.write_text("# mixer\n1 * XI + 1 * IX\n\n1/2 * ZZ  # cost\n")
        elements = read_generator_file(path)
        assert len(elements) == 2
        assert elements[1] == PauliElement.from_labels([(Fraction(1, 2), "ZZ")])

    def test_read_file_reports_line(self, tmp_path):
        path = tmp_path / "gens.txt"
        path.write_text("1 * XX\nnonsense\n")
        with pytest.raises(GeneratorParseError) as excinfo:
            read_generator_file(path)
        assert excinfo.value.line_number == 2


class TestLieClosure:
    def test_su2(self):
        closure = lie_closure([PauliElement.from_labels([(1, "X")]), PauliElement.from_labels([(1, "Z")])])
        assert closure.dim == 3
        assert not closure.truncated

    def test_truncation(self):
        closure = lie_closure([PauliElement.from_labels([(1, "X")]), PauliElement.from_labels([(1, "Z")])], max_dim=2)
        assert closure.truncated
        assert closure.dim == 2

    def test_identity_only_generator(self):
        closure = lie_closure([PauliElement.from_labels([(1, "II")]), PauliElement.from_labels([(1, "XI")])])
        assert closure.dim == 1

    def test_unknown_method(self):
        with pytest.raises(ConfigError):
            lie_closure([PauliElement.from_labels([(1, "X")])], method="floats")

    def test_empty(self):
        with pytest.raises(ConfigError):
            lie_closure([])

    @pytest.mark.parametrize("seed", range(4))
    def test_matches_dense_oracle(self, seed):
        inst = generate_instance(3, 2, 2, Mode.KSAT, seed=seed)
        gens = [g for g in qaoa_generators(build_cost_hamiltonian(inst)) if not g.is_zero()]
        assert lie_closure(gens, method="rational").dim == _dense_closure_dim(gens)

    @pytest.mark.parametrize("k, mode, m", [(2, Mode.ONE_IN_K, 4), (3, Mode.KSAT, 6)])
    def test_backends_agree(self, k, mode, m):
        ham = build_cost_hamiltonian(generate_instance(4, m, k, mode, seed=derive_seed(8, m, 0)))
        assert instance_closure(ham, "rational").dim == instance_closure(ham, "modular").dim

    @pytest.mark.parametrize("factors", [(Fraction(7, 3), Fraction(1)), (Fraction(1), Fraction(-5)),
                                         (Fraction(-1, 4), Fraction(9, 2))])
    def test_dimension_ignores_generator_scaling(self, factors):
        ham = build_cost_hamiltonian(generate_instance(4, 5, 3, Mode.KSAT, seed=derive_seed(9, 0, 0)))
        hc, hb = qaoa_generators(ham)
        scaled = [hc.scaled(factors[0]), hb.scaled(factors[1])]
        assert lie_closure(scaled, method="rational").dim == lie_closure([hc, hb], method="rational").dim


class TestGenerators:
    def test_terms_element_single_clause(self, single_oneintwo):
        element = terms_element(build_cost_hamiltonian(single_oneintwo).terms)
        assert element == PauliElement.from_labels([(Fraction(1, 2), "ZZ")])

    def test_mixer(self):
        assert mixer_element(3) == PauliElement.from_labels([(1, "XII"), (1, "IXI"), (1, "IIX")])

    def test_symmetric_oneintwo_generators(self):
        hc, hb = symmetric_generators(3, SymmetricVariant.ONE_IN_TWO)
        half = Fraction(1, 2)
        assert hc == PauliElement.from_labels([(half, "ZZI"), (half, "ZIZ"), (half, "IZZ")])
        assert hb == mixer_element(3)

    def test_upper_bound(self):
        assert dim_upper_bound(1) == 3
        assert dim_upper_bound(6) == 83

    @pytest.mark.parametrize("n", [4, 5, 6])
    @pytest.mark.parametrize("variant", list(SymmetricVariant))
    def test_symmetric_dimension_bounded(self, n, variant):
        assert symmetric_dimension(n, variant) <= dim_upper_bound(n)

    def test_lower_expectation_reports_only(self):
        assert lower_expectation_report(16, 4)
        assert not lower_expectation_report(3, 4)


class TestDlaScan:
    def test_no_clauses_leaves_the_mixer_alone(self):
        points = dla_scan(4, 3, Mode.KSAT, [0.0], 2, seed=0)
        assert points[0].m == 0
        assert points[0].dims == [1, 1]

    def test_capacity_guard(self):
        with pytest.raises(CapacityError):
            dla_scan(8, 3, Mode.KSAT, [1.0], 1, seed=0)

    def test_reproduces_instances(self):
        points = dla_scan(4, 2, Mode.ONE_IN_K, [0.5, 1.0], 2, seed=6)
        assert len(points) == 2
        m = clauses_for_ratio(4, 1.0)
        inst = generate_instance(4, m, 2, Mode.ONE_IN_K, derive_seed(6, 1 * 2 + 1, 0))
        assert points[1].dims[1] == instance_closure(build_cost_hamiltonian(inst)).dim


class TestRankCorrelation:
    def test_monotone(self):
        assert rank_correlation([1, 2, 3, 4], [2, 4, 9, 10]) == pytest.approx(1.0)
        assert rank_correlation([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)

    def test_constant_series(self):
        assert np.isnan(rank_correlation([1, 1, 1], [1, 2, 3]))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            rank_correlation([1, 2], [1])


@pytest.mark.slow
def test_dimension_tracks_inverse_gradient_sd():
    grid = [0.2, 0.4, 0.6, 0.8, 1.0, 1.4, 2.0]
    dims = dla_scan(6, 3, Mode.ONE_IN_K, grid, 5, seed=11)
    sds = grad_sd_scan(6, 3, Mode.ONE_IN_K, grid, 12, 5, 100, seed=11)
    rho = rank_correlation([pt.mean_dim for pt in dims], [pt.mean_inverse_sd for pt in sds])
    assert rho > 0.5
