from fractions import Fraction

import pytest

from planarpd.jacobi import EXAMPLE_FACTORS, EXAMPLE_MATRIX, Kind, asc, desc, diag, factors_product
from planarpd.network import (
    Chip,
    PlanarNetwork,
    ShapeError,
    chip_from_factor,
    chip_matrix,
    essential_tp_network,
    is_ldu_shape,
    line_weights,
    minor_lgv,
    network_from_factors,
    network_to_dot,
    path_families,
    path_weight,
    pd_check_network,
    staircase_word,
    weight_matrix,
)
from planarpd.numeric import ONE, ZERO, GaussianRational as G, Matrix, Reason, all_minors, leading_principal_minors, minor

from helpers import lettered_closed_form, lettered_network, index_sets, oracle_minor, rand_network, rand_pos_q

I_ = G(0, 1)


class TestChips:
    def test_ascending(self):
        c = chip_from_factor(asc(1, 5))
        assert (c.kind, c.level, c.weight) == (Kind.ASC, 1, 5)
        assert (1, 2, 5) in c.edges(2)

    def test_generalized_diagonal(self):
        c = chip_from_factor(diag(2, 0))
        assert chip_matrix(c, 2) == Matrix([[1, 0], [0, 0]])
        assert (2, 2, 0) in c.edges(2)

    def test_descending(self):
        c = chip_from_factor(desc(2, -1))
        assert (3, 2, -1) in c.edges(3)
        assert chip_matrix(c, 3) == Matrix([[1, 0, 0], [0, 1, 0], [0, -1, 1]])

    def test_level_checked_by_network(self):
        with pytest.raises(ValueError):
            PlanarNetwork(2, (Chip(Kind.ASC, 2, 1),))

    def test_single_chip_weight_matrix(self, rng):
        for n in range(1, 5):
            for c in rand_network(rng, n, 6).chips:
                assert weight_matrix(PlanarNetwork(n, (c,))) == chip_matrix(c, n)


class TestWeightMatrix:
    def test_lettered_ones(self):
        assert weight_matrix(lettered_network(*[1] * 9)) == Matrix([[1, 1, 1], [1, 2, 3], [1, 3, 6]])

    def test_lettered_symbolic_form(self, rng):
        w = [G(rand_pos_q(rng)) for _ in range(9)]
        assert weight_matrix(lettered_network(*w)) == lettered_closed_form(*w)

    def test_identity(self):
        assert weight_matrix(PlanarNetwork(3)) == Matrix.identity(3)
        assert network_from_factors([], 4) == PlanarNetwork(4)

    def test_example_network(self):
        net = network_from_factors(EXAMPLE_FACTORS, 3)
        assert net.width == 12
        assert weight_matrix(net) == EXAMPLE_MATRIX

    def test_concatenation_homomorphism(self, rng):
        for _ in range(30):
            n = rng.randint(1, 4)
            net = rand_network(rng, n, rng.randint(0, 10))
            assert weight_matrix(net) == factors_product(net.factors(), n)

    def test_zero_weights_kill_paths(self):
        net = PlanarNetwork(2, (Chip(Kind.DIAG, 1, 0), Chip(Kind.ASC, 1, 3)))
        assert weight_matrix(net) == Matrix([[0, 0], [0, 1]])


class TestLGV:
    def test_identity(self):
        net = PlanarNetwork(3)
        for I, J in index_sets(3):
            assert minor_lgv(net, I, J) == (1 if I == J else 0)

    def test_example_leading(self):
        net = network_from_factors(EXAMPLE_FACTORS, 3)
        assert minor_lgv(net, [1, 2], [1, 2]) == 2
        assert minor_lgv(net, [1, 2, 3], [1, 2, 3]) == 4

    def test_random_networks(self, rng):
        for _ in range(15):
            n = rng.randint(1, 4)
            net = rand_network(rng, n, rng.randint(0, 10))
            W = weight_matrix(net)
            for I, J in index_sets(n):
                assert minor_lgv(net, I, J) == oracle_minor(W, I, J)

    def test_agrees_with_explicit_path_families(self, rng):
        for _ in range(10):
            n = rng.randint(2, 3)
            net = rand_network(rng, n, rng.randint(1, 6))
            for I, J in index_sets(n):
                total = ZERO
                for fam in path_families(net, I, J):
                    w = ONE
                    for p in fam:
                        w = w * path_weight(net, p)
                    total = total + w
                assert minor_lgv(net, I, J) == total

    def test_families_are_vertex_disjoint(self):
        net = lettered_network(*[1] * 9)
        fams = list(path_families(net, [1, 2], [2, 3]))
        assert fams
        for fam in fams:
            nodes = [v for p in fam for v in p]
            assert len(nodes) == len(set(nodes))

    def test_index_errors(self):
        net = PlanarNetwork(2)
        with pytest.raises(IndexError):
            minor_lgv(net, [3], [1])
        with pytest.raises(IndexError):
            minor_lgv(net, [2, 1], [1, 2])
        with pytest.raises(ValueError):
            minor_lgv(net, [1], [1, 2])


class TestLineWeights:
    def test_shape(self):
        assert is_ldu_shape(network_from_factors(EXAMPLE_FACTORS, 3))
        assert not is_ldu_shape(network_from_factors([asc(1, 1), desc(1, 1)], 2))
        assert is_ldu_shape(PlanarNetwork(3))

    def test_example(self):
        assert line_weights(network_from_factors(EXAMPLE_FACTORS, 3)) == (1, 2, 2)

    def test_identity(self):
        assert line_weights(PlanarNetwork(4)) == (1, 1, 1, 1)

    def test_wrong_shape(self):
        with pytest.raises(ShapeError):
            line_weights(network_from_factors([asc(1, 1), desc(1, 1)], 2))

    def test_leading_minor_ratios(self, rng):
        checked = 0
        for _ in range(40):
            n = rng.randint(1, 4)
            net = rand_network(rng, n, 8)
            chips = sorted(net.chips, key=lambda c: [Kind.DESC, Kind.DIAG, Kind.ASC].index(c.kind))
            net = PlanarNetwork(n, tuple(chips))
            lead = leading_principal_minors(weight_matrix(net))
            d = line_weights(net)
            prev = ONE
            for k in range(n):
                assert lead[k] == prev * d[k]
                prev = lead[k]
            checked += 1
        assert checked == 40


class TestPdCheckNetwork:
    def test_example(self):
        v = pd_check_network(EXAMPLE_MATRIX)
        assert v.is_pd and v.line_weights == (1, 2, 2)
        assert weight_matrix(v.network) == EXAMPLE_MATRIX

    def test_identity(self):
        v = pd_check_network(Matrix.identity(3))
        assert v.is_pd and v.line_weights == (1, 1, 1)

    def test_indefinite(self):
        v = pd_check_network(Matrix([[1, 2], [2, 1]]))
        assert not v.is_pd and v.line_weights == (1, -3) and v.witness == 2
        assert v.reason is Reason.NON_POSITIVE_LINE_WEIGHT

    def test_zero_leading_minor(self):
        v = pd_check_network(Matrix([[0, 1], [1, 0]]))
        assert not v.is_pd and v.reason is Reason.ZERO_LEADING_MINOR and v.witness == 1

    def test_not_hermitian(self):
        assert pd_check_network(Matrix([[1, 2], [0, 1]])).reason is Reason.NOT_HERMITIAN

    def test_complex(self):
        v = pd_check_network(Matrix([[2, I_], [-I_, 2]]))
        assert v.is_pd and v.line_weights == (2, Fraction(3, 2))


class TestEssential:
    def test_staircase(self):
        assert staircase_word(1) == []
        assert staircase_word(3) == [2, 1, 2]
        assert len(staircase_word(5)) == 10

    def test_n2_ones(self):
        assert weight_matrix(essential_tp_network(2, [1, 1, 1, 1])) == Matrix([[1, 1], [1, 2]])

    def test_n1(self):
        assert weight_matrix(essential_tp_network(1, [Fraction(5, 3)])) == Matrix([[Fraction(5, 3)]])

    def test_shape(self):
        net = essential_tp_network(3, [1] * 9)
        assert is_ldu_shape(net) and net.width == 9

    def test_n3_all_minors_positive(self, rng):
        for _ in range(10):
            W = weight_matrix(essential_tp_network(3, [rand_pos_q(rng) for _ in range(9)]))
            values = all_minors(W)
            assert len(values) == 19 and all(v.is_positive() for v in values.values())

    def test_n4_sampled_minors_positive(self, rng):
        W = weight_matrix(essential_tp_network(4, [rand_pos_q(rng) for _ in range(16)]))
        pairs = list(index_sets(4))
        for I, J in rng.sample(pairs, min(200, len(pairs))):
            assert minor(W, I, J).is_positive()

    @pytest.mark.parametrize("params", [[1, 1, 1, 0], [1, -1, 1, 1], [1, 1, 1, I_], [1, 1, 1]])
    def test_bad_params(self, params):
        with pytest.raises(ValueError):
            essential_tp_network(2, params)


class TestDot:
    def test_identity_chains(self):
        dot = network_to_dot(PlanarNetwork(2))
        assert dot.startswith("digraph network {") and dot.endswith("}\n")
        assert 's1 -> "1,0"' in dot and '"2,0" -> t2' in dot

    def test_example_labels(self):
        dot = network_to_dot(network_from_factors(EXAMPLE_FACTORS, 3))
        labels = [line.split('label="')[1].split('"')[0] for line in dot.splitlines() if "->" in line and "label=" in line]
        assert labels == ["2", "-1", "-4", "4", "2", "2", "4", "-4", "-1", "2"]
        assert dot.count("rank=same") == 13

    def test_deterministic(self, rng):
        net = rand_network(rng, 3, 7)
        assert network_to_dot(net) == network_to_dot(PlanarNetwork(3, tuple(net.chips)))
