"""Parametrization operations: evaluation, certificates, pinning, conversions."""

import random
from fractions import Fraction

import pytest

from helpers import (
    random_matrix,
    random_nonsingular_rational,
    random_parametrization,
)
from toricsum import (
    Binomial,
    ConstructionError,
    DegreeBound,
    IntegerMatrix,
    LatticeBasis,
    Parametrization,
    RationalMatrix,
    VariableSet,
    contains_binomial,
    dehomogenize_parametrization,
    dimension,
    enumerate_kernel_binomials,
    evaluate,
    homogeneity_certificate,
    homogenize_binomial,
    dehomogenize_binomial,
    is_maximal_rank,
    kernel_lattice,
    normalize_pin,
    parametrization_from_lattice,
    rank,
    reparametrize,
    split_disjoint,
)


def make(rows, var_names, param_names, **kw):
    return Parametrization(
        VariableSet(tuple(param_names)),
        VariableSet(tuple(var_names)),
        IntegerMatrix.from_rows(rows),
        **kw,
    )


TWISTED_CUBIC = make([[3, 2, 1, 0], [0, 1, 2, 3]], ["x0", "x1", "x2", "x3"], ["t", "s"])


class TestEvaluate:
    def test_matrix_vector(self):
        assert evaluate(TWISTED_CUBIC, (1, 0, 1, 0)) == (4, 2)

    def test_zero_monomial(self):
        assert evaluate(TWISTED_CUBIC, (0, 0, 0, 0)) == (0, 0)

    def test_identity_unit_vectors(self):
        p = make([[1, 0], [0, 1]], ["a", "b"], ["t", "s"])
        assert evaluate(p, (1, 0)) == (1, 0)
        assert evaluate(p, (0, 1)) == (0, 1)


class TestContains:
    def test_twisted_cubic_relation(self):
        assert contains_binomial(TWISTED_CUBIC, Binomial((1, 0, 1, 0), (0, 2, 0, 0)))

    def test_non_relation(self):
        assert not contains_binomial(TWISTED_CUBIC, Binomial((1, 0, 0, 0), (0, 1, 0, 0)))

    def test_zero_binomial(self):
        assert contains_binomial(TWISTED_CUBIC, Binomial.zero(4))


def test_dimension_and_maximal_rank():
    assert dimension(TWISTED_CUBIC) == 2
    assert is_maximal_rank(TWISTED_CUBIC)
    assert is_maximal_rank(make([[1, -1], [1, 1]], ["a", "b"], ["t", "s"]))
    assert not is_maximal_rank(make([[1, 1], [1, 1]], ["a", "b"], ["t", "s"]))
    p = make([[1, 0, 0], [0, 1, 0], [0, 0, 1]], ["a", "b", "c"], ["t", "s", "u"])
    assert dimension(p) == 3


def test_zero_column_rejected_without_flag():
    with pytest.raises(ConstructionError, match="maps to 1"):
        make([[1, 0]], ["a", "b"], ["t"])
    make([[1, 0]], ["a", "b"], ["t"], allow_degenerate=True)


class TestHomogeneityCertificate:
    def test_twisted_cubic(self):
        cert = homogeneity_certificate(TWISTED_CUBIC)
        assert cert is not None
        assert cert.omega == (Fraction(1, 3), Fraction(1, 3))
        assert cert.certifies(TWISTED_CUBIC)

    def test_not_homogeneous(self):
        assert homogeneity_certificate(make([[1, 2]], ["a", "b"], ["t"])) is None

    def test_identity(self):
        p = make([[1, 0], [0, 1]], ["a", "b"], ["t", "s"])
        cert = homogeneity_certificate(p)
        assert cert.omega == (1, 1)

    def test_certificate_balances_kernel(self):
        rng = random.Random(23)
        for _ in range(50):
            p = random_parametrization(rng)
            cert = homogeneity_certificate(p)
            if cert is None:
                continue
            for v in kernel_lattice(p.matrix).vectors:
                assert split_disjoint(v).is_balanced


class TestReparametrize:
    def test_hand_example(self):
        p = make([[1, 1, 1], [0, 1, 2]], ["x1", "x2", "x3"], ["t", "s"])
        q = RationalMatrix.from_rows([[1, 0], [-1, 1]])
        assert reparametrize(p, q).matrix.entries == ((1, 1, 1), (-1, 0, 1))

    def test_identity_is_noop(self):
        p = make([[1, 1, 1], [0, 1, 2]], ["x1", "x2", "x3"], ["t", "s"])
        assert reparametrize(p, RationalMatrix.identity(2)) == p

    def test_singular_rejected(self):
        p = make([[1, 1, 1], [0, 1, 2]], ["x1", "x2", "x3"], ["t", "s"])
        with pytest.raises(ConstructionError, match="singular"):
            reparametrize(p, RationalMatrix.from_rows([[1, 0], [0, 0]]))

    def test_invariance_random(self):
        rng = random.Random(29)
        for _ in range(50):
            p = random_parametrization(rng, max_params=3, max_vars=4)
            q = random_nonsingular_rational(rng, p.matrix.rows)
            p2 = reparametrize(p, q)
            assert dimension(p2) == dimension(p)
            for b in enumerate_kernel_binomials(p, DegreeBound(3)):
                assert contains_binomial(p2, b)
            for _ in range(10):
                b = split_disjoint(tuple(rng.randint(-2, 2) for _ in range(len(p.vars))))
                assert contains_binomial(p, b) == contains_binomial(p2, b)


class TestNormalizePin:
    def test_hand_example(self):
        p = make([[1, 1, 1], [0, 1, 2]], ["x1", "x2", "x3"], ["t", "s"])
        pin = normalize_pin(p, 2)
        assert pin.parametrization.matrix.entries == ((0, 1, 2), (2, 1, 0))
        assert pin.exponent == 2
        assert pin.pinned_param_index == 0
        assert pin.parametrization.column(2) == (2, 0)
        assert kernel_lattice(pin.parametrization.matrix) == kernel_lattice(p.matrix)

    def test_identity_unchanged(self):
        p = make([[1, 0], [0, 1]], ["a", "b"], ["t", "s"])
        pin = normalize_pin(p, 0)
        assert pin.parametrization.matrix == p.matrix
        assert pin.exponent == 1

    def test_zero_column_rejected(self):
        p = make([[1, 0]], ["a", "b"], ["t"], allow_degenerate=True)
        with pytest.raises(ConstructionError, match="pinned"):
            normalize_pin(p, 1)

    def test_accepts_variable_names(self):
        p = make([[1, 1, 1], [0, 1, 2]], ["x1", "x2", "x3"], ["t", "s"])
        assert normalize_pin(p, "x3") == normalize_pin(p, 2)

    def test_redundant_rows_are_dropped(self):
        p = make([[1, 1, 1], [2, 2, 2], [0, 1, 2]], ["x1", "x2", "x3"], ["t", "s", "u"])
        pin = normalize_pin(p, 2)
        assert pin.parametrization.matrix.entries == ((0, 1, 2), (2, 1, 0))
        assert pin.exponent == 2
        assert kernel_lattice(pin.parametrization.matrix) == kernel_lattice(p.matrix)

    def test_random_kernel_preserved(self):
        rng = random.Random(31)
        for _ in range(50):
            p = random_parametrization(rng)
            i = rng.randrange(len(p.vars))
            pin = normalize_pin(p, i)
            new = pin.parametrization
            assert is_maximal_rank(new)
            assert kernel_lattice(new.matrix) == kernel_lattice(p.matrix)
            col = new.column(i)
            expected = tuple(
                pin.exponent if k == pin.pinned_param_index else 0 for k in range(new.matrix.rows)
            )
            assert col == expected


class TestDehomogenize:
    def test_block_extraction(self):
        p = make([[1, -1, 0], [1, 1, 1]], ["z1", "z2", "x"], ["t", "s"])
        deh = dehomogenize_parametrization(p, "x", "s")
        assert deh.matrix.entries == ((1, -1),)
        assert deh.vars.names == ("z1", "z2")
        assert deh.params.names == ("t",)

    def test_single_variable_collapses(self):
        p = make([[0], [2]], ["x"], ["t", "s"], allow_degenerate=True)
        deh = dehomogenize_parametrization(p, "x", "s")
        assert len(deh.vars) == 0
        assert deh.matrix.cols == 0

    def test_support_outside_last_row_rejected(self):
        p = make([[1, -1, 1], [1, 1, 1]], ["z1", "z2", "x"], ["t", "s"])
        with pytest.raises(ConstructionError, match="support"):
            dehomogenize_parametrization(p, "x", "s")

    def test_zero_exponent_rejected(self):
        p = make([[1, -1, 1], [1, 1, 0]], ["z1", "z2", "x"], ["t", "s"])
        with pytest.raises(ConstructionError, match="zero exponent"):
            dehomogenize_parametrization(p, "x", "s")


def _random_pinned_homogeneous(rng, max_params=3, max_vars=4):
    """Homogeneous parametrization with the last variable pinned on the last row.

    The last row is chosen so that weight 1 on the first parameter and
    1/gamma on the last certifies homogeneity.
    """
    m = rng.randint(1, max_params)
    n = rng.randint(1, max_vars)
    upper = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
    gamma = rng.choice([1, 1, 2, 3, -2])
    alpha = [gamma * (1 - upper[0][j]) for j in range(n)]
    rows = [row + [0] for row in upper] + [alpha + [gamma]]
    vars_ = [f"z{k}" for k in range(n)] + ["x"]
    params = [f"t{k}" for k in range(m)] + ["s"]
    return make(rows, vars_, params, allow_degenerate=True)


class TestDehomogenizedKernel:
    def test_homogenized_kernel_binomials_land_in_original(self):
        rng = random.Random(37)
        for _ in range(30):
            p = _random_pinned_homogeneous(rng)
            assert homogeneity_certificate(p) is not None
            deh = dehomogenize_parametrization(p, "x", "s")
            for b in enumerate_kernel_binomials(deh, DegreeBound(3)):
                assert contains_binomial(p, homogenize_binomial(b))

    def test_dehomogenized_kernel_binomials_land_in_quotient(self):
        rng = random.Random(41)
        for _ in range(30):
            p = _random_pinned_homogeneous(rng)
            deh = dehomogenize_parametrization(p, "x", "s")
            x_index = len(p.vars) - 1
            for b in enumerate_kernel_binomials(p, DegreeBound(3)):
                assert contains_binomial(deh, dehomogenize_binomial(b, x_index))


class TestFromLattice:
    def test_annihilates_and_has_complementary_rank(self):
        basis = LatticeBasis.spanning([(1, -2, 1)], 3)
        p = parametrization_from_lattice(basis)
        assert rank(p.matrix) == 2
        assert p.matrix.apply((1, -2, 1)) == (0, 0)
        assert kernel_lattice(p.matrix) == basis

    def test_empty_lattice_gives_identity_kernel(self):
        p = parametrization_from_lattice(LatticeBasis(3, ()))
        assert p.matrix == IntegerMatrix.identity(3)

    def test_full_lattice_gives_degenerate(self):
        basis = LatticeBasis.spanning([(1, 0), (0, 1)], 2)
        p = parametrization_from_lattice(basis)
        assert rank(p.matrix) == 0
        assert p.allow_degenerate

    def test_round_trip_with_kernel(self):
        rng = random.Random(43)
        for _ in range(50):
            m = random_matrix(rng)
            basis = kernel_lattice(m)
            p = parametrization_from_lattice(basis)
            assert kernel_lattice(p.matrix) == basis
