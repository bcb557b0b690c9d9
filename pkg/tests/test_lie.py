import random
from fractions import Fraction as F

import pytest

from paracert import exact, lie


def _matrix_commutator(A, B):
    n = len(A)
    out = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[i][j] = sum((A[i][k] * B[k][j] - B[i][k] * A[k][j]
                             for k in range(n)), F(0))
    return out


def _E(n, i, j):
    out = [[F(0)] * n for _ in range(n)]
    out[i - 1][j - 1] = F(1)
    return out


class TestBracket:
    def test_self_bracket_vanishes(self, sl4):
        algebra, _ = sl4
        rng = random.Random(2)
        for _ in range(10):
            X = [F(rng.randint(-3, 3)) for _ in range(algebra.dim)]
            assert exact.is_zero_vec(algebra.bracket(X, X))

    def test_dimension_mismatch_rejected(self, sl4):
        algebra, _ = sl4
        with pytest.raises(ValueError):
            algebra.bracket([F(0)] * 3, [F(0)] * algebra.dim)

    def test_grading_element_eigenvector_borel(self, sl4, borel4):
        algebra, _ = sl4
        e12 = algebra.realization.from_matrix(_E(4, 1, 2))
        img = algebra.bracket(borel4.grading.E_gr, e12)
        assert img == e12

    def test_matches_matrix_commutator_oracle(self, sl4):
        algebra, _ = sl4
        real = algebra.realization
        e12, e21 = real.from_matrix(_E(4, 1, 2)), real.from_matrix(_E(4, 2, 1))
        got = algebra.bracket(e12, e21)
        assert got == real.from_matrix(_matrix_commutator(_E(4, 1, 2), _E(4, 2, 1)))
        assert got == real.from_diag([1, -1, 0, 0])
        rng = random.Random(7)
        for _ in range(10):
            A = [[F(rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
            B = [[F(rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
            lhs = algebra.bracket(real.from_matrix(A), real.from_matrix(B))
            assert lhs == real.from_matrix(_matrix_commutator(A, B))

    def test_jacobi_on_random_triples(self, sl4):
        algebra, _ = sl4
        rng = random.Random(4)
        for _ in range(50):
            X, Y, Z = ([F(rng.randint(-2, 2), rng.randint(1, 2))
                        for _ in range(algebra.dim)] for _ in range(3))
            s = algebra.bracket(algebra.bracket(X, Y), Z)
            s = exact.vadd(s, algebra.bracket(algebra.bracket(Y, Z), X))
            s = exact.vadd(s, algebra.bracket(algebra.bracket(Z, X), Y))
            assert exact.is_zero_vec(s)


class TestKillingForm:
    def test_zero_argument(self, sl4):
        algebra, _ = sl4
        X = exact.unit(algebra.dim, 0)
        assert algebra.killing_form(X, exact.zeros(algebra.dim)) == 0

    def test_grading_element_norm_k2(self, grass_k2):
        E = grass_k2.grading.E_gr
        assert grass_k2.algebra.killing_form(E, E) == 8

    def test_weight_sum_norm_matches_displayed_value(self, grass_k2):
        w = grass_k2.root(-1, 3, -1, -1)
        assert grass_k2.system.inner(w, w) == F(3, 2)

    def test_trace_form_cross_oracle(self, sl4):
        # for the traceless m x m realization, kappa = 2m tr(XY)
        algebra, _ = sl4
        real = algebra.realization
        rng = random.Random(9)
        for _ in range(10):
            A = [[F(rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
            B = [[F(rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
            a, b = real.from_matrix(A), real.from_matrix(B)
            Am, Bm = real.to_matrix(a), real.to_matrix(b)
            tr = sum((Am[i][k] * Bm[k][i] for i in range(4) for k in range(4)), F(0))
            assert algebra.killing_form(a, b) == 8 * tr

    def test_ad_invariance_random(self, sl4):
        algebra, _ = sl4
        rng = random.Random(13)
        for _ in range(50):
            X, Y, Z = ([F(rng.randint(-3, 3)) for _ in range(algebra.dim)]
                       for _ in range(3))
            assert algebra.killing_form(algebra.bracket(X, Y), Z) == \
                -algebra.killing_form(Y, algebra.bracket(X, Z))


class TestKillingDual:
    def test_zero_covector(self, sl4):
        algebra, _ = sl4
        assert algebra.killing_dual([F(0)] * algebra.dim) == [F(0)] * algebra.dim

    def test_displayed_weight_dual(self, grass_k2):
        algebra = grass_k2.algebra
        got = grass_k2.system.dual(grass_k2.root(-1, 3, -1, -1))
        expected = algebra.realization.from_diag([F(-1, 8), F(3, 8), F(-1, 8), F(-1, 8)])
        assert got == expected

    def test_simple_root_dual(self, grass_k2):
        algebra = grass_k2.algebra
        got = grass_k2.system.dual(grass_k2.root(1, -1, 0, 0))
        assert got == algebra.realization.from_diag([F(1, 8), F(-1, 8), 0, 0])

    def test_roundtrip_full_dual(self, sl4):
        algebra, _ = sl4
        rng = random.Random(21)
        for _ in range(25):
            psi = [F(rng.randint(-4, 4), rng.randint(1, 3))
                   for _ in range(algebra.dim)]
            Z = algebra.killing_dual(psi)
            back = [algebra.killing_form(Z, exact.unit(algebra.dim, j))
                    for j in range(algebra.dim)]
            assert back == psi

    def test_degenerate_form_rejected(self):
        # 2-dim abelian algebra has identically zero Killing form
        abelian = lie.LieAlgebra(2, {})
        with pytest.raises(exact.DegenerateForm):
            abelian.killing_dual([F(1), F(0)])


class TestSubalgebraAnalysis:
    def test_abelian_derived_series(self, sl4):
        algebra, _ = sl4
        real = algebra.realization
        S = lie.Subspace(algebra, [real.from_diag([1, -1, 0, 0]),
                                   real.from_diag([0, 0, 1, -1])], role="t")
        chain, solvable = lie.derived_series(S)
        assert solvable and [c.dim for c in chain] == [2, 0]

    def test_strictly_upper_triangular_series(self, sl4):
        algebra, _ = sl4
        real = algebra.realization
        S = lie.Subspace(algebra, [real.from_matrix(_E(4, 1, 2)),
                                   real.from_matrix(_E(4, 1, 3)),
                                   real.from_matrix(_E(4, 2, 3))], role="n3")
        chain, solvable = lie.derived_series(S)
        assert solvable and [c.dim for c in chain] == [3, 1, 0]

    def test_not_closed_witness(self, sl4):
        algebra, _ = sl4
        real = algebra.realization
        S = lie.Subspace(algebra, [real.from_matrix(_E(4, 1, 2)),
                                   real.from_matrix(_E(4, 2, 1))], role="bad")
        with pytest.raises(lie.NotClosed) as err:
            lie.derived_series(S)
        a, b = err.value.pair
        assert not S.contains(algebra.bracket(a, b))

    def test_whole_algebra_is_ideal(self, sl4):
        algebra, _ = sl4
        whole = lie.Subspace(algebra,
                             [exact.unit(algebra.dim, i) for i in range(algebra.dim)],
                             role="g")
        ok, witness = lie.is_ideal(whole, whole)
        assert ok and witness is None

    def test_g_minus_not_ideal_with_witness(self, grass_k2):
        algebra = grass_k2.algebra
        whole = lie.Subspace(algebra,
                             [exact.unit(algebra.dim, i) for i in range(algebra.dim)],
                             role="g")
        gm = grass_k2.grading.g_minus
        ok, witness = lie.is_ideal(gm, whole)
        assert not ok
        a, s = witness
        assert not gm.contains(algebra.bracket(a, s))

    def test_ad_nilpotency(self, sl4):
        algebra, _ = sl4
        real = algebra.realization
        assert algebra.is_ad_nilpotent(real.from_matrix(_E(4, 1, 2)))
        assert not algebra.is_ad_nilpotent(real.from_diag([1, -1, 0, 0]))
