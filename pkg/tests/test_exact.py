import random
from fractions import Fraction as F

import pytest

from paracert import exact
from paracert.exact import (DegenerateRestriction, Infeasible, kernel,
                            linear_feasibility, project_orthogonal,
                            solve_affine, sparse_rank)


def _mat(rows):
    return [[F(x) for x in row] for row in rows]


class TestKernel:
    def test_identity_is_injective(self):
        assert kernel(_mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == []

    def test_zero_map_has_full_kernel(self):
        basis = kernel(_mat([[0, 0, 0], [0, 0, 0]]))
        assert len(basis) == 3
        assert exact.rank(basis) == 3

    def test_row_vector_kernel_by_substitution(self):
        A = _mat([[1, 1, 1]])
        basis = kernel(A)
        assert len(basis) == 2
        for v in basis:
            assert exact.dot(A[0], v) == 0
        assert exact.rank(basis) == 2

    def test_rank_nullity_on_random_matrices(self):
        rng = random.Random(11)
        for _ in range(25):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            A = [[F(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(cols)]
                 for _ in range(rows)]
            ker = kernel(A)
            assert exact.rank(A) + len(ker) == cols
            for v in ker:
                assert exact.is_zero_vec(exact.mat_vec(A, v))


class TestSolveAffine:
    def test_identity_system(self):
        x, hom = solve_affine(_mat([[1, 0], [0, 1]]), [F(3), F(-7)])
        assert x == [F(3), F(-7)]
        assert hom == []

    def test_difference_equation(self):
        x, hom = solve_affine(_mat([[1, -1]]), [F(0)])
        assert x == [F(0), F(0)]
        assert hom == [[F(1), F(1)]]

    def test_contradiction_row(self):
        with pytest.raises(Infeasible):
            solve_affine(_mat([[0, 0]]), [F(1)])

    def test_round_trip_on_random_systems(self):
        rng = random.Random(5)
        for _ in range(40):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 4)
            A = [[F(rng.randint(-4, 4)) for _ in range(cols)] for _ in range(rows)]
            target = [F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(cols)]
            b = exact.mat_vec(A, target)
            x, hom = solve_affine(A, b)
            assert exact.mat_vec(A, x) == b
            for h in hom:
                assert exact.is_zero_vec(exact.mat_vec(A, h))


class TestProjection:
    FORM = _mat([[2, 0, 0], [0, 3, 0], [0, 0, 5]])

    def test_idempotent_on_members(self):
        sub = [_mat([[1, 1, 0]])[0], _mat([[0, 0, 2]])[0]]
        v = [F(3), F(3), F(-4)]
        assert project_orthogonal(v, sub, self.FORM) == v

    def test_orthogonal_vector_projects_to_zero(self):
        sub = [[F(1), F(0), F(0)]]
        v = [F(0), F(1), F(7)]
        assert project_orthogonal(v, sub, self.FORM) == [F(0)] * 3

    def test_residual_is_form_orthogonal(self):
        rng = random.Random(3)
        sub = [[F(1), F(2), F(0)], [F(0), F(1), F(1)]]
        for _ in range(20):
            v = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3)]
            p = project_orthogonal(v, sub, self.FORM)
            res = exact.vsub(v, p)
            for w in sub:
                assert exact.dot(res, exact.mat_vec(self.FORM, w)) == 0

    def test_degenerate_restriction_raises(self):
        form = _mat([[1, 0], [0, 0]])
        with pytest.raises(DegenerateRestriction):
            project_orthogonal([F(1), F(1)], [[F(0), F(1)]], form)


class TestLinearFeasibility:
    def test_unconstrained_dim_one(self):
        assert linear_feasibility([], [], dim=1) == [F(0)]

    def test_equality_against_strict_bound(self):
        with pytest.raises(Infeasible):
            linear_feasibility([([F(1)], F(1))], [([F(1)], F(2))], dim=1)

    def test_known_feasible_band(self):
        x = linear_feasibility(
            [([F(1), F(1)], F(1))],
            [([F(1), F(0)], F(0)), ([F(0), F(1)], F(0))],
            dim=2)
        assert x[0] + x[1] == 1 and x[0] > 0 and x[1] > 0

    def test_curated_infeasible_families(self):
        cases = [
            ([], [([F(1)], F(0)), ([F(-1)], F(0))], 1),              # x>0, x<0
            ([], [([F(1), F(-1)], F(0)), ([F(-1), F(1)], F(0))], 2),  # x>y>x
            ([([F(1), F(1)], F(0))],
             [([F(1), F(0)], F(2)), ([F(0), F(1)], F(2))], 2),
        ]
        for eqs, ineqs, dim in cases:
            with pytest.raises(Infeasible):
                linear_feasibility(eqs, ineqs, dim=dim)

    def test_agrees_with_grid_search_in_low_dimension(self):
        # independent oracle: quarter-integer grid over [-3, 3]^dim
        rng = random.Random(17)
        grid = [F(k, 4) for k in range(-12, 13)]
        for _ in range(30):
            dim = rng.randint(1, 3)
            ineqs = [([F(rng.randint(-2, 2)) for _ in range(dim)],
                      F(rng.randint(-2, 2)))
                     for _ in range(rng.randint(1, 3))]

            def grid_points(d):
                if d == 0:
                    yield []
                    return
                for tail in grid_points(d - 1):
                    for g in grid:
                        yield [g] + tail

            grid_hit = any(
                all(exact.dot(c, p) > r for c, r in ineqs)
                for p in grid_points(dim))
            try:
                x = linear_feasibility([], ineqs, dim=dim)
                for c, r in ineqs:
                    assert exact.dot(c, x) > r
            except Infeasible:
                assert not grid_hit, "solver missed a grid-feasible point"


class TestSparseRank:
    def test_matches_dense_rank_on_random_sparse_matrices(self):
        rng = random.Random(23)
        for _ in range(30):
            rows = rng.randint(1, 7)
            cols = rng.randint(1, 7)
            A = [[F(0)] * cols for _ in range(rows)]
            for _ in range(rng.randint(1, rows * cols)):
                A[rng.randrange(rows)][rng.randrange(cols)] = \
                    F(rng.randint(-4, 4), rng.randint(1, 3))
            columns = [{r: A[r][c] for r in range(rows) if A[r][c] != 0}
                       for c in range(cols)]
            assert sparse_rank(columns) == exact.rank(A)
