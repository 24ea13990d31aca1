from fractions import Fraction

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_smith
from hypothesis import given, settings
from hypothesis import strategies as st

from pantsdecomp.gaussian import GaussQ
from pantsdecomp.polyhedra.lp import feasible_point, linprog, max_slack
from pantsdecomp.polyhedra.matrix import ExactMatrix, kernel_basis, primitive_integer_vector, rank_of
from pantsdecomp.polyhedra.normal_forms import (
    elementary_divisors,
    hermite_rows,
    lattice_index,
    saturated_basis,
    smith_int,
    smith_normal_form,
)

small = st.integers(-5, 5)


def int_matrix(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


# -- Gaussian rationals -------------------------------------------------------


def test_gaussian_field_operations():
    z = GaussQ(1, 2)
    w = GaussQ(Fraction(1, 2), -1)
    assert z * w == GaussQ(Fraction(5, 2), 0)
    assert (z / w) * w == z
    assert z.conjugate() == GaussQ(1, -2)
    assert z.norm() == 5
    assert GaussQ(3).is_real() and not z.is_real()


@pytest.mark.parametrize("z, phase", [(GaussQ(1), 0), (GaussQ(-2), 1), (GaussQ(0, 1), Fraction(1, 2)),
                                      (GaussQ(0, -3), Fraction(3, 2)), (GaussQ(1, 1), Fraction(1, 4))])
def test_phase_in_half_turns(z, phase):
    assert z.phase() == phase


@given(small, small, small, small)
def test_gaussian_multiplication_commutes_and_norm_multiplies(a, b, c, d):
    z, w = GaussQ(a, b), GaussQ(c, d)
    assert z * w == w * z
    assert (z * w).norm() == z.norm() * w.norm()


# -- exact matrices -----------------------------------------------------------


def test_rank_det_inverse():
    m = ExactMatrix([[2, 1], [1, 1]])
    assert m.rank() == 2
    assert m.det() == 1
    assert m.inverse().tolist() == [[1, -1], [-1, 2]]
    assert ExactMatrix([[1, 2], [2, 4]]).rank() == 1


def test_kernel_basis_is_annihilated():
    a = ExactMatrix([[1, 1, 1]])
    k = kernel_basis(a)
    assert k.rows == 2
    for row in k.tolist():
        assert sum(x for x in row) == 0


def test_primitive_integer_vector():
    assert primitive_integer_vector([Fraction(1, 2), Fraction(-3, 4)]) == [2, -3]
    assert primitive_integer_vector([0, 4, 6]) == [0, 2, 3]


@given(int_matrix())
def test_kernel_dimension_matches_rank(rows):
    m = ExactMatrix(rows)
    k = kernel_basis(m)
    assert k.rows + m.rank() == m.cols
    for v in k.tolist():
        assert all(sum(a * x for a, x in zip(r, v)) == 0 for r in rows)


# -- Smith and Hermite forms --------------------------------------------------


def _is_smith_diagonal(d):
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    off = all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    nz = [x for x in diag if x]
    chain = all(b % a == 0 for a, b in zip(nz, nz[1:]))
    trailing = diag[:len(nz)] == nz
    return off and chain and trailing and all(x > 0 for x in nz)


@settings(max_examples=60)
@given(int_matrix(6, 6))
def test_smith_remultiplication_and_sympy_oracle(rows):
    left, d, right = smith_int(rows)
    assert matmul(matmul(left, rows), right) == d
    assert _is_smith_diagonal(d)
    assert abs(ExactMatrix(left).det()) == 1 and abs(ExactMatrix(right).det()) == 1
    ref = sympy_smith(sympy.Matrix(rows), domain=sympy.ZZ)
    ref_diag = [abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i] != 0]
    assert elementary_divisors(rows) == ref_diag


def test_smith_normal_form_wrapper_on_exact_matrix():
    m = ExactMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    left, d, right = smith_normal_form(m)
    assert (left @ m @ right).tolist() == d.tolist()
    assert [d[i, i] for i in range(3)] == [2, 6, 12]


def test_hermite_and_lattice_index():
    assert hermite_rows([[2, 0], [0, 3], [2, 3]]) == [[2, 0], [0, 3]]
    assert lattice_index([[2, 0], [0, 3]]) == 6
    assert lattice_index([[1, 1], [0, 1]]) == 1
    assert lattice_index([[2, 2]], 2) == 2
    sat = saturated_basis([[2, 2]], 2)
    assert rank_of(sat) == 1 and lattice_index(sat, 2) == 1


# -- exact LP -----------------------------------------------------------------


def test_linprog_optimum_and_status():
    res = linprog([1, 1], [[1, 2], [3, 1]], [4, 6])
    assert res.status == "optimal"
    assert res.value == Fraction(14, 5)
    assert res.point == (Fraction(8, 5), Fraction(6, 5))
    assert linprog([1], [[-1]], [0]).status == "unbounded"
    assert linprog([1], [[1], [-1]], [-1, 0]).status == "infeasible"


def test_linprog_equalities_and_minimize():
    res = linprog([1, 2], [[-1, 0], [0, -1]], [0, 0], [[1, 1]], [3], maximize=False)
    assert res.status == "optimal" and res.value == 3


def test_feasible_point_and_strict_slack():
    p = feasible_point([[1, 0], [0, 1], [-1, -1]], [1, 1, -1])
    assert p is not None and p[0] + p[1] >= 1
    # x > 0 and x < 0 cannot hold together
    assert max_slack([[-1], [1]], [0, 0], strict=[True, True], n=1) in (None, 0)
    s = max_slack([[-1], [1]], [0, 1], strict=[True, True], n=1)
    assert s is not None and s > 0


@settings(max_examples=40)
@given(st.lists(st.tuples(small, small, st.integers(0, 6)), min_size=1, max_size=6), small, small)
def test_linprog_point_is_feasible_and_no_better_vertex(rows, c0, c1):
    a = [[x, y] for x, y, _ in rows] + [[1, 0], [-1, 0], [0, 1], [0, -1]]
    b = [r for _, _, r in rows] + [5, 5, 5, 5]
    res = linprog([c0, c1], a, b)
    assert res.status == "optimal"  # the box keeps it bounded and the origin is feasible
    x = res.point
    assert all(ai[0] * x[0] + ai[1] * x[1] <= bi for ai, bi in zip(a, b))
    # compare against every pairwise-tight candidate vertex
    best = None
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            m = ExactMatrix([a[i], a[j]])
            if m.rank() < 2:
                continue
            v = m.solve([b[i], b[j]])
            if all(ak[0] * v[0] + ak[1] * v[1] <= bk for ak, bk in zip(a, b)):
                val = c0 * v[0] + c1 * v[1]
                best = val if best is None else max(best, val)
    assert res.value == best
