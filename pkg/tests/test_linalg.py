from fractions import Fraction
from itertools import permutations

from hypothesis import given, settings
from hypothesis import strategies as st

from nodal_sextics import linalg


def small_matrix(rows, cols, lo=-6, hi=6):
    return st.lists(st.lists(st.integers(lo, hi), min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def leibniz_det(m):
    n = len(m)
    total = 0
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= m[i][p[i]]
        total += sign * prod
    return total


@given(st.integers(1, 4).flatmap(lambda n: small_matrix(n, n)))
def test_determinant_matches_leibniz(m):
    assert linalg.determinant(m) == leibniz_det(m)


@settings(max_examples=150)
@given(st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(lambda rc: small_matrix(*rc)))
def test_smith_normal_form_contract(m):
    u, d, v = linalg.smith_normal_form(m)
    assert linalg.matmul(linalg.matmul(u, m), v) == d
    assert abs(linalg.determinant(u)) == 1 and abs(linalg.determinant(v)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    assert all(x >= 0 for x in diag)
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)


def test_smith_examples():
    assert linalg.invariant_factors([[1, 0], [0, 1]]) == [1, 1]
    assert linalg.invariant_factors([[2, 0], [0, 4]]) == [2, 4]
    assert linalg.invariant_factors([[0, 1], [1, 0]]) == [1, 1]
    assert linalg.invariant_factors([[2, 0], [0, 3]]) == [1, 6]


@given(st.tuples(st.integers(1, 3), st.integers(2, 5)).flatmap(lambda rc: small_matrix(*rc, lo=-4, hi=4)))
def test_integer_kernel_is_saturated_kernel(m):
    n = len(m[0])
    ker = linalg.integer_kernel(m, n)
    for k in ker:
        assert linalg.matvec(m, k) == tuple(0 for _ in m)
    rank = n - len(ker)
    assert len(linalg.hermite_rows(m, n)) == rank
    if ker:
        assert all(f == 1 for f in linalg.invariant_factors(ker))


def test_rational_inverse():
    inv = linalg.rational_inverse([[2, 1], [1, 1]])
    assert inv == ((Fraction(1), Fraction(-1)), (Fraction(-1), Fraction(2)))


@given(small_matrix(3, 4, 0, 1), st.lists(st.integers(0, 1), min_size=3, max_size=3))
def test_solve_mod2_brute_force(a, b):
    sol, nullity = linalg.solve_mod2(a, b)
    import itertools
    all_sols = [x for x in itertools.product((0, 1), repeat=4)
                if all(sum(r * c for r, c in zip(row, x)) % 2 == bi for row, bi in zip(a, b))]
    if sol is None:
        assert not all_sols
    else:
        assert tuple(sol) in all_sols
        assert len(all_sols) == 2 ** nullity
