from fractions import Fraction
from itertools import combinations, permutations
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pearllab.exact import (
    GF,
    QQ,
    ExactMatrix,
    Mod,
    char_poly,
    format_poly,
    is_prime,
    poly_eval,
    poly_eval_matrix,
    prime_divisors,
    roots_mod_p,
    smith_normal_form,
)

MORSE = [[1, 1, 2], [2, 1, 1], [1, 2, 1]]


def leibniz_det(rows):
    """Oracle: permutation expansion."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def minor_gcd(rows, k):
    """Oracle: gcd of all k x k minors."""
    m, n = len(rows), len(rows[0])
    g = 0
    for rs in combinations(range(m), k):
        for cs in combinations(range(n), k):
            g = gcd(g, leibniz_det([[rows[r][c] for c in cs] for r in rs]))
    return g


int_matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)
square_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
)


# ---- scalars


def test_mod_arithmetic():
    a = Mod(3, 5)
    assert a + 4 == 2
    assert a * a == 4
    assert a.inverse() == 2
    assert a / 3 == 1
    assert a**4 == 1
    assert -a == 2
    assert 1 - a == 3
    assert int(Mod(-1, 7)) == 6


def test_mod_rejects_composite_modulus():
    with pytest.raises(ValueError):
        Mod(1, 6)


def test_mod_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        Mod(0, 5).inverse()


def test_mixing_fields_is_an_error():
    with pytest.raises(ValueError):
        Mod(1, 5) + Mod(1, 7)


def test_rationals_stay_reduced():
    m = ExactMatrix([[Fraction(2, 4), Fraction(-3, 6)]], QQ)
    assert m[0, 0] == Fraction(1, 2)
    assert m[0, 1].denominator == 2


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


# ---- Smith normal form


def test_snf_morse_matrix():
    res = smith_normal_form(ExactMatrix(MORSE))
    assert res.invariant_factors == [1, 1, 4]
    assert res.rank == 3
    assert res.U @ ExactMatrix(MORSE) @ res.V == res.D


def test_snf_identity():
    res = smith_normal_form(ExactMatrix.identity(3))
    assert res.D == ExactMatrix.identity(3)
    assert res.torsion == []


def test_snf_zero():
    res = smith_normal_form(ExactMatrix.zeros(2, 3))
    assert res.D.is_zero()
    assert res.rank == 0


def test_snf_rejects_non_integer():
    with pytest.raises(TypeError):
        smith_normal_form(ExactMatrix([[Fraction(1, 2)]], QQ))


def test_snf_is_deterministic():
    a = smith_normal_form(ExactMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    b = smith_normal_form(ExactMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert a.U == b.U and a.V == b.V
    assert a.invariant_factors == [2, 6, 12]


@settings(max_examples=60, deadline=None)
@given(int_matrices)
def test_snf_properties(rows):
    M = ExactMatrix(rows)
    res = smith_normal_form(M)
    assert res.U @ M @ res.V == res.D
    assert abs(res.U.det()) == 1 and abs(res.V.det()) == 1
    m, n = M.shape
    for i in range(m):
        for j in range(n):
            if i != j:
                assert res.D[i, j] == 0
    factors = res.invariant_factors
    assert all(f > 0 for f in factors)
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0
    r = res.rank
    prod = 1
    for f in factors:
        prod *= f
    if r:
        assert prod == minor_gcd(rows, r)
    assert r == M.rank()


# ---- determinants, rank, kernels


@settings(max_examples=60, deadline=None)
@given(square_matrices)
def test_det_matches_leibniz(rows):
    assert ExactMatrix(rows).det() == leibniz_det(rows)
    assert ExactMatrix(rows, QQ).det() == leibniz_det(rows)
    assert int(ExactMatrix(rows).mod(7).det()) == leibniz_det(rows) % 7


def test_morse_rank_mod_2():
    assert ExactMatrix(MORSE).mod(2).rank() == 2
    assert ExactMatrix(MORSE).rank() == 3


@settings(max_examples=40, deadline=None)
@given(int_matrices)
def test_nullspace_is_kernel(rows):
    M = ExactMatrix(rows)
    basis = M.nullspace()
    assert len(basis) == M.ncols - M.rank()
    for v in basis:
        assert all(x == 0 for x in M.change_ring(QQ).apply(v))


def test_solve_reports_inconsistency():
    M = ExactMatrix([[1, 1], [2, 2]], QQ)
    assert M.solve([1, 3]) is None
    x = M.solve([1, 2])
    assert M.apply(x) == [1, 2]


def test_matmul_shape_mismatch():
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2]]) @ ExactMatrix([[1, 2]])


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2], [3]])


# ---- characteristic polynomials


def test_char_poly_one_by_one():
    assert char_poly(ExactMatrix([[7]])) == [1, -7]


def test_char_poly_morse():
    assert char_poly(ExactMatrix(MORSE)) == [1, -3, -3, -4]


def test_char_poly_non_square():
    with pytest.raises(ValueError):
        char_poly(ExactMatrix([[1, 2]]))


@settings(max_examples=60, deadline=None)
@given(square_matrices)
def test_cayley_hamilton(rows):
    M = ExactMatrix(rows)
    poly = char_poly(M)
    assert poly[0] == 1 and len(poly) == M.nrows + 1
    assert poly_eval_matrix(poly, M).is_zero()


@settings(max_examples=40, deadline=None)
@given(square_matrices)
def test_char_poly_matches_numpy(rows):
    expected = [round(c) for c in np.poly(np.array(rows, dtype=float))]
    assert char_poly(ExactMatrix(rows)) == expected


def test_char_poly_over_prime_field():
    rows = [[1, 2], [3, 4]]
    assert [int(c) for c in char_poly(ExactMatrix(rows, GF(5)))] == [1, 0, 3]


def test_format_poly():
    assert format_poly([1, 0, 0, 0, -256]) == "λ^4 - 256"
    assert format_poly([1, 0, -44, 0, -16]) == "λ^4 - 44λ^2 - 16"
    assert format_poly([1, -1]) == "λ - 1"


# ---- roots mod p and prime divisors


def roots_by_extraction(poly, p):
    """Oracle: peel off linear factors by synthetic division."""
    coeffs = [c % p for c in poly]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    found = set()
    changed = True
    while changed and len(coeffs) > 1:
        changed = False
        for r in range(p):
            q = [coeffs[0]]
            for c in coeffs[1:]:
                q.append((c + q[-1] * r) % p)
            if q[-1] == 0:
                found.add(r)
                coeffs = q[:-1]
                changed = True
                break
    return found


def test_roots_mod_p_examples():
    assert roots_mod_p([1, 0, 0, 0, -256], 5) == {1, 2, 3, 4}
    assert roots_mod_p([1, 0, 1], 2) == {1}
    assert roots_mod_p([1, 0, 0, 0, -256], 3) == {1, 2}


def test_roots_mod_p_errors():
    with pytest.raises(ValueError):
        roots_mod_p([1, 0], 4)
    with pytest.raises(ValueError):
        roots_mod_p([5, 10], 5)


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.integers(-20, 20), min_size=2, max_size=6),
    st.sampled_from([2, 3, 5, 7, 11, 13]),
)
def test_roots_mod_p_matches_extraction(poly, p):
    if all(c % p == 0 for c in poly):
        return
    assert roots_mod_p(poly, p) == roots_by_extraction(poly, p)


def test_prime_divisors():
    assert prime_divisors(-175) == {5, 7}
    assert prime_divisors(1) == set()
    assert prime_divisors(12) == {2, 3}
    with pytest.raises(ValueError):
        prime_divisors(0)


def test_poly_eval():
    assert poly_eval([1, 0, 0, 0, -256], 3) == -175
