from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from kh_finite.algebra import (AbelianGroup, ContractViolation, IntMatrix, LaurentPolynomial,
                               clear_denominators, elementary_divisors, evaluate_series,
                               homology_of_pair, rank, smith_normal_form)


def _det(m):
    n = len(m)
    if n == 0:
        return 1
    return sum((-1) ** c * m[0][c] * _det([row[:c] + row[c + 1:] for row in m[1:]])
               for c in range(n))


def determinantal_divisors(dense, rows, cols):
    """d_k = gcd of all k-by-k minors; the invariant factors are d_k / d_(k-1)."""
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, _det([[dense[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g)
    return [b // a for a, b in zip([1] + out, out)]


matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_elementary_divisors_match_minor_gcds(dense):
    m = IntMatrix.from_dense(dense)
    assert elementary_divisors(m) == determinantal_divisors(dense, m.rows, m.cols)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_smith_form_factorization(dense):
    m = IntMatrix.from_dense(dense)
    diag, left, right = smith_normal_form(m)
    prod = (left @ m @ right).to_dense()
    for r in range(m.rows):
        for c in range(m.cols):
            want = diag[r] if r == c and r < len(diag) else 0
            assert prod[r][c] == want
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_rank_of_zero_and_identity():
    assert rank(IntMatrix.zero(3, 2)) == 0
    assert rank(IntMatrix.identity(4)) == 4


def test_sparse_elimination_on_larger_matrix():
    dense = [[(3 * r + 5 * c) % 7 - 3 for c in range(12)] for r in range(10)]
    m = IntMatrix.from_dense(dense)
    assert elementary_divisors(m) == smith_normal_form(m)[0][:len(elementary_divisors(m))]


def test_matrix_arithmetic():
    a = IntMatrix.from_dense([[1, 2], [3, 4]])
    b = IntMatrix.identity(2)
    assert (a @ b) == a
    assert (a - a).is_zero()
    assert a.transpose().to_dense() == [[1, 3], [2, 4]]
    assert (-a).scale(-1) == a


def test_abelian_group_canonical_form():
    g = AbelianGroup(1, (6, 2))
    assert g.torsion == (2, 6)
    assert AbelianGroup(0, (2, 3)) == AbelianGroup.cyclic(6)
    assert str(AbelianGroup(2, (2,))) == "Z^2 + Z/2"


def test_tensor_and_tor():
    z2, z3, z = AbelianGroup.cyclic(2), AbelianGroup.cyclic(3), AbelianGroup.free(1)
    assert z2.tensor(z2) == z2
    assert z2.tensor(z3).is_trivial()
    assert z.tensor(z2) == z2
    assert z2.tor(z2) == z2
    assert z.tor(z2).is_trivial()
    assert AbelianGroup.cyclic(4).tor(AbelianGroup.cyclic(6)) == z2


def test_primary_part():
    assert AbelianGroup(1, (12,)).primary_part(2) == AbelianGroup.cyclic(4)


def test_homology_of_pair_rejects_non_complex():
    d_in = IntMatrix.from_dense([[1], [0]])
    d_out = IntMatrix.from_dense([[1, 0]])
    with pytest.raises(ContractViolation):
        homology_of_pair(d_in, d_out)


def test_homology_of_pair_torsion():
    d_in = IntMatrix.from_dense([[2]])
    d_out = IntMatrix.zero(0, 1)
    assert homology_of_pair(d_in, d_out) == AbelianGroup.cyclic(2)


def test_laurent_arithmetic():
    q = LaurentPolynomial.monomial(1)
    p = q + q ** -1
    assert p * p == LaurentPolynomial({2: 1, 0: 2, -2: 1})
    assert (p * p).divide_exact(p) == p
    with pytest.raises(ValueError):
        (p + 1).divide_exact(p)
    assert p.substitute_sign() == -p
    assert p.evaluate(2) == Fraction(5, 2)
    assert str(LaurentPolynomial({-1: 1, 3: -2})) == "q^-1 - 2*q^3"


def test_evaluate_series_and_denominators():
    p = LaurentPolynomial({2: 1})  # t in doubled exponents
    assert evaluate_series(p, 2, Fraction(1, 2)) == [1, 1, Fraction(1, 2)]
    assert clear_denominators([Fraction(1, 2), Fraction(1, 3)]) == ([3, 2], 6)
