import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from actionuncertainty.fields import PrimeField, Rationals, field_from_spec
from actionuncertainty.linalg import (determinant, determinant_payloads, diagonalize, exact_rank,
                                      identity_payloads, independent_columns, matmul_payloads,
                                      nullspace, rank_payloads)


def brute_rank(rows, p):
    """Largest subset of rows with no nontrivial vanishing combination."""
    best = 0
    for k in range(1, len(rows) + 1):
        for sub in itertools.combinations(rows, k):
            independent = True
            for coeffs in itertools.product(range(p), repeat=k):
                if any(coeffs) and all(sum(c * r[j] for c, r in zip(coeffs, sub)) % p == 0
                                       for j in range(len(rows[0]))):
                    independent = False
                    break
            if independent:
                best = k
                break
        else:
            break
    return best


def leibniz(ctx, m):
    n = len(m)
    total = ctx.zero()
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ctx.one()
        for i in range(n):
            term = ctx.mul(term, m[i][perm[i]])
        total = ctx.sub(total, term) if inv % 2 else ctx.add(total, term)
    return total


@st.composite
def small_matrix(draw, p):
    r, c = draw(st.integers(1, 5)), draw(st.integers(1, 5))
    return [[draw(st.integers(0, p - 1)) for _ in range(c)] for _ in range(r)]


@st.composite
def rational_matrix(draw, square=False):
    r = draw(st.integers(1, 4))
    c = r if square else draw(st.integers(1, 4))
    val = st.fractions(min_value=-4, max_value=4, max_denominator=3)
    return [[draw(val) for _ in range(c)] for _ in range(r)]


def test_rank_examples():
    gf7 = PrimeField(7)
    assert rank_payloads(gf7, identity_payloads(gf7, 3)) == 3
    circ = [[(1 if (j - i) % 4 in (0, 1) else 0) for j in range(4)] for i in range(4)]
    assert rank_payloads(PrimeField(2), circ) == 3 == brute_rank(circ, 2)
    assert rank_payloads(Rationals(), [[1, -1, 0], [0, 1, -1], [-1, 0, 1]]) == 2


def test_exact_rank_on_values():
    q = Rationals()
    m = [[q(1), q(2)], [q(2), q(4)]]
    assert exact_rank(m) == 1


@pytest.mark.parametrize("p", [2, 3])
@given(data=st.data())
def test_rank_matches_brute_force(p, data):
    m = data.draw(small_matrix(p))
    assert rank_payloads(PrimeField(p), m) == brute_rank(m, p)


@given(rational_matrix())
def test_rank_invariant_under_transpose(m):
    q = Rationals()
    t = [list(col) for col in zip(*m)]
    assert rank_payloads(q, m) == rank_payloads(q, t)


@given(rational_matrix(square=True))
def test_determinant_matches_leibniz(m):
    assert determinant_payloads(Rationals(), m) == leibniz(Rationals(), m)


def test_cyclotomic_determinant():
    c = field_from_spec("Q(zeta_3)")
    w = c.value(c.generator())
    one = c(1)
    m = [[one, one, one], [one, w, w * w], [one, w * w, w]]
    d = determinant(m)
    # (det)^2 = -27 for the 3-point Fourier matrix
    assert d * d == c(-27)
    assert rank_payloads(c, [[v.payload for v in row] for row in m]) == 3


@given(rational_matrix())
def test_diagonalize_witness(m):
    q = Rationals()
    qm, pm, r = diagonalize(q, m)
    d = matmul_payloads(q, matmul_payloads(q, qm, m), pm)
    assert all(d[i][j] == (1 if i == j and i < r else 0) for i in range(len(m)) for j in range(len(m[0])))
    assert determinant_payloads(q, qm) != 0 and determinant_payloads(q, pm) != 0
    assert r == rank_payloads(q, m)


@pytest.mark.parametrize("p", [2, 3, 5])
@given(data=st.data())
def test_nullspace_and_columns(p, data):
    fc = PrimeField(p)
    m = data.draw(small_matrix(p))
    ncols = len(m[0])
    basis = nullspace(fc, m, ncols)
    r = rank_payloads(fc, m)
    assert len(basis) == ncols - r
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) % p == 0 for row in m)
    if basis:
        assert rank_payloads(fc, basis) == len(basis)
    cols = independent_columns(fc, m)
    assert len(cols) == r
    sub = [[row[j] for j in cols] for row in m]
    assert rank_payloads(fc, sub) == r


def test_nonsquare_determinant_rejected():
    with pytest.raises(ValueError):
        determinant_payloads(Rationals(), [[Fraction(1), Fraction(2)]])
