import random
from math import comb

import pytest

from skewtaylor.errors import BudgetExceeded, NotMinimalError
from skewtaylor.qcommute import QMatrix, c_constant, gdegree, gdegree_mul, quotient
from skewtaylor.scalars import QQ, PrimeField
from skewtaylor.skewpoly import MonomialIdeal, SkewPoly
from skewtaylor.taylor import (
    TaylorComplex, betti, betti_bound_holds, build_taylor, members, sigma_f_i, strand, to_mask,
    verify_d_squared, verify_resolution,
)

from conftest import random_instances


def qplane(q=2, F=QQ):
    return QMatrix.from_upper(2, {(0, 1): F.coerce(q)}, F)


def test_sigma():
    assert sigma_f_i(to_mask([0, 1]), 0) == 0
    assert sigma_f_i(to_mask([0, 1]), 1) == 1
    assert sigma_f_i(to_mask([1, 4, 6]), 6) == 2
    with pytest.raises(ValueError):
        sigma_f_i(to_mask([0, 1]), 2)


def test_skew_differential_by_hand():
    q = QQ(2)
    Q = qplane(q)
    T = build_taylor([(2, 0), (1, 1)], Q)
    d12 = T.d(T.basis_element([0, 1]))
    x = SkewPoly.monomial(Q, (1, 0), q)
    y = SkewPoly.monomial(Q, (0, 1), -1)
    assert d12 == T.element({to_mask([1]): x, to_mask([0]): y})


def test_commutative_differential_by_hand():
    Q = QMatrix.commutative(2)
    T = build_taylor([(2, 0), (1, 1)], Q)
    d12 = T.d(T.basis_element([0, 1]))
    assert d12 == T.element({to_mask([1]): SkewPoly.monomial(Q, (1, 0)),
                             to_mask([0]): SkewPoly.monomial(Q, (0, 1), -1)})


def test_single_generator():
    Q = qplane()
    T = build_taylor([(1, 2)], Q)
    assert T.d(T.basis_element([0])) == T.element({0: SkewPoly.monomial(Q, (1, 2))})
    assert verify_resolution(T)
    assert betti(T).totals() == [1, 1]


def test_rejects_bad_input():
    Q = qplane()
    with pytest.raises(NotMinimalError):
        build_taylor(MonomialIdeal([(2, 0), (2, 1)]), Q)
    with pytest.raises(NotMinimalError):
        TaylorComplex([(2, 0), (2, 1)], Q)
    with pytest.raises(ValueError):
        TaylorComplex([], Q)
    with pytest.raises(BudgetExceeded):
        TaylorComplex([(i, 6 - i) for i in range(7)], Q, max_s=6)


@pytest.mark.parametrize("gens,expected", [
    ([(2, 0), (1, 1)], [1, 2, 1]),
    ([(1, 1, 0), (0, 1, 1), (1, 0, 1)], [1, 3, 2]),
    ([(2, 0), (0, 2)], [1, 2, 1]),
])
def test_resolution_and_betti(gens, expected):
    n = len(gens[0])
    for Q in (QMatrix.commutative(n), QMatrix.from_upper(n, {(0, 1): QQ(2)})):
        T = build_taylor(gens, Q)
        assert verify_d_squared(T)
        assert verify_resolution(T)
        table = betti(T)
        assert table.totals() == expected
        assert betti_bound_holds(table, T.s)


def test_h0_matches_standard_monomials():
    Q = QMatrix.commutative(3)
    gens = [(1, 1, 0), (0, 1, 1), (1, 0, 1)]
    T = build_taylor(gens, Q)
    I = MonomialIdeal(gens)
    for alpha in [(0, 0, 0), (1, 0, 0), (0, 0, 1), (1, 1, 0), (1, 1, 1)]:
        h = strand(T, alpha).homology_dims()
        assert h[0] == (0 if alpha in [(1, 1, 0), (1, 1, 1)] else 1)
        assert not any(h[1:])
    assert verify_resolution(T, I)


def test_strand_bases():
    Q = qplane()
    T = build_taylor([(2, 0), (1, 1)], Q)
    S = strand(T, (0, 0))
    assert S.bases == [[0]]
    S = strand(T, (2, 1))
    assert S.bases == [[0], [1, 2], [3]]
    S = strand(T, (0, 5))
    assert S.bases == [[0]]


def test_strand_clamping_is_isomorphism():
    """Past the top lcm a strand keeps its shape and ranks; its matrices may be
    rescaled by the basis change ``x^(alpha - m_F)`` but homology agrees."""
    for gens, Q in random_instances(11, 15, n_max=3, s_max=4):
        T = TaylorComplex(gens, Q)
        top = T.mF[T.full]
        rng = random.Random(hash(tuple(gens)) & 0xffff)
        for _ in range(4):
            alpha = tuple(t + rng.randint(0, 3) for t in top)
            clamp = tuple(min(a, t) for a, t in zip(alpha, top))
            A, B = strand(T, alpha), strand(T, clamp)
            assert A.bases == B.bases
            assert [A.rank(i) for i in range(1, len(A.bases))] == [B.rank(i) for i in range(1, len(B.bases))]
            assert A.squares_to_zero() and B.squares_to_zero()


def test_differential_is_homogeneous():
    for gens, Q in random_instances(5, 20, n_max=4, s_max=4):
        T = TaylorComplex(gens, Q)
        F = Q.field
        for i in range(1, T.s + 1):
            for Fm in T.bases[i]:
                for G, c, mon in T.boundary_terms(Fm):
                    assert quotient(T.mF[Fm], T.mF[G]) == mon
                    assert gdegree_mul(T.gdeg(G), gdegree(mon, Q), F) == T.gdeg(Fm)
                    assert c == F.inv(c_constant(T.mF[G], mon, Q)) or c == F.neg(F.inv(c_constant(T.mF[G], mon, Q)))


def test_betti_multidegrees_are_lcms():
    for gens, Q in random_instances(9, 25, n_max=4, s_max=5):
        T = TaylorComplex(gens, Q)
        table = betti(T)
        assert table[(0, (0,) * T.n)] == 1
        for (i, alpha), b in table.items():
            assert any(T.mF[F] == alpha for F in T.bases[i])
        assert betti_bound_holds(table, T.s)
        assert all(b <= comb(T.s, i) for i, b in enumerate(table.totals()))


def test_random_complexes_resolve():
    for gens, Q in random_instances(2024, 30):
        T = TaylorComplex(gens, Q)
        assert verify_d_squared(T)
        assert verify_resolution(T)


def test_rationals_and_prime_agree_on_betti():
    gens = [(2, 1, 0), (0, 2, 1), (1, 0, 2), (1, 1, 1)]
    for F in (QQ, PrimeField(101)):
        Q = QMatrix.from_upper(3, {(0, 1): F.coerce(2), (1, 2): F.coerce(3)}, F)
        T = TaylorComplex(gens, Q)
        assert verify_resolution(T)
        assert betti(T).totals(5) == betti(TaylorComplex(gens, QMatrix.commutative(3))).totals(5)


def test_differential_matrix_shape():
    T = build_taylor([(2, 0), (1, 1)], qplane())
    M = T.differential_matrix(2)
    assert len(M) == 2 and len(M[0]) == 1
    with pytest.raises(ValueError):
        T.differential_matrix(3)
    assert [members(F) for F in T.bases[1]] == [(0,), (1,)]
