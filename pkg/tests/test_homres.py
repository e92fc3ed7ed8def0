import random
from math import comb

import pytest

from skewtaylor.errors import BudgetExceeded
from skewtaylor.homres import (
    DeviationError, InexactSeriesError, QuotientAlgebra, compare_poincare_quotient, deviations,
    minimal_resolution_of_k, pi2_multidegrees, poincare_quotient, poincare_series, rate_bound,
    series_from_deviations,
)
from skewtaylor.qcommute import QMatrix, gdegree
from skewtaylor.scalars import QQ, PrimeField
from skewtaylor.skewpoly import MonomialIdeal
from skewtaylor.taylor import TaylorComplex, betti

from conftest import F101, random_gens, random_qmatrix
from oracles import ModP, Rat, bar_tor


def qplane(q=2, F=QQ):
    return QMatrix.from_upper(2, {(0, 1): F.coerce(q)}, F)


def alg(gens, Q):
    return QuotientAlgebra.from_gens(gens, Q)


def test_quotient_basis():
    S = alg([(2, 0), (1, 1)], qplane())
    assert S.basis_by_degree(3) == [[(0, 0)], [(1, 0), (0, 1)], [(0, 2)], [(0, 3)]]
    assert S.mul_monomials((1, 0), (1, 0)) is None
    assert S.mul_monomials((0, 1), (1, 0)) is None
    assert S.mul_monomials((0, 1), (0, 2)) == (1, (0, 3))


def test_complete_intersection_series():
    S = alg([(2, 0), (0, 2)], qplane())
    P = minimal_resolution_of_k(S, 5, 10)
    assert P.coeffs == [1, 2, 3, 4, 5, 6]
    assert P.exact_through == 5 and all(P.exact)


def test_free_algebra_is_koszul_count():
    # x^5 y^5 z^5 never appears below degree 15, so S looks free through d_max
    for n in (2, 3):
        Q = random_qmatrix(random.Random(n), n)
        S = alg([(5,) * n], Q)
        P = minimal_resolution_of_k(S, n + 1, n + 1)
        assert P.coeffs == [comb(n, i) for i in range(n + 2)]


def test_cyclic_truncated_polynomial():
    S = alg([(3,)], QMatrix.commutative(1))
    P = poincare_series(S, 6)
    assert P.coeffs == [1] * 7


def test_exactness_flags():
    S = alg([(3, 0), (0, 3)], qplane())
    P = minimal_resolution_of_k(S, 5, 6)
    # cubic relations: beta_i lives in degrees up to 1 + 2(i - 1)
    assert rate_bound(S, 3) == 5 and rate_bound(S, 4) == 7
    assert P.exact == [True, True, True, True, False, False]
    assert P.exact_through == 3
    with pytest.raises(InexactSeriesError):
        P.truncated(4)
    with pytest.raises(InexactSeriesError):
        deviations(P, 5)


def test_input_checks():
    with pytest.raises(ValueError):
        minimal_resolution_of_k(alg([(1, 0)], qplane()), 2, 4)
    with pytest.raises(ValueError):
        minimal_resolution_of_k(alg([(2, 0)], qplane()), 4, 3)
    with pytest.raises(BudgetExceeded):
        minimal_resolution_of_k(alg([(2, 0)], qplane()), 4, 10, max_cells=10)


def test_bigraded_support():
    S = alg([(2, 0), (1, 1), (0, 3)], qplane(3))
    P = minimal_resolution_of_k(S, 4, 8)
    for (i, a), b in P.bigraded.items():
        assert i <= sum(a) <= 8
    assert P.coeffs[0] == 1 and P.coeffs[1] == 2


@pytest.mark.parametrize("gens,q", [
    ([(2, 0), (0, 2)], 2),
    ([(2, 0), (1, 1)], 3),
    ([(3, 0), (0, 3)], 2),
    ([(2, 0), (0, 2)], 1),
    ([(2, 0), (1, 1), (0, 2)], -1),
])
def test_bar_complex_oracle(gens, q):
    Q = qplane(q)
    S = alg(gens, Q)
    D = 6
    P = minimal_resolution_of_k(S, D, D)
    oracle = bar_tor(gens, Q.entries, D, Rat())
    got = {k: v for k, v in P.bigraded.items() if sum(k[1]) <= D}
    assert got == oracle


def test_bar_complex_oracle_three_variables_mod_p():
    rng = random.Random(5)
    for _ in range(3):
        Q = random_qmatrix(rng, 3)
        gens = random_gens(rng, 3, s_max=3, e_max=2, min_degree=2)
        gens = [g for g in gens if sum(g) >= 2]
        S = alg(gens, Q)
        D = 4
        P = minimal_resolution_of_k(S, D, D)
        assert P.bigraded == bar_tor(gens, Q.entries, D, ModP(101))


def test_deviations_complete_intersection():
    S = alg([(2, 0), (0, 2)], qplane())
    D = deviations(poincare_series(S, 5))
    assert D.ranks == [2, 2, 0, 0, 0]
    assert D[1] == 2 and D[2] == 2


def test_deviations_free():
    assert deviations([1, 3, 3, 1, 0, 0]).ranks == [3, 0, 0, 0, 0]


def test_deviation_errors():
    with pytest.raises(DeviationError):
        deviations([1, 2, 0])  # (1+2t)/(1+t)^2 = 1 - t^2 + ...
    with pytest.raises(DeviationError):
        deviations([2, 1])


def test_round_trip_on_random_monomial_algebras():
    rng = random.Random(99)
    done = 0
    while done < 12:
        n = rng.randint(1, 3)
        gens = random_gens(rng, n, s_max=4, e_max=2, min_degree=2)
        if any(sum(g) < 2 for g in gens):
            continue
        Q = random_qmatrix(rng, n)
        S = alg(gens, Q)
        P = poincare_series(S, 5)
        D = deviations(P)
        assert series_from_deviations(D.ranks, 5) == P.coeffs[:6]
        assert D[1] == n
        # second deviation counts the minimal relations
        T = TaylorComplex(gens, Q)
        assert D[2] == betti(T).totals()[1] == len(gens)
        done += 1


def test_pi2_multidegrees_distinguish_colors():
    Q = qplane(2)
    two = pi2_multidegrees(alg([(2, 0), (0, 2)], Q))
    three = pi2_multidegrees(alg([(3, 0), (0, 3)], Q))
    assert sorted(a for a, _ in two) == [(0, 2), (2, 0)]
    assert sorted(a for a, _ in three) == [(0, 3), (3, 0)]
    F = QQ
    colors2 = {a: c for a, c in two}
    assert colors2[(2, 0)] == tuple(F.inv(x) for x in gdegree((2, 0), Q)) == (1, QQ.parse("1/4"))
    assert {c for _, c in two}.isdisjoint({c for _, c in three})


def test_pi2_of_free_algebra_is_empty():
    S = QuotientAlgebra(MonomialIdeal([], 2), qplane())
    assert pi2_multidegrees(S) == []
    assert deviations(poincare_series(S, 4)).ranks == [2, 0, 0, 0]


def test_poincare_quotient_extra_variable():
    S2 = alg([(2, 0), (0, 2)], qplane())
    S3 = alg([(2, 0, 0), (0, 2, 0)], QMatrix.from_upper(3, {(0, 1): QQ(2)}))
    assert compare_poincare_quotient(S2, S3, 8)
    assert compare_poincare_quotient(S2, S2, 8)


def test_poincare_quotient_detects_difference():
    S = alg([(2, 0), (0, 2)], qplane())
    T = alg([(2, 0), (1, 1)], qplane())
    assert not compare_poincare_quotient(S, T, 4)
    assert poincare_quotient([1, 2, 3, 4, 5], 2, 4) == [1, 0, 2, 0, 3]


def test_prime_and_rational_agree():
    gens = [(2, 0, 0), (1, 1, 0), (0, 1, 1), (0, 0, 2)]
    P1 = poincare_series(alg(gens, QMatrix.from_upper(3, {(0, 1): QQ(2), (1, 2): QQ(-1)})), 5)
    F = PrimeField(101)
    P2 = poincare_series(alg(gens, QMatrix.from_upper(3, {(0, 1): F(2), (1, 2): F(-1)}, F)), 5)
    assert P1.coeffs == P2.coeffs
    assert F101 == F
