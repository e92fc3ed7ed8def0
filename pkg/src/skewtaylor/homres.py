"""Truncated minimal resolution of k over S = R/I, Poincare series and
deviations (ranks of the homotopy Lie algebra).

The resolution is built multidegree by multidegree: the generators of ``F_i``
in multidegree ``alpha`` are a complement, inside ``ker(d_{i-1})_alpha``, of
the submodule generated by the generators of ``F_i`` already found in lower
multidegrees.  Free modules are right ``S``-modules.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from math import comb

from . import linalg
from .errors import BudgetExceeded
from .qcommute import (
    Monomial, QMatrix, c_constant, gdegree, gdegree_inv, mono_mul, one, quotient, total_degree,
)
from .skewpoly import MonomialIdeal, contains

MAX_CELLS = 2_000_000


class InexactSeriesError(ValueError):
    pass


class DeviationError(ValueError):
    pass


class QuotientAlgebra:
    """``S = k_q[x]/I`` with its monomial basis (standard monomials)."""

    def __init__(self, I: MonomialIdeal, Q: QMatrix):
        if I.n != Q.n:
            raise ValueError("ideal and ring have different numbers of variables")
        self.I = I
        self.Q = Q
        self.n = Q.n
        self._in_basis: dict = {}

    @classmethod
    def from_gens(cls, gens, Q: QMatrix) -> "QuotientAlgebra":
        return cls(MonomialIdeal(gens, Q.n), Q)

    def in_basis(self, a: Monomial) -> bool:
        hit = self._in_basis.get(a)
        if hit is None:
            hit = self._in_basis[a] = not contains(self.I, a)
        return hit

    def basis_by_degree(self, D: int) -> list[list[Monomial]]:
        out = [[] for _ in range(D + 1)]
        for a in monomials_up_to(self.n, D):
            if self.in_basis(a):
                out[total_degree(a)].append(a)
        return out

    def mul_monomials(self, a: Monomial, b: Monomial):
        """``x^a x^b`` in ``S``: ``(scalar, a+b)`` or ``None`` if it lies in ``I``."""
        c = mono_mul(a, b)
        if not self.in_basis(c):
            return None
        return c_constant(a, b, self.Q), c

    def relation_degree(self) -> int:
        return max(2, self.I.max_degree())


def monomials_up_to(n: int, D: int):
    """Exponent vectors of total degree ``<= D`` ordered by degree, then lex."""
    out = []
    for d in range(D + 1):
        out.extend(sorted(_compositions(n, d), reverse=True))
    return out


def _compositions(n: int, d: int):
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(n - 1, d - first):
            yield (first,) + rest


@dataclass
class PSeries:
    """Truncated Poincare series ``sum beta_i t^i``; ``exact_through`` is the
    largest index whose coefficient (and all below) is certified."""

    coeffs: list
    exact_through: int
    bigraded: dict = field(default_factory=dict)
    exact: list = field(default_factory=list)

    def __post_init__(self):
        if not self.exact:
            self.exact = [i <= self.exact_through for i in range(len(self.coeffs))]

    def truncated(self, K: int) -> list:
        if K > self.exact_through:
            raise InexactSeriesError(f"series is certified only through t^{self.exact_through}")
        return list(self.coeffs[:K + 1])


@dataclass
class DeviationRanks:
    ranks: list
    exact_through: int

    def __getitem__(self, i):
        """``rank pi^i`` (1-based)."""
        return self.ranks[i - 1]


def rate_bound(S: QuotientAlgebra, i: int) -> int:
    """Largest total degree a generator of ``F_i`` can have."""
    if i == 0:
        return 0
    return 1 + (S.relation_degree() - 1) * (i - 1)


def _standard_cofactors(alpha, S):
    """``[(deg, b)]`` with ``deg + b = alpha`` and ``x^b`` a standard monomial,
    ordered by ``deg``."""
    out = []
    for deg in iproduct(*(range(a + 1) for a in alpha)):
        b = quotient(alpha, deg)
        if S.in_basis(b):
            out.append((deg, b))
    return out


def _module_basis(index, cofactors):
    """Basis ``[(k, b)]`` of ``(F)_alpha``: generator ``k`` times ``x^b``, by ``k``."""
    basis = []
    for deg, b in cofactors:
        for k in index.get(deg, ()):
            basis.append((k, b))
    basis.sort()
    return basis


def _image_vector(image, b, sidx, S, Fld, size):
    v = [Fld.zero] * size
    for (k2, b2), c in image.items():
        prod = S.mul_monomials(b2, b)
        if prod is None:
            continue
        c2, bb = prod
        r = sidx[(k2, bb)]
        v[r] = Fld.add(v[r], Fld.mul(c, c2))
    return v


def minimal_resolution_of_k(S: QuotientAlgebra, i_max: int, d_max: int,
                            max_cells: int = MAX_CELLS) -> PSeries:
    """Bigraded Betti numbers ``beta_{i,alpha}`` of ``k`` over ``S`` for
    ``i <= i_max`` and ``|alpha| <= d_max``."""
    if any(total_degree(g) < 2 for g in S.I.mingens):
        raise ValueError("the ideal must be generated in degrees >= 2")
    if d_max < i_max:
        raise ValueError("d_max must be at least i_max")
    Q = S.Q
    Fld = Q.field
    n = S.n
    alphas = monomials_up_to(n, d_max)
    if len(alphas) * (i_max + 1) > max_cells:
        raise BudgetExceeded(f"{len(alphas)} multidegrees x {i_max + 1} degrees exceeds {max_cells}")
    cofactors = {alpha: _standard_cofactors(alpha, S) for alpha in alphas}

    # gens[i] = list of (multidegree, image) with image {(k, b): coeff} in F_{i-1};
    # index[i] maps a multidegree to the generator numbers living there
    zero = one(n)
    gens = [[(zero, None)]]
    index = [{zero: [0]}]
    bigraded = {(0, zero): 1}
    for i in range(1, i_max + 1):
        prev = gens[i - 1]
        cur: list = []
        cur_index: dict = {}
        for alpha in alphas:
            if alpha == zero:
                continue
            cof = cofactors[alpha]
            src = _module_basis(index[i - 1], cof)
            if not src:
                continue
            if i == 1:
                kernel = [[Fld.one]]  # augmentation kills S_+
            else:
                tgt = _module_basis(index[i - 2], cof)
                if tgt:
                    tidx = {key: r for r, key in enumerate(tgt)}
                    cols = [_image_vector(prev[k][1], b, tidx, S, Fld, len(tgt)) for k, b in src]
                    M = [[cols[c][r] for c in range(len(src))] for r in range(len(tgt))]
                    kernel = linalg.nullspace(M, len(src), Fld)
                else:
                    kernel = [[Fld.one if j == c else Fld.zero for j in range(len(src))]
                              for c in range(len(src))]
            if not kernel:
                continue
            sidx = {key: r for r, key in enumerate(src)}
            span = []
            for deg, b in cof:
                if deg == alpha:
                    continue
                for k in cur_index.get(deg, ()):
                    v = _image_vector(cur[k][1], b, sidx, S, Fld, len(src))
                    if any(not Fld.is_zero(x) for x in v):
                        span.append(v)
            new = linalg.extend_basis(span, kernel, len(src), Fld)
            for idx in new:
                vec = kernel[idx]
                image = {src[r]: Fld.coerce(x) for r, x in enumerate(vec) if not Fld.is_zero(Fld.coerce(x))}
                cur_index.setdefault(alpha, []).append(len(cur))
                cur.append((alpha, image))
            if new:
                bigraded[(i, alpha)] = len(new)
        gens.append(cur)
        index.append(cur_index)
    coeffs = [len(g) for g in gens]
    exact = [rate_bound(S, i) <= d_max for i in range(i_max + 1)]
    exact_through = -1
    for i, ok in enumerate(exact):
        if not ok:
            break
        exact_through = i
    return PSeries(coeffs, exact_through, bigraded, exact)


def poincare_series(S: QuotientAlgebra, K: int) -> PSeries:
    """Series certified through ``t^K`` with the smallest sufficient window."""
    d_max = max(K, rate_bound(S, K))
    return minimal_resolution_of_k(S, K, d_max)


def _series_mul(a: list, b: list, N: int) -> list:
    out = [0] * (N + 1)
    for i, x in enumerate(a[:N + 1]):
        if x:
            for j, y in enumerate(b[:N + 1 - i]):
                out[i + j] += x * y
    return out


def _binomial_power(j: int, e: int, sign: int, N: int) -> list:
    """Coefficients of ``(1 + sign t^j)^e`` for integer ``e`` (negative allowed)."""
    out = [0] * (N + 1)
    for k in range(N // j + 1):
        if e >= 0:
            c = comb(e, k)
        else:
            c = (-1) ** k * comb(-e + k - 1, k)
        out[j * k] = c * sign ** k
    return out


def series_from_deviations(eps: list, N: int) -> list:
    """``prod_odd (1+t^j)^eps_j / prod_even (1-t^j)^eps_j`` through ``t^N``."""
    out = [1] + [0] * N
    for j, e in enumerate(eps, start=1):
        if j > N or not e:
            continue
        factor = _binomial_power(j, e, 1, N) if j % 2 else _binomial_power(j, -e, -1, N)
        out = _series_mul(out, factor, N)
    return out


def deviations(P, K: int | None = None) -> DeviationRanks:
    """Factor ``P`` as the product formula and read off ``eps_1..eps_K``."""
    if isinstance(P, PSeries):
        limit = P.exact_through
        coeffs = list(P.coeffs)
    else:
        coeffs = list(P)
        limit = len(coeffs) - 1
    if K is None:
        K = limit
    if K > limit:
        raise InexactSeriesError(f"series is certified only through t^{limit}, asked for {K}")
    if not coeffs or coeffs[0] != 1:
        raise DeviationError("a Poincare series starts with 1")
    resid = coeffs[:K + 1]
    eps = []
    for j in range(1, K + 1):
        e = resid[j]
        if e < 0:
            raise DeviationError(f"negative deviation {e} in degree {j}")
        eps.append(e)
        if e:
            if j % 2:
                factor = _binomial_power(j, -e, 1, K)
            else:
                factor = _binomial_power(j, e, -1, K)
            resid = _series_mul(resid, factor, K)
    return DeviationRanks(eps, K)


def pi2_multidegrees(S: QuotientAlgebra, d_max: int | None = None):
    """Multidegrees and colors of a basis of ``pi^2(S)``.

    Multigraded second deviations: ``beta_{2,alpha}`` minus the exterior
    square of the degree-one part.  The class dual to a relation of
    multidegree ``alpha`` carries the inverse color of ``x^alpha``.
    """
    need = rate_bound(S, 2)
    if d_max is None:
        d_max = need
    if d_max < need:
        raise InexactSeriesError(f"d_max = {d_max} does not cover degree-2 generators (need {need})")
    P = minimal_resolution_of_k(S, 2, max(d_max, 2))
    lin = []
    for (i, a), b in P.bigraded.items():
        if i == 1:
            lin.extend([a] * b)
    wedge: dict = {}
    for x in range(len(lin)):
        for y in range(x + 1, len(lin)):
            a = mono_mul(lin[x], lin[y])
            wedge[a] = wedge.get(a, 0) + 1
    out = []
    for (i, a), b in sorted(P.bigraded.items()):
        if i != 2:
            continue
        mult = b - wedge.get(a, 0)
        if mult < 0:
            raise DeviationError(f"negative second deviation in multidegree {a}")
        color = gdegree_inv(gdegree(a, S.Q), S.Q.field)
        out.extend([(a, color)] * mult)
    return out


def poincare_quotient(P: list, nvars: int, K: int) -> list:
    """Coefficients of ``P(t) / (1+t)^nvars`` through ``t^K``."""
    return _series_mul(list(P), _binomial_power(1, -nvars, 1, K), K)


def compare_poincare_quotient(S1: QuotientAlgebra, S2: QuotientAlgebra, K: int,
                              P1: PSeries | None = None, P2: PSeries | None = None) -> bool:
    P1 = P1 or poincare_series(S1, K)
    P2 = P2 or poincare_series(S2, K)
    a = poincare_quotient(P1.truncated(K), S1.n, K)
    b = poincare_quotient(P2.truncated(K), S2.n, K)
    return a == b
