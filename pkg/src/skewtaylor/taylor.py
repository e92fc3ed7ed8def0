"""The skew Taylor complex of a monomial ideal, its multigraded strands and
Betti numbers.

Subsets ``F`` of the generator index set are encoded as bitmasks over
0-based generator indices; ``e_F`` is displayed with 1-based labels.
Elements of ``T_i`` carry their polynomial coefficients on the right.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from math import comb
from typing import Iterable

from . import linalg
from .errors import BudgetExceeded, NotMinimalError
from .qcommute import (
    Monomial, QMatrix, c_constant, gdegree, lcm, one, quotient,
)
from .skewpoly import MonomialIdeal, SkewPoly, minimal_generators, multiply, quotient_dim

MAX_S = 20
HARD_MAX_S = 63


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def subset_label(mask: int) -> str:
    inner = ",".join(str(i + 1) for i in members(mask))
    return "e_{" + inner + "}"


def sigma_f_i(F: int, i: int) -> int:
    """Number of members of ``F`` smaller than ``i`` (``i`` must lie in ``F``)."""
    if not (F >> i) & 1:
        raise ValueError(f"{i} is not a member of {members(F)}")
    return popcount(F & ((1 << i) - 1))


@dataclass(frozen=True)
class TaylorBasis:
    subset: int
    m: Monomial
    internal_degree: int
    multidegree: Monomial
    gdeg: tuple


class TaylorComplex:
    """Free complex with basis ``e_F`` and

    ``d(e_F) = sum_{i in F} e_{F-i} (-1)^sigma(F,i) C(m_{F-i}, m_F/m_{F-i})^-1 m_F/m_{F-i}``.
    """

    def __init__(self, gens: list[Monomial], Q: QMatrix, max_s: int = MAX_S):
        gens = [tuple(g) for g in gens]
        if not gens:
            raise ValueError("the Taylor complex needs at least one generator")
        if any(len(g) != Q.n for g in gens):
            raise ValueError("generator length does not match the ring")
        if len(set(gens)) != len(gens) or sorted(minimal_generators(gens)) != sorted(gens):
            raise NotMinimalError("generators are not minimal; minimalize the ideal first")
        s = len(gens)
        if s > HARD_MAX_S or s > max_s:
            raise BudgetExceeded(f"s = {s} exceeds the cap {min(max_s, HARD_MAX_S)}")
        self.Q = Q
        self.gens = gens
        self.s = s
        self.n = Q.n
        full = 1 << s
        mF = [one(Q.n)] * full
        for mask in range(1, full):
            low = mask & -mask
            i = low.bit_length() - 1
            mF[mask] = lcm([mF[mask ^ low], gens[i]])
        self.mF = mF
        self.bases = [[] for _ in range(s + 1)]
        for mask in range(full):
            self.bases[popcount(mask)].append(mask)
        for b in self.bases:
            b.sort(key=members)
        self.index = [{F: k for k, F in enumerate(b)} for b in self.bases]
        self._diff = {}
        self._gdeg = {}

    @classmethod
    def from_ideal(cls, I: MonomialIdeal, Q: QMatrix, **kw) -> "TaylorComplex":
        return cls(list(I.mingens), Q, **kw)

    @property
    def full(self) -> int:
        return (1 << self.s) - 1

    def basis_info(self, F: int) -> TaylorBasis:
        m = self.mF[F]
        return TaylorBasis(F, m, self.Q.internal_degree(m), m, self.gdeg(F))

    def gdeg(self, F: int):
        g = self._gdeg.get(F)
        if g is None:
            g = self._gdeg[F] = gdegree(self.mF[F], self.Q)
        return g

    def boundary_terms(self, F: int):
        """``[(F - {i}, scalar, monomial), ...]`` for ``d(e_F)``."""
        hit = self._diff.get(F)
        if hit is not None:
            return hit
        Fld = self.Q.field
        mF = self.mF[F]
        terms = []
        for i in members(F):
            G = F & ~(1 << i)
            mG = self.mF[G]
            mon = quotient(mF, mG)
            c = Fld.inv(c_constant(mG, mon, self.Q))
            if sigma_f_i(F, i) % 2:
                c = Fld.neg(c)
            terms.append((G, c, mon))
        self._diff[F] = terms
        return terms

    def differential_matrix(self, i: int):
        """``|bases[i-1]| x |bases[i]|`` matrix of ``SkewPoly`` entries."""
        if not 1 <= i <= self.s:
            raise ValueError(f"no differential in degree {i}")
        rows = self.bases[i - 1]
        cols = self.bases[i]
        M = [[SkewPoly.zero(self.Q) for _ in cols] for _ in rows]
        ridx = self.index[i - 1]
        for k, F in enumerate(cols):
            for G, c, mon in self.boundary_terms(F):
                M[ridx[G]][k] = SkewPoly.monomial(self.Q, mon, c)
        return M

    def element(self, coords=None) -> "TaylorElement":
        return TaylorElement(self, coords or {})

    def basis_element(self, F, coeff=None) -> "TaylorElement":
        if not isinstance(F, int):
            F = to_mask(F)
        if coeff is None:
            coeff = SkewPoly.constant(self.Q, 1)
        elif not isinstance(coeff, SkewPoly):
            coeff = SkewPoly.constant(self.Q, coeff)
        return TaylorElement(self, {F: coeff})

    def unit(self) -> "TaylorElement":
        return self.basis_element(0)

    def d(self, a: "TaylorElement") -> "TaylorElement":
        out: dict = {}
        Q = self.Q
        for F, r in a.coords.items():
            for G, c, mon in self.boundary_terms(F):
                term = multiply(SkewPoly.monomial(Q, mon, c), r)
                _accumulate(out, G, term)
        return TaylorElement(self, out)


def _accumulate(out: dict, key, poly: SkewPoly):
    if poly.is_zero():
        return
    prev = out.get(key)
    if prev is None:
        out[key] = poly
    else:
        s = prev + poly
        if s.is_zero():
            del out[key]
        else:
            out[key] = s


class TaylorElement:
    """``sum_F e_F * r_F`` with right coefficients ``r_F``."""

    __slots__ = ("T", "coords")

    def __init__(self, T: TaylorComplex, coords: dict):
        self.T = T
        self.coords = {F: r for F, r in coords.items() if not r.is_zero()}

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other):
        if not isinstance(other, TaylorElement):
            return NotImplemented
        return self.T is other.T and self.coords == other.coords

    def __add__(self, other):
        if other.T is not self.T:
            raise ValueError("elements of different complexes")
        out = dict(self.coords)
        for F, r in other.coords.items():
            _accumulate(out, F, r)
        return TaylorElement(self.T, out)

    def __neg__(self):
        return TaylorElement(self.T, {F: -r for F, r in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TaylorElement":
        return TaylorElement(self.T, {F: r.scale(c) for F, r in self.coords.items()})

    def right_mul(self, r: SkewPoly) -> "TaylorElement":
        return TaylorElement(self.T, {F: multiply(v, r) for F, v in self.coords.items()})

    def degrees(self) -> set:
        return {popcount(F) for F in self.coords}

    def __repr__(self):
        if not self.coords:
            return "0"
        parts = []
        for F in sorted(self.coords, key=lambda F: (popcount(F), members(F))):
            parts.append(f"{subset_label(F)}*({self.coords[F].format()})")
        return " + ".join(parts)


def build_taylor(I, Q: QMatrix, **kw) -> TaylorComplex:
    """Taylor complex on the minimal generators of ``I`` (a ``MonomialIdeal``
    or a list of exponent vectors, which must already be minimal)."""
    if isinstance(I, MonomialIdeal):
        if not I.is_minimally_given():
            raise NotMinimalError(
                f"ideal given by non-minimal generators {I.gens}; minimal set is {I.mingens}")
        gens = I.gens
    else:
        gens = [tuple(g) for g in I]
    return TaylorComplex(gens, Q, **kw)


def verify_d_squared(T: TaylorComplex) -> bool:
    """Every composite ``d_{i-1} d_i`` vanishes, by exact normal-form products."""
    for i in range(2, T.s + 1):
        for F in T.bases[i]:
            if not T.d(T.d(T.basis_element(F))).is_zero():
                return False
    return True


@dataclass
class StrandComplex:
    """Restriction of the Taylor complex to one multidegree ``alpha``.

    In degree ``i`` the basis is ``e_F * x^(alpha - m_F)`` for ``|F| = i`` and
    ``m_F | x^alpha``; ``matrices[i]`` maps degree ``i`` to degree ``i - 1``.
    """

    alpha: Monomial
    bases: list
    matrices: dict
    field: object

    def dim(self, i: int) -> int:
        return len(self.bases[i]) if 0 <= i < len(self.bases) else 0

    def rank(self, i: int) -> int:
        M = self.matrices.get(i)
        if not M or self.dim(i) == 0 or self.dim(i - 1) == 0:
            return 0
        return linalg.rank(M, self.dim(i), self.field)

    def homology_dims(self) -> list[int]:
        ranks = {i: self.rank(i) for i in range(1, len(self.bases))}
        return [self.dim(i) - ranks.get(i, 0) - ranks.get(i + 1, 0) for i in range(len(self.bases))]

    def squares_to_zero(self) -> bool:
        F = self.field
        for i in range(2, len(self.bases)):
            A, B = self.matrices.get(i - 1), self.matrices.get(i)
            if not A or not B:
                continue
            for r in range(len(A)):
                for c in range(len(B[0])):
                    acc = F.zero
                    for k in range(len(B)):
                        acc = F.add(acc, F.mul(A[r][k], B[k][c]))
                    if not F.is_zero(acc):
                        return False
        return True


def strand(T: TaylorComplex, alpha: Monomial) -> StrandComplex:
    alpha = tuple(alpha)
    if len(alpha) != T.n or any(a < 0 for a in alpha):
        raise ValueError(f"bad multidegree {alpha}")
    Q = T.Q
    Fld = Q.field
    bases = []
    for i in range(T.s + 1):
        bi = [F for F in T.bases[i] if all(x <= y for x, y in zip(T.mF[F], alpha))]
        bases.append(bi)
    while len(bases) > 1 and not bases[-1]:
        bases.pop()
    matrices = {}
    for i in range(1, len(bases)):
        ridx = {G: k for k, G in enumerate(bases[i - 1])}
        M = [[Fld.zero] * len(bases[i]) for _ in bases[i - 1]]
        for k, F in enumerate(bases[i]):
            rest = quotient(alpha, T.mF[F])
            for G, c, mon in T.boundary_terms(F):
                M[ridx[G]][k] = Fld.mul(c, c_constant(mon, rest, Q))
        matrices[i] = M
    return StrandComplex(alpha, bases, matrices, Fld)


def resolution_box(T: TaylorComplex):
    top = T.mF[T.full]
    return iproduct(*(range(e + 1) for e in top))


def verify_resolution(T: TaylorComplex, I: MonomialIdeal | None = None) -> bool:
    """Every strand in the box below ``m_[s]`` is acyclic in positive degrees
    with ``H_0`` equal to the Hilbert function of ``R/I``."""
    if I is None:
        I = MonomialIdeal(T.gens, T.n)
    for alpha in resolution_box(T):
        S = strand(T, alpha)
        if not S.squares_to_zero():
            return False
        h = S.homology_dims()
        if h[0] != quotient_dim(I, alpha) or any(h[1:]):
            return False
    return True


class BettiTable(dict):
    """``{(i, multidegree): beta}`` with zero entries omitted."""

    def totals(self, length: int | None = None) -> list[int]:
        top = max((i for i, _ in self), default=0)
        if length is not None:
            top = max(top, length - 1)
        out = [0] * (top + 1)
        for (i, _), b in self.items():
            out[i] += b
        return out

    def multidegrees(self, i: int) -> list:
        return sorted(a for (j, a), b in self.items() if j == i for _ in range(b))


def reduced_matrix(T: TaylorComplex, i: int, mu: Monomial):
    """Differential of ``T (x) k`` restricted to basis elements with ``m_F = mu``."""
    cols = [F for F in T.bases[i] if T.mF[F] == mu]
    rows = [G for G in T.bases[i - 1] if T.mF[G] == mu] if i >= 1 else []
    ridx = {G: k for k, G in enumerate(rows)}
    Fld = T.Q.field
    M = [[Fld.zero] * len(cols) for _ in rows]
    for k, F in enumerate(cols):
        for G, c, mon in T.boundary_terms(F):
            if G in ridx and not any(mon):
                M[ridx[G]][k] = c
    return rows, cols, M


def betti(T: TaylorComplex) -> BettiTable:
    """Multigraded Betti numbers of ``R/I`` as ``dim H_i(T (x)_R k)``."""
    Fld = T.Q.field
    by_mu: dict = {}
    for F in range(1 << T.s):
        by_mu.setdefault(T.mF[F], []).append(F)
    table = BettiTable()
    for mu, subsets in by_mu.items():
        dims = [0] * (T.s + 2)
        for F in subsets:
            dims[popcount(F)] += 1
        ranks = [0] * (T.s + 2)
        for i in range(1, T.s + 1):
            if dims[i] and dims[i - 1]:
                rows, cols, M = reduced_matrix(T, i, mu)
                ranks[i] = linalg.rank(M, len(cols), Fld)
        for i in range(T.s + 1):
            b = dims[i] - ranks[i] - ranks[i + 1]
            if b:
                table[(i, mu)] = b
    return table


def betti_bound_holds(table: BettiTable, s: int) -> bool:
    return all(b <= comb(s, i) for i, b in enumerate(table.totals()))
