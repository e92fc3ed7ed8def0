"""Normal-form arithmetic in the skew polynomial ring and monomial ideals."""
from __future__ import annotations

from itertools import product as iproduct
from typing import Iterable, Mapping

from .qcommute import (
    Monomial, QMatrix, as_monomial, c_constant, divides, mono_mul, one,
    total_degree,
)


class RingMismatch(ValueError):
    pass


def deglex_key(a: Monomial):
    return (-total_degree(a), tuple(-e for e in a))


class SkewPoly:
    """Element of ``k_q[x_1..x_n]`` stored as ``{exponent tuple: nonzero scalar}``."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: QMatrix, terms: Mapping[Monomial, object] | None = None):
        self.ring = ring
        F = ring.field
        clean = {}
        if terms:
            for m, c in terms.items():
                c = F.coerce(c)
                if not F.is_zero(c):
                    clean[as_monomial(m, ring.n)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    @classmethod
    def monomial(cls, ring: QMatrix, a: Monomial, coeff=1) -> "SkewPoly":
        return cls(ring, {tuple(a): coeff})

    @classmethod
    def constant(cls, ring: QMatrix, c) -> "SkewPoly":
        return cls(ring, {one(ring.n): c})

    @classmethod
    def zero(cls, ring: QMatrix) -> "SkewPoly":
        return cls._raw(ring, {})

    def _check(self, other):
        if not isinstance(other, SkewPoly):
            raise TypeError(f"cannot combine SkewPoly with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch("polynomials live in different rings")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        self._check(other)
        F = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = F.add(out.get(m, F.zero), c)
            if F.is_zero(v):
                out.pop(m, None)
            else:
                out[m] = v
        return SkewPoly._raw(self.ring, out)

    def __neg__(self):
        F = self.ring.field
        return SkewPoly._raw(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SkewPoly":
        F = self.ring.field
        c = F.coerce(c)
        if F.is_zero(c):
            return SkewPoly.zero(self.ring)
        return SkewPoly._raw(self.ring, {m: F.mul(v, c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SkewPoly):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def leading(self):
        """Largest term in degree-lexicographic order."""
        if not self.terms:
            return None
        m = min(self.terms, key=deglex_key)
        return m, self.terms[m]

    def is_monomial_term(self) -> bool:
        return len(self.terms) == 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]))

    def __repr__(self):
        return f"SkewPoly({self.format()})"

    def format(self, names=None) -> str:
        if not self.terms:
            return "0"
        F = self.ring.field
        n = self.ring.n
        names = names or [f"x{i + 1}" for i in range(n)]
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e)
            cs = F.format(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def multiply(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Bilinear extension of ``x^a x^b = C(a, b) x^(a+b)``."""
    if f.ring != g.ring:
        raise RingMismatch("polynomials live in different rings")
    Q = f.ring
    F = Q.field
    out: dict = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            m = mono_mul(a, b)
            v = F.mul(F.mul(ca, cb), c_constant(a, b, Q))
            prev = out.get(m)
            if prev is not None:
                v = F.add(prev, v)
                if F.is_zero(v):
                    del out[m]
                    continue
            out[m] = v
    return SkewPoly._raw(Q, out)


def minimal_generators(gens: Iterable[Monomial]) -> list[Monomial]:
    """The unique divisibility-minimal generating set, in decreasing lex order
    (``x_1 > x_2 > ...``)."""
    uniq = sorted(set(tuple(g) for g in gens))
    keep = []
    for g in sorted(uniq, key=total_degree):
        if not any(divides(h, g) for h in keep):
            keep.append(g)
    return sorted(keep, reverse=True)


class MonomialIdeal:
    """A monomial ideal given by arbitrary generators; ``mingens`` is canonical."""

    def __init__(self, gens: Iterable[Iterable[int]], n: int | None = None):
        gens = [as_monomial(g, n) for g in gens]
        if gens:
            n0 = len(gens[0])
            if any(len(g) != n0 for g in gens):
                raise ValueError("generators have different lengths")
            n = n0 if n is None else n
        elif n is None:
            raise ValueError("an empty ideal needs the number of variables")
        self.n = n
        self.gens = gens
        self.mingens = minimal_generators(gens)

    @property
    def s(self) -> int:
        return len(self.mingens)

    def is_minimally_given(self) -> bool:
        return len(self.gens) == len(self.mingens) and set(self.gens) == set(self.mingens)

    def __contains__(self, m) -> bool:
        return contains(self, m)

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.mingens == other.mingens and self.n == other.n

    def __hash__(self):
        return hash((self.n, tuple(self.mingens)))

    def __repr__(self):
        return f"MonomialIdeal({self.mingens})"

    def max_degree(self) -> int:
        return max((total_degree(g) for g in self.mingens), default=0)


def contains(I: MonomialIdeal, m: Monomial) -> bool:
    return any(divides(g, m) for g in I.mingens)


def quotient_dim(I: MonomialIdeal, alpha: Monomial) -> int:
    """Dimension of ``(R/I)_alpha``: 1 when ``x^alpha`` is a standard monomial."""
    return 0 if contains(I, tuple(alpha)) else 1


def standard_monomials_in_box(I: MonomialIdeal, bounds: Monomial) -> list[Monomial]:
    return [a for a in iproduct(*(range(b + 1) for b in bounds)) if not contains(I, a)]
