"""Exponent-vector monomials, the q-matrix and the two bicharacters.

Monomials are plain tuples of non-negative ints (``x^a`` is ``a``); Laurent
monomials are tuples of arbitrary ints.  ``x^a x^b = C(a, b) x^(a+b)`` in
the skew polynomial ring, and ``chi`` is the alternating bicharacter
``C(a, b) / C(b, a)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence, Tuple

from .scalars import Field, QQ

Monomial = Tuple[int, ...]
LaurentMonomial = Tuple[int, ...]
GDegree = tuple

EXPONENT_CAP = 2 ** 31 - 1


class DimensionError(ValueError):
    pass


class QMatrixError(ValueError):
    pass


def as_monomial(exps: Iterable[int], n: int | None = None, cap: int = EXPONENT_CAP) -> Monomial:
    a = tuple(int(e) for e in exps)
    if n is not None and len(a) != n:
        raise DimensionError(f"monomial {a} has length {len(a)}, expected {n}")
    for e in a:
        if e < 0:
            raise ValueError(f"negative exponent in monomial {a}")
        if e > cap:
            raise OverflowError(f"exponent {e} exceeds cap {cap}")
    return a


def one(n: int) -> Monomial:
    return (0,) * n


def _same_length(*monos: Sequence[int]) -> int:
    n = len(monos[0])
    for m in monos[1:]:
        if len(m) != n:
            raise DimensionError(f"length mismatch: {len(monos[0])} vs {len(m)}")
    return n


def mono_mul(a: Monomial, b: Monomial, cap: int = EXPONENT_CAP) -> Monomial:
    """The commutative product ``x^a * x^b = x^(a+b)``."""
    _same_length(a, b)
    c = tuple(x + y for x, y in zip(a, b))
    if c and max(c) > cap:
        raise OverflowError(f"exponent overflow multiplying {a} and {b}")
    return c


def divides(b: Monomial, a: Monomial) -> bool:
    """True iff ``x^b | x^a``."""
    _same_length(a, b)
    return all(x <= y for x, y in zip(b, a))


def quotient(a: Monomial, b: Monomial) -> Monomial:
    """``x^a / x^b``; requires ``divides(b, a)``."""
    if not divides(b, a):
        raise ValueError(f"{b} does not divide {a}")
    return tuple(x - y for x, y in zip(a, b))


def lcm(monos: Sequence[Monomial], n: int | None = None) -> Monomial:
    if not monos:
        if n is None:
            raise ValueError("lcm of an empty list needs n")
        return one(n)
    _same_length(*monos)
    return tuple(max(col) for col in zip(*monos))


def gcd(monos: Sequence[Monomial], n: int | None = None) -> Monomial:
    if not monos:
        if n is None:
            raise ValueError("gcd of an empty list needs n")
        return one(n)
    _same_length(*monos)
    return tuple(min(col) for col in zip(*monos))


def total_degree(a: Monomial) -> int:
    return sum(a)


@dataclass(frozen=True, eq=False)
class QMatrix:
    """Commutation data ``x_i x_j = q[i][j] x_j x_i`` plus internal degrees."""

    entries: tuple
    field: Field = QQ
    degrees: tuple = ()
    _c_cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        F = self.field
        rows = tuple(tuple(F.coerce(v) for v in row) for row in self.entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise QMatrixError("q-matrix must be square")
        for i in range(n):
            if rows[i][i] != F.one:
                raise QMatrixError(f"q[{i + 1}][{i + 1}] must be 1, got {F.format(rows[i][i])}")
            for j in range(n):
                if F.is_zero(rows[i][j]):
                    raise QMatrixError(f"q[{i + 1}][{j + 1}] is zero")
                if F.mul(rows[i][j], rows[j][i]) != F.one:
                    raise QMatrixError(
                        f"q[{i + 1}][{j + 1}] * q[{j + 1}][{i + 1}] != 1 "
                        f"({F.format(rows[i][j])} * {F.format(rows[j][i])})")
        degs = tuple(int(d) for d in self.degrees) if self.degrees else (1,) * n
        if len(degs) != n or any(d <= 0 for d in degs):
            raise QMatrixError("variable degrees must be n positive integers")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "degrees", degs)

    @property
    def n(self) -> int:
        return len(self.entries)

    def q(self, i: int, j: int):
        return self.entries[i][j]

    @classmethod
    def commutative(cls, n: int, field: Field = QQ, degrees=()) -> "QMatrix":
        return cls(tuple(tuple(1 for _ in range(n)) for _ in range(n)), field, tuple(degrees))

    @classmethod
    def from_upper(cls, n: int, upper: dict, field: Field = QQ, degrees=()) -> "QMatrix":
        """Build from ``{(i, j): q_ij}`` for ``i < j`` (0-based); missing pairs commute."""
        rows = [[field.one] * n for _ in range(n)]
        for (i, j), v in upper.items():
            if not (0 <= i < j < n):
                raise QMatrixError(f"upper-triangle key {(i, j)} out of range")
            v = field.coerce(v)
            if field.is_zero(v):
                raise QMatrixError(f"q[{i + 1}][{j + 1}] is zero")
            rows[i][j] = v
            rows[j][i] = field.inv(v)
        return cls(tuple(tuple(r) for r in rows), field, tuple(degrees))

    def __eq__(self, other):
        return (isinstance(other, QMatrix) and self.field == other.field
                and self.entries == other.entries and self.degrees == other.degrees)

    def __hash__(self):
        return hash((self.field, self.entries, self.degrees))

    def is_commutative(self) -> bool:
        return all(v == self.field.one for row in self.entries for v in row)

    def internal_degree(self, a: Monomial) -> int:
        return sum(x * d for x, d in zip(a, self.degrees))


def c_constant(a: Monomial, b: Monomial, Q: QMatrix):
    """``C(a, b) = prod_{i>j} q_ij^(a_i b_j)``."""
    n = Q.n
    if len(a) != n or len(b) != n:
        raise DimensionError(f"monomials of length {len(a)}, {len(b)} in a ring with {n} variables")
    key = (a, b)
    cache = Q._c_cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    F = Q.field
    rows = Q.entries
    val = F.one
    for i in range(1, n):
        ai = a[i]
        if not ai:
            continue
        row = rows[i]
        for j in range(i):
            if b[j]:
                val = F.mul(val, F.pow(row[j], ai * b[j]))
    if len(cache) < 1_000_000:
        cache[key] = val
    return val


def chi_monomials(a: Monomial, b: Monomial, Q: QMatrix):
    """``chi(a, b) = C(a, b) / C(b, a)``; ``x^a x^b = chi(a, b) x^b x^a``."""
    F = Q.field
    return F.div(c_constant(a, b, Q), c_constant(b, a, Q))


def _split(u: LaurentMonomial) -> tuple[Monomial, Monomial]:
    return tuple(max(e, 0) for e in u), tuple(max(-e, 0) for e in u)


def c_extended(u: LaurentMonomial, v: LaurentMonomial, Q: QMatrix):
    """``C`` on Laurent monomials through any decomposition ``u = al - be``,
    ``v = ga - de``; the value does not depend on the decomposition."""
    if len(u) != Q.n or len(v) != Q.n:
        raise DimensionError("Laurent monomial length does not match the ring")
    F = Q.field
    al, be = _split(u)
    ga, de = _split(v)
    num = F.mul(c_constant(al, ga, Q), c_constant(be, de, Q))
    den = F.mul(c_constant(al, de, Q), c_constant(be, ga, Q))
    return F.div(num, den)


def c_extended_from(al: Monomial, be: Monomial, ga: Monomial, de: Monomial, Q: QMatrix):
    """The four-factor value for an explicit decomposition (used to check
    well-definedness)."""
    F = Q.field
    num = F.mul(c_constant(al, ga, Q), c_constant(be, de, Q))
    den = F.mul(c_constant(al, de, Q), c_constant(be, ga, Q))
    return F.div(num, den)


def gdegree(a: Monomial, Q: QMatrix) -> GDegree:
    """Color of ``x^a`` as its action on generators: ``(chi(a, x_j))_j``."""
    n = Q.n
    if len(a) != n:
        raise DimensionError(f"monomial of length {len(a)} in a ring with {n} variables")
    F = Q.field
    rows = Q.entries
    out = []
    for j in range(n):
        val = F.one
        for i in range(n):
            if a[i] and i != j:
                val = F.mul(val, F.pow(rows[i][j], a[i]))
        out.append(val)
    return tuple(out)


def gdegree_mul(g: GDegree, h: GDegree, F: Field) -> GDegree:
    return tuple(F.mul(x, y) for x, y in zip(g, h))


def gdegree_inv(g: GDegree, F: Field) -> GDegree:
    return tuple(F.inv(x) for x in g)


def chi_gdegree(g: GDegree, b: Monomial, Q: QMatrix):
    """``chi(color g, x^b)`` for a color given by its generator action."""
    F = Q.field
    val = F.one
    for j, e in enumerate(b):
        if e:
            val = F.mul(val, F.pow(g[j], e))
    return val
