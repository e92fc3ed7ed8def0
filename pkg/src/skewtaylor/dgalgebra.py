"""Color DG algebra product and divided powers on the Taylor complex, with
exhaustive verifiers for the algebra axioms.

For disjoint ``V, W``::

    e_V e_W = e_{V u W} (-1)^sigma(V,W) C(m_V, m_W) C(m_{VuW}, g)^-1 g,
    g = m_V * m_W / m_{V u W} = gcd(m_V, m_W)

and ``e_V e_W = 0`` otherwise.  Ring elements pass across basis elements by
``r e_F = chi(r, m_F) e_F r``.
"""
from __future__ import annotations

import random
from itertools import combinations, product as iproduct
from math import comb

from .qcommute import (
    Monomial, c_constant, chi_monomials, gcd, gdegree, lcm, mono_mul, one, quotient,
)
from .skewpoly import SkewPoly, multiply
from .taylor import TaylorComplex, TaylorElement, _accumulate, members, popcount, to_mask

PAIR_EXHAUSTIVE_MAX_S = 10
TRIPLE_EXHAUSTIVE_MAX_S = 6
DEFAULT_SAMPLES = 2000


class DividedPowerError(ValueError):
    pass


def sigma_vw(V: int, W: int) -> int:
    """``|{(i, j) in V x W : j < i}|``."""
    total = 0
    for j in members(W):
        total += popcount(V >> (j + 1))
    return total


def product_entry(T: TaylorComplex, V: int, W: int):
    """``(target, scalar, carrier)`` with ``e_V e_W = e_target * scalar * carrier``,
    or ``None`` when ``V`` and ``W`` meet."""
    if V & W:
        return None
    U = V | W
    mV, mW, mU = T.mF[V], T.mF[W], T.mF[U]
    g = quotient(mono_mul(mV, mW), mU)
    Fld = T.Q.field
    c = Fld.mul(c_constant(mV, mW, T.Q), Fld.inv(c_constant(mU, g, T.Q)))
    if sigma_vw(V, W) % 2:
        c = Fld.neg(c)
    return U, c, g


def basis_product(V, W, T: TaylorComplex) -> TaylorElement:
    if not isinstance(V, int):
        V = to_mask(V)
    if not isinstance(W, int):
        W = to_mask(W)
    ent = product_entry(T, V, W)
    if ent is None:
        return T.element()
    U, c, g = ent
    return T.element({U: SkewPoly.monomial(T.Q, g, c)})


def element_product(a: TaylorElement, b: TaylorElement) -> TaylorElement:
    """Bilinear product; ``(e_V u)(e_W s) = chi(u, m_W) (e_V e_W) u s``."""
    T = a.T
    if b.T is not T:
        raise ValueError("elements of different complexes")
    Q = T.Q
    Fld = Q.field
    out: dict = {}
    for V, r in a.coords.items():
        for W, s in b.coords.items():
            ent = product_entry(T, V, W)
            if ent is None:
                continue
            U, c, g = ent
            mW = T.mF[W]
            moved = {}
            for u, cu in r.terms.items():
                moved[u] = Fld.mul(cu, chi_monomials(u, mW, Q))
            left = SkewPoly.monomial(Q, g, c)
            poly = multiply(multiply(left, SkewPoly(Q, moved)), s)
            _accumulate(out, U, poly)
    return TaylorElement(T, out)


def left_mul(b: SkewPoly, y: TaylorElement) -> TaylorElement:
    """``b * y`` for a ring element ``b``: ``b e_F s = chi(b, m_F) e_F b s``."""
    T = y.T
    Q = T.Q
    Fld = Q.field
    out: dict = {}
    for F, s in y.coords.items():
        moved = {u: Fld.mul(cu, chi_monomials(u, T.mF[F], Q)) for u, cu in b.terms.items()}
        _accumulate(out, F, multiply(SkewPoly(Q, moved), s))
    return TaylorElement(T, out)


def poly_power(b: SkewPoly, r: int) -> SkewPoly:
    out = SkewPoly.constant(b.ring, 1)
    for _ in range(r):
        out = multiply(out, b)
    return out


def _hom_sign(k: int):
    return -1 if k % 2 else 1


def _check_pair_leibniz(T, V, W) -> bool:
    a, b = T.basis_element(V), T.basis_element(W)
    lhs = T.d(element_product(a, b))
    rhs = element_product(T.d(a), b) + element_product(a, T.d(b)).scale(_hom_sign(popcount(V)))
    return lhs == rhs


def _check_pair_color(T, V, W) -> bool:
    Q = T.Q
    Fld = Q.field
    ab = basis_product(V, W, T)
    ba = basis_product(W, V, T)
    c = chi_monomials(T.mF[V], T.mF[W], Q)
    if (popcount(V) * popcount(W)) % 2:
        c = Fld.neg(c)
    return ab == ba.scale(c)


def _check_triple(T, V, W, X) -> bool:
    a, b, c = (T.basis_element(S) for S in (V, W, X))
    return element_product(element_product(a, b), c) == element_product(a, element_product(b, c))


def _pairs(T, rng, samples):
    full = 1 << T.s
    if T.s <= PAIR_EXHAUSTIVE_MAX_S:
        return ((V, W) for V in range(full) for W in range(full))
    return ((rng.randrange(full), rng.randrange(full)) for _ in range(samples))


def verify_leibniz(T: TaylorComplex, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> bool:
    """``d(ab) = d(a) b + (-1)^|a| a d(b)`` on basis pairs.

    Pairs meeting in two or more indices are skipped: every term of both sides
    is a product of overlapping basis elements, hence zero.
    """
    rng = random.Random(seed)
    for V, W in _pairs(T, rng, samples):
        if popcount(V & W) >= 2:
            continue
        if not _check_pair_leibniz(T, V, W):
            return False
    return True


def verify_color_comm(T: TaylorComplex, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> bool:
    """``e_V e_W = (-1)^{|V||W|} chi(m_V, m_W) e_W e_V``, ``e_V^2 = 0`` for odd
    ``|V|`` and the unit law."""
    rng = random.Random(seed)
    unit = T.unit()
    for V in range(1 << T.s):
        e = T.basis_element(V)
        if element_product(unit, e) != e or element_product(e, unit) != e:
            return False
        if popcount(V) % 2 and not basis_product(V, V, T).is_zero():
            return False
    for V, W in _pairs(T, rng, samples):
        if not _check_pair_color(T, V, W):
            return False
    return True


def _disjoint_triples(s: int):
    # assign each index to V, W, X or none
    for labels in iproduct(range(4), repeat=s):
        V = W = X = 0
        for i, lab in enumerate(labels):
            if lab == 1:
                V |= 1 << i
            elif lab == 2:
                W |= 1 << i
            elif lab == 3:
                X |= 1 << i
        yield V, W, X


def verify_associativity(T: TaylorComplex, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> bool:
    """``(ab)c = a(bc)`` on basis triples.

    Exhaustive over pairwise disjoint triples for small ``s`` (a triple with an
    overlap gives zero on both sides); random triples above the cap.
    """
    if T.s <= TRIPLE_EXHAUSTIVE_MAX_S:
        triples = _disjoint_triples(T.s)
    else:
        rng = random.Random(seed)
        full = 1 << T.s
        triples = ((rng.randrange(full), rng.randrange(full), rng.randrange(full))
                   for _ in range(samples))
    for V, W, X in triples:
        if not _check_triple(T, V, W, X):
            return False
    return True


# ---------------------------------------------------------------- divided powers

def _summands(a: TaylorElement):
    """Validate homogeneity and return ``[(P, coefficient), ...]`` sorted by ``P``."""
    T = a.T
    Q = T.Q
    if a.is_zero():
        raise DividedPowerError("divided powers of zero are not defined here")
    sizes = {popcount(P) for P in a.coords}
    if len(sizes) != 1:
        raise DividedPowerError("element is not homogeneous in homological degree")
    m = sizes.pop()
    if m == 0 or m % 2:
        raise DividedPowerError(f"homological degree {m} is not even and positive")
    degs = set()
    colors = set()
    for P, r in a.coords.items():
        for u in r.terms:
            tot = mono_mul(T.mF[P], u)
            degs.add(Q.internal_degree(tot))
            colors.add(gdegree(tot, Q))
    if len(degs) != 1 or len(colors) != 1:
        raise DividedPowerError("element is not homogeneous in internal degree and color")
    return sorted(a.coords.items(), key=lambda t: members(t[0]))


def divided_power(a: TaylorElement, r: int) -> TaylorElement:
    """``a^(r)`` for homogeneous ``a = sum_P e_P a_P`` of even positive degree:
    the sum over ``r``-element sets ``P_1 < ... < P_r`` of distinct summands of
    ``(e_{P_1} a_{P_1}) ... (e_{P_r} a_{P_r})``.  In particular
    ``e_P^(r) = 0`` for ``r >= 2``."""
    if r < 0:
        raise DividedPowerError("negative divided power")
    summands = _summands(a)
    T = a.T
    if r == 0:
        return T.unit()
    if r == 1:
        return a
    out = T.element()
    for combo in combinations(summands, r):
        prod = T.element({combo[0][0]: combo[0][1]})
        for P, coeff in combo[1:]:
            prod = element_product(prod, T.element({P: coeff}))
            if prod.is_zero():
                break
        out = out + prod
    return out


def d_constant(T: TaylorComplex, P: int) -> Monomial:
    """``d_P = prod_l gcd(m_{i_1..i_l}, m_{i_{l+1}})`` over the sorted members."""
    idx = members(P)
    d = one(T.n)
    for l in range(1, len(idx)):
        head = to_mask(idx[:l])
        d = mono_mul(d, gcd([T.mF[head], T.gens[idx[l]]]))
    return d


def _monomial_left_times_basis(T, u: Monomial, P: int) -> TaylorElement:
    """The element ``x^u e_P``."""
    return left_mul(SkewPoly.monomial(T.Q, u), T.basis_element(P))


def _is_scalar_multiple(x: TaylorElement, y: TaylorElement) -> bool:
    """True iff ``x = c y`` for a nonzero scalar ``c``."""
    if x.is_zero() or y.is_zero() or set(x.coords) != set(y.coords):
        return False
    Fld = x.T.Q.field
    ratio = None
    for F, r in x.coords.items():
        s = y.coords[F]
        if set(r.terms) != set(s.terms):
            return False
        for u, cu in r.terms.items():
            q = Fld.div(cu, s.terms[u])
            if ratio is None:
                ratio = q
            elif q != ratio:
                return False
    return True


def _homogeneous_groups(T: TaylorComplex, max_group: int):
    """Families of even-degree summands ``e_P * (mu / m_P)`` of one multidegree."""
    by_size: dict = {}
    for P in range(1, 1 << T.s):
        k = popcount(P)
        if k % 2 == 0:
            by_size.setdefault(k, []).append(P)
    for k, Ps in sorted(by_size.items()):
        for width in range(2, min(max_group, len(Ps)) + 1):
            for group in combinations(Ps, width):
                yield group


def verify_gamma_axioms(T: TaylorComplex, r_max: int = 3, max_group: int = 3,
                        group_budget: int = 200) -> bool:
    """Check the divided-power identities used for the Taylor complex.

    * ``(a e_P)^(r) = chi(e_P, a)^C(r,2) a^r e_P^(r)`` for monomial ``a``,
    * ``(sum x_i)^(r) = sum_{q_1+..+q_k=r} prod x_i^(q_i)`` on homogeneous sums,
    * ``e_{i_1} ... e_{i_m}`` is a nonzero scalar multiple of ``d_P e_P`` and
      ``d_P^r e_P^(r) = chi(d_P, e_P)^C(r,2) (d_P e_P)^(r)``,
    * ``e_P^(r) = 0`` for ``r >= 2``.
    """
    Q = T.Q
    Fld = Q.field
    n = T.n
    probes = [one(n)] + [tuple(int(i == j) for j in range(n)) for i in range(n)] + list(T.gens)
    even = [P for P in range(1, 1 << T.s) if popcount(P) % 2 == 0]
    for P in even:
        eP = T.basis_element(P)
        mP = T.mF[P]
        for r in range(2, r_max + 1):
            if not divided_power(eP, r).is_zero():
                return False
        for u in probes + [d_constant(T, P)]:
            a = SkewPoly.monomial(Q, u)
            x = left_mul(a, eP)
            for r in range(r_max + 1):
                lhs = divided_power(x, r)
                c = Fld.pow(chi_monomials(mP, u, Q), comb(r, 2))
                rhs = left_mul(poly_power(a, r), divided_power(eP, r)).scale(c)
                if lhs != rhs:
                    return False
        # d_P argument
        dP = d_constant(T, P)
        ordered = T.unit()
        for i in members(P):
            ordered = element_product(ordered, T.basis_element(1 << i))
        dPeP = _monomial_left_times_basis(T, dP, P)
        if not _is_scalar_multiple(ordered, dPeP):
            return False
        dpoly = SkewPoly.monomial(Q, dP)
        for r in range(r_max + 1):
            lhs = left_mul(poly_power(dpoly, r), divided_power(eP, r))
            c = Fld.pow(chi_monomials(dP, mP, Q), comb(r, 2))
            rhs = divided_power(dPeP, r).scale(c)
            if lhs != rhs:
                return False
    # additivity on homogeneous sums
    checked = 0
    for group in _homogeneous_groups(T, max_group):
        if checked >= group_budget:
            break
        checked += 1
        mu = lcm([T.mF[P] for P in group])
        xs = [T.element({P: SkewPoly.monomial(Q, quotient(mu, T.mF[P]))}) for P in group]
        total = T.element()
        for x in xs:
            total = total + x
        powers = [[divided_power(x, q) for q in range(r_max + 1)] for x in xs]
        for r in range(r_max + 1):
            expected = T.element()
            for qs in iproduct(range(r + 1), repeat=len(xs)):
                if sum(qs) != r:
                    continue
                term = T.unit()
                for x_pows, q in zip(powers, qs):
                    term = element_product(term, x_pows[q])
                    if term.is_zero():
                        break
                expected = expected + term
            if divided_power(total, r) != expected:
                return False
    return True


def verify_all(T: TaylorComplex, seed: int = 0) -> dict:
    return {
        "leibniz": verify_leibniz(T, seed),
        "associativity": verify_associativity(T, seed),
        "color_commutativity": verify_color_comm(T, seed),
        "gamma_axioms": verify_gamma_axioms(T),
    }
