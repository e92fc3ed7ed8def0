"""Slow, independently coded reference computations used only by the tests.

Nothing here imports the package's algorithms; scalars are plain Fractions or
ints mod p and all linear algebra is a local Gaussian elimination.
"""
from fractions import Fraction
from itertools import combinations, permutations, product


# ------------------------------------------------------------------ scalars

class ModP:
    def __init__(self, p):
        self.p = p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        return pow(a, self.p - 2, self.p)

    def norm(self, a):
        return a % self.p


class Rat:
    def mul(self, a, b):
        return Fraction(a) * Fraction(b)

    def inv(self, a):
        return 1 / Fraction(a)

    def norm(self, a):
        return Fraction(a)


def rank(rows, norm, inv):
    """Plain row reduction; ``rows`` is a list of lists."""
    M = [[norm(x) for x in r] for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(M)) if M[k][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        iv = inv(M[r][c])
        M[r] = [norm(x * iv) for x in M[r]]
        for k in range(len(M)):
            if k != r and M[k][c] != 0:
                f = M[k][c]
                M[k] = [norm(a - f * b) for a, b in zip(M[k], M[r])]
        r += 1
        if r == len(M):
            break
    return r


# ------------------------------------------------------------- swap oracle

def swap_constant(a, b, q, ops):
    """Scalar from sorting the letter word of ``x^a x^b`` by adjacent swaps.

    Each letter is a variable index; the word is ``x_1^a1 .. x_n^an`` followed by
    ``x_1^b1 .. x_n^bn``.  Swapping ``x_i x_j`` with ``i > j`` into ``x_j x_i``
    costs ``q[i][j]``.
    """
    word = [i for i, e in enumerate(a) for _ in range(e)] + [i for i, e in enumerate(b) for _ in range(e)]
    c = ops.norm(1)
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            i, j = word[k], word[k + 1]
            if i > j:
                c = ops.mul(c, q[i][j])
                word[k], word[k + 1] = j, i
                changed = True
    return c


# ---------------------------------------------------- classical Taylor (q = 1)

def _lcm(ms, n):
    out = [0] * n
    for m in ms:
        out = [max(x, y) for x, y in zip(out, m)]
    return tuple(out)


def classical_taylor(gens):
    """Commutative Taylor data keyed by sorted index tuples.

    Returns ``(lcms, boundary)`` with ``boundary[F] = {G: (sign, monomial)}``.
    """
    n = len(gens[0])
    s = len(gens)
    subsets = [F for k in range(s + 1) for F in combinations(range(s), k)]
    lcms = {F: _lcm([gens[i] for i in F], n) for F in subsets}
    boundary = {}
    for F in subsets:
        terms = {}
        for pos, i in enumerate(F):
            G = F[:pos] + F[pos + 1:]
            mon = tuple(x - y for x, y in zip(lcms[F], lcms[G]))
            terms[G] = ((-1) ** pos, mon)
        boundary[F] = terms
    return lcms, boundary


def classical_product(gens, V, W):
    """The classical Taylor product ``e_V e_W = sign * (m_V m_W / m_{V u W}) e_{V u W}``."""
    if set(V) & set(W):
        return None
    n = len(gens[0])
    U = tuple(sorted(V + W))
    mV, mW, mU = (_lcm([gens[i] for i in X], n) for X in (V, W, U))
    # sign of the shuffle that sorts V followed by W
    inv = sum(1 for v in V for w in W if w < v)
    mon = tuple(a + b - c for a, b, c in zip(mV, mW, mU))
    return U, (-1) ** inv, mon


def classical_betti(gens):
    """``{(i, multidegree): beta}`` from ``T (x) k`` over the rationals."""
    lcms, boundary = classical_taylor(gens)
    by_mu = {}
    for F, m in lcms.items():
        by_mu.setdefault(m, []).append(F)
    out = {}
    ops = Rat()
    for mu, Fs in by_mu.items():
        deg = {}
        for F in Fs:
            deg.setdefault(len(F), []).append(F)
        ranks = {}
        for i in deg:
            if i - 1 not in deg:
                continue
            cols, rows = deg[i], deg[i - 1]
            M = [[0] * len(cols) for _ in rows]
            for c, F in enumerate(cols):
                for r, G in enumerate(rows):
                    if G in boundary[F]:
                        M[r][c] = boundary[F][G][0]
            ranks[i] = rank(M, ops.norm, ops.inv)
        for i, Fs_i in deg.items():
            b = len(Fs_i) - ranks.get(i, 0) - ranks.get(i + 1, 0)
            if b:
                out[(i, mu)] = b
    return out


# ----------------------------------------------------------- bar complex

def _standard(a, gens):
    return not any(all(g <= x for g, x in zip(m, a)) for m in gens)


def _c(a, b, q, ops):
    c = ops.norm(1)
    n = len(a)
    for i in range(n):
        for j in range(i):
            e = a[i] * b[j]
            if e:
                c = ops.mul(c, ops.norm(q[i][j]) ** e if isinstance(ops, Rat) else pow(q[i][j], e, ops.p))
    return c


def _tuples(alpha, pieces):
    """Ordered tuples of pieces (nonzero multidegrees) summing to ``alpha``."""
    if not any(alpha):
        yield ()
        return
    for p in pieces:
        if all(x <= y for x, y in zip(p, alpha)):
            rest = tuple(y - x for x, y in zip(p, alpha))
            for t in _tuples(rest, pieces):
                yield (p,) + t


def bar_tor(gens, q, max_degree, ops=None):
    """``{(i, alpha): dim Tor_i(k, k)_alpha}`` from the normalized bar complex of
    ``S = k_q[x]/(gens)`` for ``|alpha| <= max_degree``."""
    ops = ops or Rat()
    n = len(q)
    alphas = [a for a in product(range(max_degree + 1), repeat=n) if sum(a) <= max_degree]
    out = {}
    for alpha in alphas:
        if not any(alpha):
            out[(0, alpha)] = 1
            continue
        pieces = [p for p in alphas if any(p) and all(x <= y for x, y in zip(p, alpha)) and _standard(p, gens)]
        chains = {}
        for t in _tuples(alpha, pieces):
            chains.setdefault(len(t), []).append(t)
        top = max(chains, default=0)
        ranks = {}
        for i in range(2, top + 1):
            src, tgt = chains.get(i, []), chains.get(i - 1, [])
            if not src or not tgt:
                continue
            idx = {t: k for k, t in enumerate(tgt)}
            M = [[0] * len(src) for _ in tgt]
            for col, t in enumerate(src):
                for j in range(i - 1):
                    prod_ = tuple(x + y for x, y in zip(t[j], t[j + 1]))
                    if not _standard(prod_, gens):
                        continue
                    c = _c(t[j], t[j + 1], q, ops)
                    if j % 2:
                        c = ops.norm(-c)
                    r = idx[t[:j] + (prod_,) + t[j + 2:]]
                    M[r][col] = ops.norm(M[r][col] + c)
            ranks[i] = rank(M, ops.norm, ops.inv)
        for i in range(1, top + 1):
            d = len(chains.get(i, [])) - ranks.get(i, 0) - ranks.get(i + 1, 0)
            if d:
                out[(i, alpha)] = d
    return out


# ------------------------------------------------------- lattice iso oracle

def _c_ops(a, b, q, mul, one, power):
    c = one
    for i in range(len(a)):
        for j in range(i):
            if a[i] * b[j]:
                c = mul(c, power(q[i][j], a[i] * b[j]))
    return c


def _color(a, q, mul, one, power):
    n = len(q)
    out = []
    for j in range(n):
        c = one
        for i in range(n):
            if a[i] and i != j:
                c = mul(c, power(q[i][j], a[i]))
        out.append(c)
    return tuple(out)


def color_iso_exists(gens1, q1, gens2, q2, variable_map, mul, one, power):
    """Brute force over atom bijections, straight from the definitions: the map
    ``F -> lambda(F)`` must respect divisibility of lcms both ways, carry equal
    colors and match coprime pairs with equal ``C`` weights."""
    s = len(gens1)
    if s != len(gens2):
        return False
    n1, n2 = len(gens1[0]), len(gens2[0])
    subsets = [F for k in range(s + 1) for F in combinations(range(s), k)]
    l1 = {F: _lcm([gens1[i] for i in F], n1) for F in subsets}
    if len(set(l1.values())) != len(set(_lcm([gens2[i] for i in F], n2) for F in subsets)):
        return False
    for lam in permutations(range(s)):
        img = {F: _lcm([gens2[lam[i]] for i in F], n2) for F in subsets}
        ok = True
        for F in subsets:
            c1 = _color(l1[F], q1, mul, one, power)
            c2 = _color(img[F], q2, mul, one, power)
            if any(c1[j] != c2[variable_map[j]] for j in range(n1)):
                ok = False
                break
        if not ok:
            continue
        for F in subsets:
            for G in subsets:
                d1 = all(x <= y for x, y in zip(l1[F], l1[G]))
                d2 = all(x <= y for x, y in zip(img[F], img[G]))
                if d1 != d2:
                    ok = False
                    break
                cop1 = not any(min(x, y) for x, y in zip(l1[F], l1[G]))
                cop2 = not any(min(x, y) for x, y in zip(img[F], img[G]))
                if cop1 != cop2:
                    ok = False
                    break
                if cop1 and l1[F] != l1[G] and (
                        _c_ops(l1[F], l1[G], q1, mul, one, power) != _c_ops(img[F], img[G], q2, mul, one, power)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False
