"""LCM lattices, GCD graphs and color-preserving lattice isomorphisms."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations

from .errors import BudgetExceeded
from .homres import QuotientAlgebra, compare_poincare_quotient, poincare_quotient, poincare_series
from .qcommute import (
    Monomial, QMatrix, c_constant, chi_monomials, divides, gcd, gdegree, lcm, one, total_degree,
)
from .skewpoly import MonomialIdeal
from .taylor import MAX_S, TaylorComplex, betti, members, to_mask

MAX_PERMUTATION_S = 9


@dataclass
class LcmLattice:
    Q: QMatrix
    gens: list
    nodes: list
    node_of: list          # subset mask -> node index
    leq: list              # leq[u][v]: nodes[u] divides nodes[v]
    atoms: list            # node index of each generator
    node_gdeg: list
    node_idegree: list

    @property
    def s(self) -> int:
        return len(self.gens)

    def join(self, u: int, v: int) -> int:
        return self.index[lcm([self.nodes[u], self.nodes[v]])]

    @cached_property
    def index(self) -> dict:
        return {m: k for k, m in enumerate(self.nodes)}

    def bottom(self) -> int:
        return self.index[one(self.Q.n)]


def build_lcm_lattice(I, Q: QMatrix, max_s: int = MAX_S) -> LcmLattice:
    if isinstance(I, MonomialIdeal):
        gens = list(I.gens if I.is_minimally_given() else I.mingens)
    else:
        gens = [tuple(g) for g in I]
    s = len(gens)
    if s > max_s:
        raise BudgetExceeded(f"s = {s} exceeds the cap {max_s}")
    mF = [one(Q.n)] * (1 << s)
    for mask in range(1, 1 << s):
        low = mask & -mask
        mF[mask] = lcm([mF[mask ^ low], gens[low.bit_length() - 1]])
    nodes = sorted(set(mF), key=lambda m: (total_degree(m), m))
    index = {m: k for k, m in enumerate(nodes)}
    node_of = [index[m] for m in mF]
    leq = [[divides(a, b) for b in nodes] for a in nodes]
    atoms = [index[g] for g in gens]
    return LcmLattice(Q, gens, nodes, node_of, leq, atoms,
                      [gdegree(m, Q) for m in nodes], [Q.internal_degree(m) for m in nodes])


@dataclass
class GcdGraph:
    lattice: LcmLattice
    edges: dict            # (u, v) -> weight C(nodes[u], nodes[v]) for coprime u != v

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def to_edge_list(self) -> str:
        """Plain-text export: node lines then directed weighted edge lines."""
        L = self.lattice
        Fld = L.Q.field
        lines = [f"# gcd graph: {len(L.nodes)} nodes, {len(self.edges)} directed edges, field {Fld.descriptor()}"]
        for k, m in enumerate(L.nodes):
            color = ",".join(Fld.format(c) for c in L.node_gdeg[k])
            lines.append(f"node {k} {','.join(map(str, m))} deg={L.node_idegree[k]} color={color}")
        for (u, v) in sorted(self.edges):
            lines.append(f"edge {u} {v} {Fld.format(self.edges[(u, v)])}")
        return "\n".join(lines) + "\n"


def build_gcd_graph(L: LcmLattice, Q: QMatrix | None = None) -> GcdGraph:
    Q = Q or L.Q
    edges = {}
    nodes = L.nodes
    for u, a in enumerate(nodes):
        for v, b in enumerate(nodes):
            if u != v and not any(gcd([a, b])):
                edges[(u, v)] = c_constant(a, b, Q)
    return GcdGraph(L, edges)


def weight_ratio_law_holds(G: GcdGraph) -> bool:
    L = G.lattice
    Fld = L.Q.field
    for (u, v), w in G.edges.items():
        if Fld.div(w, G.edges[(v, u)]) != chi_monomials(L.nodes[u], L.nodes[v], L.Q):
            return False
    return True


def colors_match(g1, g2, variable_map) -> bool:
    return all(g1[j] == g2[variable_map[j]] for j in range(len(g1)))


@dataclass
class LatticeIso:
    atom_map: tuple        # generator i of I -> generator atom_map[i] of I'
    node_map: dict         # node index in L1 -> node index in L2
    preserves_internal_degree: bool
    variable_map: tuple

    def subset_map(self, F: int) -> int:
        return to_mask(self.atom_map[i] for i in members(F))


def _induced_node_map(L1: LcmLattice, L2: LcmLattice, lam) -> dict | None:
    node_map: dict = {}
    for F in range(1 << L1.s):
        u = L1.node_of[F]
        v = L2.node_of[to_mask(lam[i] for i in members(F))]
        prev = node_map.get(u)
        if prev is None:
            node_map[u] = v
        elif prev != v:
            return None
    if len(set(node_map.values())) != len(node_map):
        return None
    return node_map


def check_color_iso(L1, G1, L2, G2, lam, variable_map) -> LatticeIso | None:
    """Validate one atom bijection; returns the iso or ``None``."""
    node_map = _induced_node_map(L1, L2, lam)
    if node_map is None or len(node_map) != len(L2.nodes):
        return None
    N = len(L1.nodes)
    for u in range(N):
        for v in range(N):
            if L1.leq[u][v] != L2.leq[node_map[u]][node_map[v]]:
                return None
    for u in range(N):
        if not colors_match(L1.node_gdeg[u], L2.node_gdeg[node_map[u]], variable_map):
            return None
    for u in range(N):
        for v in range(N):
            if u == v:
                continue
            e1 = G1.edges.get((u, v))
            e2 = G2.edges.get((node_map[u], node_map[v]))
            if (e1 is None) != (e2 is None) or e1 != e2:
                return None
    degs = all(L1.node_idegree[u] == L2.node_idegree[node_map[u]] for u in range(N))
    return LatticeIso(tuple(lam), node_map, degs, tuple(variable_map))


def find_color_iso(L1: LcmLattice, G1: GcdGraph, L2: LcmLattice, G2: GcdGraph,
                   variable_map=None, max_s: int = MAX_PERMUTATION_S) -> LatticeIso | None:
    """Search atom bijections for a color-preserving lattice iso that is also an
    isomorphism of weighted GCD graphs.

    Colors of ``R`` and ``R'`` are compared through ``variable_map`` (variable
    ``j`` of ``R`` corresponds to variable ``variable_map[j]`` of ``R'``,
    identity by default).
    """
    if L1.s != L2.s or len(L1.nodes) != len(L2.nodes):
        return None
    if L1.Q.field != L2.Q.field:
        raise ValueError("the two rings are over different fields")
    s = L1.s
    if s > max_s:
        raise BudgetExceeded(f"{s}! atom bijections exceed the budget (s <= {max_s})")
    n1, n2 = L1.Q.n, L2.Q.n
    if variable_map is None:
        if n1 > n2:
            return None
        variable_map = tuple(range(n1))
    variable_map = tuple(variable_map)
    if len(variable_map) != n1 or len(set(variable_map)) != n1 or any(not 0 <= v < n2 for v in variable_map):
        raise ValueError(f"bad variable map {variable_map}")
    # prune by atom colors
    allowed = []
    for i in range(s):
        gi = L1.node_gdeg[L1.atoms[i]]
        allowed.append({j for j in range(s) if colors_match(gi, L2.node_gdeg[L2.atoms[j]], variable_map)})
        if not allowed[-1]:
            return None
    for lam in permutations(range(s)):
        if any(lam[i] not in allowed[i] for i in range(s)):
            continue
        iso = check_color_iso(L1, G1, L2, G2, lam, variable_map)
        if iso is not None:
            return iso
    return None


def iso_respects_lcms(iso: LatticeIso, L1: LcmLattice, L2: LcmLattice) -> bool:
    """``m_{lambda_hat(F)} = lambda(m_F)`` for every subset ``F``."""
    for F in range(1 << L1.s):
        if L2.node_of[iso.subset_map(F)] != iso.node_map[L1.node_of[F]]:
            return False
    return True


@dataclass
class PredictionReport:
    applicable: bool
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.applicable and all(self.checks.values())


def predict_equalities(iso: LatticeIso | None, T1: TaylorComplex, T2: TaylorComplex,
                       K: int = 8) -> PredictionReport:
    """Check the consequences of a color iso: equal Betti sequences of ``R/I``
    and ``R'/I'`` and equal quotients ``P(t)/(1+t)^n`` through ``t^K``."""
    if iso is None:
        return PredictionReport(False, {}, {"reason": "no color-preserving lattice/graph isomorphism"})
    b1 = betti(T1).totals(T1.s + 1)
    b2 = betti(T2).totals(T2.s + 1)
    S1 = QuotientAlgebra(MonomialIdeal(T1.gens, T1.n), T1.Q)
    S2 = QuotientAlgebra(MonomialIdeal(T2.gens, T2.n), T2.Q)
    P1, P2 = poincare_series(S1, K), poincare_series(S2, K)
    checks = {
        "betti_equal": b1 == b2,
        "poincare_quotient_equal": compare_poincare_quotient(S1, S2, K, P1, P2),
    }
    details = {
        "betti": (b1, b2),
        "poincare": (P1.coeffs[:K + 1], P2.coeffs[:K + 1]),
        "quotient": poincare_quotient(P1.coeffs[:K + 1], S1.n, K),
        "internal_degree_preserved": iso.preserves_internal_degree,
        "atom_map": iso.atom_map,
        "K": K,
    }
    return PredictionReport(True, checks, details)
