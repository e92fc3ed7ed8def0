"""Command line front end.

Problem files are YAML (JSON also parses)::

    field: rational            # or "prime 101"; default from $SKEWTAYLOR_FIELD
    q: [[1, 2], [1/2, 1]]      # full q-matrix, or
    relations: {"1,2": 2}      # q_ij for i < j, 1-based; other pairs commute
    degrees: [1, 1]            # optional internal degrees
    gens: [[2, 0], [1, 1]]
    second:                    # optional, for `compare`
      relations: {"1,2": 2}
      gens: [[3, 0], [0, 3]]
      variable_map: [1, 2]     # optional, 1-based
    budgets: {i_max: 5, d_max: 10, K: 8, max_perm_s: 9}

Exit status: 0 all checks pass, 1 verification failure, 2 input error,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import yaml

from . import dgalgebra, homres, lattice, taylor
from .errors import BudgetExceeded
from .qcommute import QMatrix, QMatrixError, as_monomial
from .scalars import Field, FieldError, default_field, field_from_descriptor
from .skewpoly import MonomialIdeal

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

COMMANDS = ("resolve", "verify", "betti", "dg-verify", "lattice", "graph",
            "compare", "poincare", "deviations")

DEFAULT_BUDGETS = {"i_max": 5, "d_max": 10, "K": 8, "max_perm_s": lattice.MAX_PERMUTATION_S,
                   "max_s": taylor.MAX_S}


class SpecError(ValueError):
    pass


@dataclass
class RingIdeal:
    Q: QMatrix
    ideal: MonomialIdeal
    variable_map: tuple | None = None

    @property
    def gens(self):
        return self.ideal.gens


@dataclass
class ProblemSpec:
    field: Field
    first: RingIdeal
    second: RingIdeal | None = None
    budgets: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    @property
    def Q(self):
        return self.first.Q

    @property
    def n(self):
        return self.first.Q.n

    @property
    def s(self):
        return self.first.ideal.s


def _parse_q(doc: dict, n: int, F: Field) -> QMatrix:
    degrees = tuple(doc.get("degrees") or ())
    if "q" in doc and "relations" in doc:
        raise SpecError("give either 'q' or 'relations', not both")
    try:
        if "q" in doc:
            rows = doc["q"]
            if not isinstance(rows, list) or len(rows) != n or any(
                    not isinstance(r, list) or len(r) != n for r in rows):
                raise SpecError(f"'q' must be a {n}x{n} matrix")
            entries = tuple(tuple(F.parse(v) for v in row) for row in rows)
            return QMatrix(entries, F, degrees)
        upper = {}
        for key, val in (doc.get("relations") or {}).items():
            parts = str(key).replace(" ", ",").split(",")
            parts = [p for p in parts if p]
            if len(parts) != 2:
                raise SpecError(f"bad relation key {key!r}; expected 'i,j'")
            i, j = int(parts[0]) - 1, int(parts[1]) - 1
            v = F.parse(val)
            if i > j:
                i, j, v = j, i, F.inv(v) if not F.is_zero(v) else v
            if i == j:
                raise SpecError(f"relation key {key!r} pairs a variable with itself")
            upper[(i, j)] = v
        return QMatrix.from_upper(n, upper, F, degrees)
    except (QMatrixError, FieldError, ZeroDivisionError) as exc:
        raise SpecError(str(exc)) from exc


def _parse_ring_ideal(doc: dict, F: Field, warnings: list, label: str) -> RingIdeal:
    gens = doc.get("gens")
    if not isinstance(gens, list) or not gens:
        raise SpecError(f"{label}: 'gens' must be a nonempty list of exponent vectors")
    try:
        mons = [as_monomial(g) for g in gens]
    except OverflowError as exc:
        raise SpecError(f"{label}: {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise SpecError(f"{label}: bad generator: {exc}") from exc
    n = int(doc.get("n", len(mons[0])))
    if any(len(m) != n for m in mons):
        raise SpecError(f"{label}: every generator needs {n} exponents")
    if any(not any(m) for m in mons):
        raise SpecError(f"{label}: the unit monomial generates the whole ring")
    Q = _parse_q(doc, n, F)
    I = MonomialIdeal(mons, n)
    if not I.is_minimally_given():
        warnings.append(f"{label}: generators minimalized to {[list(g) for g in I.mingens]}")
        I = MonomialIdeal(I.mingens, n)
    vm = doc.get("variable_map")
    if vm is not None:
        vm = tuple(int(v) - 1 for v in vm)
    return RingIdeal(Q, I, vm)


def parse_spec(text: str) -> ProblemSpec:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SpecError(f"not a valid YAML/JSON document: {exc}") from exc
    if not isinstance(doc, dict):
        raise SpecError("problem file must be a mapping")
    try:
        F = field_from_descriptor(doc["field"]) if "field" in doc else default_field()
    except FieldError as exc:
        raise SpecError(str(exc)) from exc
    warnings: list = []
    first = _parse_ring_ideal(doc, F, warnings, "ideal")
    second = None
    if doc.get("second") is not None:
        if not isinstance(doc["second"], dict):
            raise SpecError("'second' must be a mapping")
        second = _parse_ring_ideal(doc["second"], F, warnings, "second ideal")
    budgets = dict(DEFAULT_BUDGETS)
    for k, v in (doc.get("budgets") or {}).items():
        if k not in DEFAULT_BUDGETS:
            raise SpecError(f"unknown budget {k!r}")
        budgets[k] = int(v)
    return ProblemSpec(F, first, second, budgets, warnings)


# ----------------------------------------------------------------- commands

def _fmt_mono(m) -> list:
    return list(m)


def _label(F: int) -> str:
    return "{" + ",".join(str(i + 1) for i in taylor.members(F)) + "}"


def _taylor(spec: ProblemSpec, which: RingIdeal | None = None) -> taylor.TaylorComplex:
    which = which or spec.first
    return taylor.TaylorComplex(list(which.gens), which.Q, max_s=spec.budgets["max_s"])


def cmd_resolve(spec, args):
    T = _taylor(spec)
    Fld = spec.field
    out = {"s": T.s, "n": T.n, "differentials": []}
    lines = [f"Taylor complex: s={T.s}, n={T.n}, field {Fld.descriptor()}"]
    for i in range(1, T.s + 1):
        for F in T.bases[i]:
            terms = [{"target": _label(G), "coeff": Fld.format(c), "monomial": _fmt_mono(m)}
                     for G, c, m in T.boundary_terms(F)]
            out["differentials"].append({"source": _label(F), "terms": terms})
            rhs = " + ".join(f"e{t['target']}*({t['coeff']})*x^{t['monomial']}" for t in terms)
            lines.append(f"d e{_label(F)} = {rhs}")
    return out, lines, True


def cmd_verify(spec, args):
    T = _taylor(spec)
    checks = {"d_squared_zero": taylor.verify_d_squared(T),
              "resolution": taylor.verify_resolution(T, spec.first.ideal)}
    lines = [f"{k}: {'pass' if v else 'FAIL'}" for k, v in checks.items()]
    return {"checks": checks}, lines, all(checks.values())


def cmd_betti(spec, args):
    T = _taylor(spec)
    table = taylor.betti(T)
    totals = table.totals(T.s + 1)
    bound = taylor.betti_bound_holds(table, T.s)
    entries = [{"i": i, "multidegree": _fmt_mono(a), "beta": b} for (i, a), b in sorted(table.items())]
    lines = ["i  beta_i  multidegrees"]
    for i, b in enumerate(totals):
        degs = " ".join(str(list(a)) for a in table.multidegrees(i))
        lines.append(f"{i}  {b}  {degs}")
    lines.append(f"beta_i <= binom(s, i): {'pass' if bound else 'FAIL'}")
    return {"totals": totals, "entries": entries, "bound_holds": bound}, lines, bound


def cmd_dg_verify(spec, args):
    T = _taylor(spec)
    checks = dgalgebra.verify_all(T, seed=args.seed)
    lines = [f"{k}: {'pass' if v else 'FAIL'}" for k, v in checks.items()]
    return {"checks": checks}, lines, all(checks.values())


def _lattice_payload(L: lattice.LcmLattice):
    Fld = L.Q.field
    nodes = [{"index": k, "monomial": _fmt_mono(m), "internal_degree": L.node_idegree[k],
              "color": [Fld.format(c) for c in L.node_gdeg[k]]} for k, m in enumerate(L.nodes)]
    covers = []
    N = len(L.nodes)
    for u in range(N):
        for v in range(N):
            if u != v and L.leq[u][v] and not any(
                    w not in (u, v) and L.leq[u][w] and L.leq[w][v] for w in range(N)):
                covers.append([u, v])
    return {"nodes": nodes, "covers": covers, "atoms": list(L.atoms)}


def cmd_lattice(spec, args):
    L = lattice.build_lcm_lattice(spec.first.ideal, spec.Q, max_s=spec.budgets["max_s"])
    payload = _lattice_payload(L)
    lines = [f"LCM lattice: {len(L.nodes)} nodes, atoms {payload['atoms']}"]
    for nd in payload["nodes"]:
        lines.append(f"  {nd['index']}: {nd['monomial']} deg={nd['internal_degree']} color=({', '.join(nd['color'])})")
    lines.append("covers: " + " ".join(f"{u}<{v}" for u, v in payload["covers"]))
    return payload, lines, True


def cmd_graph(spec, args):
    L = lattice.build_lcm_lattice(spec.first.ideal, spec.Q, max_s=spec.budgets["max_s"])
    G = lattice.build_gcd_graph(L)
    text = G.to_edge_list()
    Fld = spec.field
    edges = [[u, v, Fld.format(w)] for (u, v), w in sorted(G.edges.items())]
    ok = lattice.weight_ratio_law_holds(G)
    return {"edge_list": text, "edges": edges, "weight_ratio_law": ok}, text.rstrip("\n").split("\n"), ok


def cmd_compare(spec, args):
    if spec.second is None:
        raise SpecError("'compare' needs a 'second' ideal in the problem file")
    b = spec.budgets
    K = args.K if args.K is not None else b["K"]
    L1 = lattice.build_lcm_lattice(spec.first.ideal, spec.first.Q, max_s=b["max_s"])
    L2 = lattice.build_lcm_lattice(spec.second.ideal, spec.second.Q, max_s=b["max_s"])
    G1, G2 = lattice.build_gcd_graph(L1), lattice.build_gcd_graph(L2)
    iso = lattice.find_color_iso(L1, G1, L2, G2, spec.second.variable_map, max_s=b["max_perm_s"])
    if iso is None:
        return ({"iso": None, "applicable": False},
                ["no color-preserving iso; prediction inapplicable"], True)
    rep = lattice.predict_equalities(iso, _taylor(spec), _taylor(spec, spec.second), K=K)
    parts = ["iso found",
             "Betti equal" if rep.checks["betti_equal"] else "Betti DIFFER",
             (f"Poincaré quotient equal through t^{K}" if rep.checks["poincare_quotient_equal"]
              else f"Poincaré quotient DIFFERS through t^{K}")]
    lines = ["; ".join(parts),
             f"atom map: {[a + 1 for a in iso.atom_map]}",
             f"internal degree preserved: {iso.preserves_internal_degree}"]
    payload = {"iso": {"atom_map": list(iso.atom_map),
                       "internal_degree_preserved": iso.preserves_internal_degree},
               "applicable": True, "checks": rep.checks,
               "betti": [list(x) for x in rep.details["betti"]],
               "poincare": [list(x) for x in rep.details["poincare"]], "K": K}
    return payload, lines, rep.passed


def _series(spec, args):
    b = spec.budgets
    i_max = args.i_max if args.i_max is not None else b["i_max"]
    d_max = args.d_max if args.d_max is not None else b["d_max"]
    S = homres.QuotientAlgebra(spec.first.ideal, spec.Q)
    return homres.minimal_resolution_of_k(S, i_max, max(d_max, i_max))


def cmd_poincare(spec, args):
    P = _series(spec, args)
    lines = ["i  beta_i  exact"]
    for i, c in enumerate(P.coeffs):
        lines.append(f"{i}  {c}  {'yes' if P.exact[i] else 'no'}")
    return {"coeffs": P.coeffs, "exact": P.exact, "exact_through": P.exact_through}, lines, True


def cmd_deviations(spec, args):
    P = _series(spec, args)
    D = homres.deviations(P)
    lines = [f"exact through degree {D.exact_through}"]
    lines += [f"rank pi^{i} = {e}" for i, e in enumerate(D.ranks, start=1)]
    return {"ranks": D.ranks, "exact_through": D.exact_through, "series": P.coeffs}, lines, True


HANDLERS = {
    "resolve": cmd_resolve, "verify": cmd_verify, "betti": cmd_betti,
    "dg-verify": cmd_dg_verify, "lattice": cmd_lattice, "graph": cmd_graph,
    "compare": cmd_compare, "poincare": cmd_poincare, "deviations": cmd_deviations,
}


def run(command: str, spec: ProblemSpec, args=None):
    """Run one subcommand; returns ``(payload, text_lines, passed)``."""
    if command not in HANDLERS:
        raise SpecError(f"unknown command {command!r}")
    args = args or argparse.Namespace(seed=0, K=None, i_max=None, d_max=None)
    return HANDLERS[command](spec, args)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skewtaylor", description=__doc__.split("\n")[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("spec", help="problem file (YAML/JSON); '-' reads stdin")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    p.add_argument("--threads", type=int, default=1, help="worker cap (computation is sequential)")
    p.add_argument("--i-max", dest="i_max", type=int, default=None)
    p.add_argument("--d-max", dest="d_max", type=int, default=None)
    p.add_argument("-K", type=int, default=None, help="truncation degree for compare")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = sys.stdin.read() if args.spec == "-" else open(args.spec, encoding="utf-8").read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        spec = parse_spec(text)
        for w in spec.warnings:
            print(f"warning: {w}", file=sys.stderr)
        payload, lines, ok = run(args.command, spec, args)
    except SpecError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        doc = {"command": args.command, "field": spec.field.descriptor(), "passed": ok,
               "warnings": spec.warnings, "result": payload}
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    else:
        print("\n".join(lines))
        if not ok:
            failing = [k for k, v in payload.get("checks", {}).items() if not v]
            print(f"FAILED: {', '.join(failing) or args.command}")
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
