"""``doublet`` command-line front end.

Every command builds a document ``{"schemaVersion", "command", "payload"}``
and prints it as JSON (default), Markdown tables or CSV.  Output depends
only on the arguments, so repeated runs are byte-identical.

Exit codes: 0 success, 1 a ``--verify`` check or ``verify`` command found a
violation, 2 usage errors (bad arguments, unknown group or manifold, size cap).
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import CycloMatrix, Cyclotomic
from .groups import CapExceeded, FiniteGroup, GroupError, build_group

SCHEMA_VERSION = "1.0"


class UsageError(Exception):
    pass


@dataclass
class Table:
    title: str
    headers: list[str]
    rows: list[list[str]]


@dataclass
class Result:
    payload: dict
    tables: list[Table] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)


# -- serialisation -------------------------------------------------------------

def frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def cyclo_json(x: Cyclotomic) -> dict:
    m = x.minimal()
    out = {"conductor": m.n, "coeffs": [frac(c) for c in m.coeffs]}
    if m.is_rational() or m.restrict(3) is not None:
        out["display"] = m.display()
    return out


def matrix_json(M: CycloMatrix) -> list[list[dict]]:
    return [[cyclo_json(v) for v in row] for row in M.entries()]


def _group(spec: str) -> FiniteGroup:
    try:
        return build_group(spec)
    except CapExceeded:
        raise
    except GroupError as e:
        raise UsageError(str(e)) from None


# -- commands ------------------------------------------------------------------

def cmd_simples(args) -> Result:
    from .modular import simple_objects
    G = _group(args.group)
    items = [{"index": X.index, "label": X.label, "classRep": G.label(X.rep),
              "centralizerOrder": X.centralizer.order, "degree": X.degree, "dimension": X.dimension}
             for X in simple_objects(G)]
    res = Result({"group": G.name, "simples": items},
                 [Table(f"Simple objects of Z({G.name})", ["index", "label", "dimension"],
                        [[str(i["index"]), i["label"], str(i["dimension"])] for i in items])])
    if args.verify:
        _verify_modular(G, res)
    return res


def cmd_smatrix(args) -> Result:
    from .modular import s_matrix, simple_objects
    G = _group(args.group)
    labels = [X.label for X in simple_objects(G)]
    S = s_matrix(G)
    res = Result({"group": G.name, "labels": labels, "S": matrix_json(S)},
                 [Table(f"S matrix of Z({G.name})", [""] + labels,
                        [[labels[i]] + [v.display() for v in row] for i, row in enumerate(S.entries())])])
    if args.verify:
        _verify_modular(G, res)
    return res


def cmd_tmatrix(args) -> Result:
    from .modular import simple_objects, t_matrix
    G = _group(args.group)
    labels = [X.label for X in simple_objects(G)]
    T = t_matrix(G)
    res = Result({"group": G.name, "labels": labels, "T": [cyclo_json(t) for t in T]},
                 [Table(f"T matrix (diagonal) of Z({G.name})", ["label", "T"],
                        [[l, t.display()] for l, t in zip(labels, T)])])
    if args.verify:
        _verify_modular(G, res)
    return res


def cmd_characters(args) -> Result:
    from .modular import pair_index, simple_characters, simple_objects
    G = _group(args.group)
    pairs = [f"({G.label(int(f))},{G.label(int(g))})" for f, g in pair_index(G).pairs]
    labels = [X.label for X in simple_objects(G)]
    chars = simple_characters(G)
    res = Result({"group": G.name, "pairs": pairs,
                  "characters": [{"label": l, "values": [cyclo_json(v) for v in c.values()]}
                                 for l, c in zip(labels, chars)]},
                 [Table(f"Simple characters of Z({G.name})", ["label"] + pairs,
                        [[l] + [v.display() for v in c.values()] for l, c in zip(labels, chars)])])
    if args.verify:
        _verify_modular(G, res)
    return res


def cmd_algebras(args) -> Result:
    from .algebras import (algebra_character, check_datum, classify_algebras, decompose, is_trivialising,
                           twist_check, verify_invariance)
    from .cohomology import second_cohomology
    G = _group(args.group)
    items, rows = [], []
    for i, a in enumerate(classify_algebras(G)):
        item = {"index": i, "label": a.label,
                "H": [G.label(h) for h in a.H.members], "F": [G.label(f) for f in a.F.members],
                "gammaClass": list(second_cohomology(a.F).class_of(a.gamma)),
                "trivialising": is_trivialising(a), "decomposition": None}
        if is_trivialising(a):
            chi = algebra_character(a.H, a.gamma)
            item["decomposition"] = decompose(chi)
            if args.verify and not verify_invariance(chi).ok:
                item.setdefault("failures", []).append("character not S/T invariant")
        if args.verify:
            bad = check_datum(a) + ([] if twist_check(a) else ["twist"])
            if bad:
                item.setdefault("failures", []).extend(bad)
        items.append(item)
        dec = item["decomposition"]
        rows.append([str(i), a.label, _linear(dec) if dec else ""])
    res = Result({"group": G.name, "algebras": items},
                 [Table(f"Algebras in Z({G.name})", ["index", "H⊳F", "character"], rows)])
    for it in items:
        res.failures += [f"{it['label']}: {f}" for f in it.get("failures", [])]
    return res


def _linear(coeffs) -> str:
    terms = [("" if c == 1 else str(c)) + f"χ{i}" for i, c in enumerate(coeffs) if c]
    return "+".join(terms) or "0"


def _two_groups(args) -> tuple[FiniteGroup, FiniteGroup]:
    G = _group(args.left)
    Q = G if args.right is None or args.right == args.left else _group(args.right)
    return G, Q


def cmd_invariants(args) -> Result:
    from .algebras import algebra_character, verify_invariance
    from .modular import s_matrix, t_matrix, diag
    from .partition import render
    from .products import maximal_algebras
    G, Q = _two_groups(args)
    items, rows = [], []
    failures = []
    for alg in maximal_algebras(G, Q):
        inv = alg.invariant
        z = render(inv.m)
        items.append({"index": alg.index, "label": alg.label, "order": alg.U.order,
                      "rows": list(inv.row_labels), "cols": list(inv.col_labels),
                      "matrix": [list(r) for r in inv.m], "partitionFunction": z})
        rows.append([str(alg.index), alg.label, z])
        if args.verify:
            if not verify_invariance(algebra_character(alg.U, alg.gamma)).ok:
                failures.append(f"{alg.label}: character not S/T invariant")
            M = CycloMatrix.from_entries([list(r) for r in inv.m])
            SG, SQ = s_matrix(G), s_matrix(Q)
            TG, TQ = diag(t_matrix(G)), diag(t_matrix(Q))
            if not (SG @ M == M @ SQ and TG @ M == M @ TQ):
                failures.append(f"{alg.label}: invariant matrix does not intertwine S and T")
    res = Result({"left": G.name, "right": Q.name, "invariants": items},
                 [Table(f"Modular invariants of Z({G.name})⊠Z({Q.name})", ["index", "A(U,γ)", "Z"], rows)],
                 failures)
    return res


def cmd_parents(args) -> Result:
    from .algebras import check_datum, identify_algebra
    from .products import maximal_algebras
    G, Q = _two_groups(args)
    items, rows, failures = [], [], []
    for alg in maximal_algebras(G, Q):
        L, R = alg.left_parent, alg.right_parent
        li, ri = identify_algebra(L), identify_algebra(R)
        items.append({"index": alg.index, "label": alg.label,
                      "left": {"algebra": li, "label": L.label}, "right": {"algebra": ri, "label": R.label}})
        rows.append([str(alg.index), alg.label, f"{li}: {L.label}", f"{ri}: {R.label}"])
        if args.verify:
            failures += [f"{alg.label}: left parent {b}" for b in check_datum(L)]
            failures += [f"{alg.label}: right parent {b}" for b in check_datum(R)]
    return Result({"left": G.name, "right": Q.name, "parents": items},
                  [Table("Parents of maximal algebras", ["index", "A(U,γ)", "left", "right"], rows)], failures)


def cmd_equivalences(args) -> Result:
    from .cohomology import second_cohomology
    from .products import ribbon_equivalences
    G, Q = _two_groups(args)
    eqs = ribbon_equivalences(G, Q)
    items = [{"label": e.label, "order": e.U.order,
              "U": [e.U.parent.label(u) for u in e.U.members],
              "gammaClass": list(second_cohomology(e.U).class_of(e.gamma))} for e in eqs]
    res = Result({"left": G.name, "right": Q.name, "count": len(eqs), "equivalences": items},
                 [Table(f"Ribbon equivalences Z({G.name}) -> Z({Q.name})", ["label", "|U|"],
                        [[i["label"], str(i["order"])] for i in items])])
    if args.verify and eqs:
        from .dw import cross_validate
        rep = cross_validate(G, Q)
        res.failures += [f"DW mismatch on {name}: {frac(a)} != {frac(b)}" for name, a, b in rep.discrepancies]
    return res


def cmd_graph(args) -> Result:
    from .products import build_parent_graph
    G, Q = _two_groups(args)
    g = build_parent_graph(G, Q)
    payload = {"left": G.name, "right": Q.name,
               "vertices": [{"index": i, "side": v.side, "algebra": v.index, "label": v.label}
                            for i, v in enumerate(g.vertices)],
               "edges": [{"source": e.source, "target": e.target, "label": e.label, "algebra": e.algebra}
                         for e in g.edges],
               "components": g.components}
    rows = [[g.vertices[e.source].label, g.vertices[e.target].label, e.label] for e in g.edges]
    res = Result(payload, [Table("Parent graph", ["from", "to", "A(U,γ)"], rows)])
    if args.verify:
        from .products import maximal_algebras
        if len(g.edges) != len(maximal_algebras(G, Q)):
            res.failures.append("edge count differs from the number of maximal algebras")
    return res


def cmd_dw(args) -> Result:
    from .dw import BudgetExceeded, PresentationError, count_homomorphisms, resolve_manifold
    G = _group(args.group)
    try:
        P = resolve_manifold(args.manifold)
        n = count_homomorphisms(P, G)
    except (PresentationError, BudgetExceeded) as e:
        raise UsageError(str(e)) from None
    z = Fraction(n, G.order)
    res = Result({"group": G.name, "manifold": P.name, "presentation": P.literal(),
                  "homomorphisms": n, "invariant": frac(z)},
                 [Table(f"Z_{G.name}({P.name})", ["manifold", "presentation", "|Hom|", "Z"],
                        [[P.name, P.literal(), str(n), frac(z)]])])
    if args.verify:
        from .dw import GroupPresentation
        if count_homomorphisms(GroupPresentation("Z", 1), G) != G.order:
            res.failures.append("free cyclic group does not give |G| homomorphisms")
    return res


def cmd_verify(args) -> Result:
    G = _group(args.group)
    res = Result({"group": G.name})
    _verify_modular(G, res)
    from .algebras import (algebra_character, check_datum, classify_algebras, decompose, is_trivialising,
                           twist_check, verify_invariance)
    from .modular import global_dimension
    checks = res.payload["checks"]
    algs = classify_algebras(G)
    checks["algebras"] = len(algs)
    for i, a in enumerate(algs):
        for b in check_datum(a):
            res.failures.append(f"algebra {i}: {b}")
        if not twist_check(a):
            res.failures.append(f"algebra {i}: twist")
        if is_trivialising(a):
            chi = algebra_character(a.H, a.gamma)
            if not verify_invariance(chi).ok:
                res.failures.append(f"algebra {i}: character not S/T invariant")
            decompose(chi)
    gd = global_dimension(G)
    checks["globalDimension"] = gd
    if gd != G.order ** 2:
        res.failures.append(f"global dimension {gd} != |G|^2")
    res.tables.append(Table(f"Checks for Z({G.name})", ["check", "value"],
                            [[k, json.dumps(v, ensure_ascii=False)] for k, v in checks.items()]))
    return res


def _verify_modular(G: FiniteGroup, res: Result) -> None:
    from .modular import modular_matrices, pair_inner_product, simple_characters, verify_modularity
    rep = verify_modularity(modular_matrices(G))
    res.failures += [f"modularity: {f}" for f in rep.failures]
    chars = simple_characters(G)
    ortho = all(pair_inner_product(a, b) == (1 if i == j else 0)
                for i, a in enumerate(chars) for j, b in enumerate(chars))
    if not ortho:
        res.failures.append("simple characters are not orthonormal")
    res.payload.setdefault("checks", {}).update(
        {"modularity": not rep.failures, "lambda": rep.lam.display() if rep.lam is not None else None,
         "orthonormal": ortho})


COMMANDS = {
    "simples": (cmd_simples, 1), "smatrix": (cmd_smatrix, 1), "tmatrix": (cmd_tmatrix, 1),
    "characters": (cmd_characters, 1), "algebras": (cmd_algebras, 1),
    "invariants": (cmd_invariants, 2), "parents": (cmd_parents, 2), "equivalences": (cmd_equivalences, 2),
    "graph": (cmd_graph, 2), "dw": (cmd_dw, 0), "verify": (cmd_verify, 1),
}


# -- output ------------------------------------------------------------------------

def render_json(doc: dict) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def render_md(tables: list[Table]) -> str:
    out = []
    for t in tables:
        out.append(f"### {t.title}\n")
        out.append("| " + " | ".join(h.replace("|", "\\|") for h in t.headers) + " |")
        out.append("|" + "|".join("---" for _ in t.headers) + "|")
        for r in t.rows:
            out.append("| " + " | ".join(c.replace("|", "\\|") for c in r) + " |")
        out.append("")
    return "\n".join(out)


def render_csv(tables: list[Table]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for k, t in enumerate(tables):
        if k:
            buf.write("\n")
        w.writerow(t.headers)
        w.writerows(t.rows)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="doublet", description="Exact computations in Z(G), the Drinfeld double of a finite group.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "md", "csv"), default="json")
    common.add_argument("--verify", action="store_true", help="run the property checks on the result")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, arity) in COMMANDS.items():
        s = sub.add_parser(name, parents=[common])
        if name == "dw":
            s.add_argument("group")
            s.add_argument("manifold", help="catalog name such as L(2) or a literal '<n; w1, ...>'")
        elif arity == 1:
            s.add_argument("group")
        else:
            s.add_argument("left")
            s.add_argument("right", nargs="?" if name == "invariants" else None)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) and 2
    func, _ = COMMANDS[args.command]
    try:
        res = func(args)
    except UsageError as e:
        err.write(f"doublet: {e}\n")
        return 2
    except CapExceeded as e:
        err.write(f"doublet: {e}\n")
        return 2
    doc = {"schemaVersion": SCHEMA_VERSION, "command": args.command, "payload": res.payload}
    if args.verify:
        doc["verification"] = {"ok": not res.failures, "failures": res.failures}
    if args.format == "json":
        out.write(render_json(doc))
    elif args.format == "md":
        out.write(render_md(res.tables))
    else:
        out.write(render_csv(res.tables))
    if res.failures and (args.verify or args.command == "verify"):
        for f in res.failures:
            err.write(f"doublet: verification failed: {f}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
