"""Command-line front end.

Exit status: 0 when every check passes, 1 when a theorem check fails, 2 for
input errors (parse errors, invalid data, refused computations).
"""

import argparse
import json
import os
import sys
from importlib import resources

from .field import FieldError, CharacteristicError, field_from_spec
from .linalg import Subspace
from .nonhom import NQPresentation, weak_qls_check, filtration_dims, j2_subspace
from .quadratic import QuadraticAlgebra, hilbert
from .cdg import dualize, reconstruct, verify_cdg, verify_morphism, compose, MorphismError, NotADerivation
from .bar import pbw_check, bar_cohomology, koszul_verdict
from .charclasses import (chern, chern_invariance, cs_morphism, c2_compose, cs_class,
                          TwoTermObject)
from . import io


class InputError(Exception):
    pass


def default_seed():
    raw = os.environ.get("NQD_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError("NQD_SEED must be an integer, got %r" % raw) from None


def fixture_path(name):
    base = resources.files("nqd") / "fixtures"
    path = base / (name + ".json")
    if not path.is_file():
        raise InputError("no shipped fixture named %r" % name)
    return str(path)


def resolve(path):
    if path.startswith("fixture:"):
        return fixture_path(path[len("fixture:"):])
    if not os.path.exists(path):
        raise InputError("no such file: %s" % path)
    return path


def _field(args):
    if args.field is None:
        return None
    try:
        return field_from_spec(args.field)
    except FieldError as e:
        raise InputError(str(e)) from None


def load(args, path, verify=None):
    verify = not args.no_verify if verify is None else verify
    return io.load_any(resolve(path), field=_field(args), verify=verify,
                       max_degree=getattr(args, "max_degree", None) or 6)


def as_presentation(loaded):
    if loaded.kind == "nonhomogeneous":
        return loaded.obj
    if loaded.kind == "quadratic":
        a = loaded.obj
        return NQPresentation(a.gen_dim, a.relations, names=a.names)
    if loaded.kind == "cdg":
        return reconstruct(loaded.obj)
    raise InputError("expected an algebra document, got %s" % loaded.kind)


def as_cdg(loaded):
    if loaded.kind == "cdg":
        return loaded.obj
    return dualize(as_presentation(loaded))


def as_quadratic(loaded):
    if loaded.kind == "quadratic":
        return loaded.obj
    if loaded.kind == "cdg":
        if not isinstance(loaded.obj.alg, QuadraticAlgebra):
            raise InputError("koszul/hilbert need a quadratic algebra")
        return loaded.obj.alg
    return as_presentation(loaded).quadratic_part()


def _plain(x):
    """Make report values JSON-friendly (exact numbers as strings)."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


class Report:
    def __init__(self, command, args, field):
        self.data = {"command": command, "argv": getattr(args, "argv", None),
                     "field": field.spec() if field is not None else None}
        self.lines = []

    def set(self, key, value):
        self.data[key] = _plain(value)

    def line(self, text=""):
        self.lines.append(text)

    def table(self, header, rows):
        widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
                  for i, h in enumerate(header)]
        self.line("  ".join(str(h).rjust(w) for h, w in zip(header, widths)))
        for r in rows:
            self.line("  ".join(str(c).rjust(w) for c, w in zip(r, widths)))

    def emit(self, args, status):
        self.data["exit_status"] = status
        sys.stdout.write("\n".join(self.lines) + "\n")
        if getattr(args, "output", None):
            with open(args.output, "w") as fh:
                json.dump(self.data, fh, indent=2, sort_keys=True)
                fh.write("\n")
        return status


def _write_document(path, doc):
    if path:
        with open(path, "w") as fh:
            fh.write(io.dumps(doc))


def _basis_header(rep, alg):
    if isinstance(alg, QuadraticAlgebra):
        labels = alg.labels(2)
        rep.line("basis of B^2 (normal words): " + " ".join(labels))
        rep.set("basis", {"2": labels})


# commands

def cmd_dualize(args):
    ld = load(args, args.file)
    p = as_presentation(ld)
    rep = Report("dualize", args, ld.field)
    psi = dualize(p)
    N = args.max_degree
    v = verify_cdg(psi, N)
    rep.line("dual of %s: B = quadratic dual, %d generators" % (args.file, psi.alg.gen_dim))
    for note in ld.notes:
        rep.line("note: " + note)
    _basis_header(rep, psi.alg)
    for k, row in enumerate(psi.d1_rows()):
        rep.line("d(%s) = %s" % (psi.alg.names[k], psi.alg.from_sparse(2, dict(enumerate(row)))))
    rep.line("h = %s" % psi.h)
    rep.line("verify_cdg up to degree %d: %s" % (N, "pass" if v.ok else "FAIL %r" % (v.failure,)))
    doc = io.cdg_to_doc(psi)
    rep.set("window", {"max_degree": N})
    rep.set("verify", v.as_dict())
    rep.set("document", doc)
    rep.set("notes", ld.notes)
    _write_document(args.document, doc)
    return rep.emit(args, 0 if v.ok else 1)


def cmd_reconstruct(args):
    ld = load(args, args.file)
    if ld.kind != "cdg":
        raise InputError("reconstruct needs a CDG document")
    p = reconstruct(ld.obj)
    rep = Report("reconstruct", args, ld.field)
    _basis_header(rep, ld.obj.alg)
    rep.line("relations:")
    for s in p.relation_strings():
        rep.line("  " + s)
    doc = io.presentation_to_doc(p)
    rep.set("relations", p.relation_strings())
    rep.set("document", doc)
    _write_document(args.document, doc)
    return rep.emit(args, 0)


def cmd_pbw(args):
    ld = load(args, args.file)
    p = as_presentation(ld)
    N, S = args.max_degree, args.slack
    rep = Report("pbw", args, ld.field)
    weak = weak_qls_check(p, N, S)
    psi = dualize(p)
    v = verify_cdg(psi, N)
    pbw = pbw_check(psi, N, S)
    rep.line("window: degrees 0..%d, saturation slack %d" % (N, S))
    rows = []
    for n in range(N + 1):
        rows.append((n, weak.report.f_dims[n], pbw.gr_dims[n], pbw.dual_dims[n],
                     "yes" if pbw.stabilized[n] else "no"))
    rep.table(("n", "dim F_n", "dim Gr_n", "dim B!_n", "stabilized"), rows)
    rep.line("CDG axioms of the dual: %s" % ("pass" if v.ok else "FAIL %r" % (v.failure,)))
    rep.line("J2 saturated: %s" % ("yes" if weak.j2_is_saturated else "no"))
    rep.line("Koszul up to %d: %s" % (N, "yes" if pbw.koszul.koszul else "no (witness %r)" % (pbw.koszul.witness,)))
    rep.line("PBW (Gr = B!): %s" % ("holds" if pbw.holds else "FAILS at degree %d" % pbw.first_failure))
    rep.set("window", {"max_degree": N, "slack": S})
    rep.set("weak_qls", weak.as_dict())
    rep.set("pbw", pbw.as_dict())
    rep.set("verify", v.as_dict())
    return rep.emit(args, 0 if pbw.holds else 1)


def cmd_bar(args):
    ld = load(args, args.file)
    psi = as_cdg(ld)
    K, M = args.k, args.max_degree
    if M < K + 1:
        raise InputError("window too small: need --max-degree >= --k + 1")
    if not isinstance(psi.alg, QuadraticAlgebra):
        raise InputError("the bar complex needs a connected quadratic CDG-algebra")
    res = bar_cohomology(psi, K, M, margin=args.slack if args.slack is not None else None)
    rep = Report("bar", args, ld.field)
    rep.line("H^b_%d, internal degrees 0..%d (rows marked * are at the window edge)" % (K, M))
    rows = [(j, res.filtered[j], res.graded[j], "*" if res.edge[j] else "") for j in range(M + 1)]
    rep.table(("j", "dim F_j H", "graded", "edge"), rows)
    rep.set("window", {"k": K, "max_internal": M})
    rep.set("bar", res.as_dict())
    return rep.emit(args, 0)


def cmd_koszul(args):
    ld = load(args, args.file)
    a = as_quadratic(ld)
    N = args.max_degree
    kv = koszul_verdict(a, N)
    rep = Report("koszul", args, ld.field)
    rep.line("dim Ext^i(k,k)_j for 0 <= i <= j <= %d" % N)
    header = ["i\\j"] + [str(j) for j in range(N + 1)]
    rows = []
    for i in range(N + 1):
        rows.append([str(i)] + [str(kv.table[(i, j)]) if i <= j else "." for j in range(N + 1)])
    rep.table(header, rows)
    rep.line("diagonal (Koszul up to %d): %s" % (N, "yes" if kv.koszul else "no, witness %r" % (kv.witness,)))
    rep.set("window", {"max_degree": N})
    rep.set("koszul", kv.as_dict())
    return rep.emit(args, 0 if kv.koszul else 1)


def cmd_hilbert(args):
    ld = load(args, args.file)
    N = args.max_degree
    rep = Report("hilbert", args, ld.field)
    if ld.kind == "nonhomogeneous" and not ld.obj.homogeneous:
        fr = filtration_dims(ld.obj, N, args.slack if args.slack is not None else 2)
        rep.table(("n", "dim F_n", "dim Gr_n"), [(n, fr.f_dims[n], fr.gr_dims[n]) for n in range(N + 1)])
        rep.set("filtration", fr.as_dict())
    else:
        a = as_quadratic(ld)
        dims = hilbert(a, N)
        rep.table(("n", "dim A_n"), [(n, d) for n, d in enumerate(dims)])
        rep.set("hilbert", dims)
    rep.set("window", {"max_degree": N})
    return rep.emit(args, 0)


def cmd_chern(args):
    ld = load(args, args.file)
    psi = as_cdg(ld)
    n = args.n
    seed = args.seed if args.seed is not None else default_seed()
    rep = Report("chern", args, ld.field)
    cf = chern(psi, n)
    inv = chern_invariance(psi, n, args.twists, seed)
    rep.line("character component c_%d = T(h^%d)" % (n, n))
    rep.line("representative in C^%d: %s" % (2 * n, list(map(str, cf.rep))))
    rep.line("delta0(h^n) = 0: %s, delta_C(c_n) = 0: %s" % (cf.closed_in_B, cf.closed_in_C))
    rep.line("class: %s" % ("zero" if cf.trivial else "nonzero, canonical remainder %s" % list(map(str, cf.cls))))
    if cf.trivial and cf.witness is not None:
        rep.line("coboundary witness in C^%d: %s" % (2 * n - 1, list(map(str, cf.witness))))
    rep.line("invariance over %d twists (seed %d): %s" % (args.twists, seed, "pass" if inv.ok else "FAIL"))
    rep.set("chern", cf.as_dict())
    rep.set("invariance", inv.as_dict())
    rep.set("seed", seed)
    ok = cf.closed_in_B and cf.closed_in_C and inv.ok
    return rep.emit(args, 0 if ok else 1)


def _load_morphism(args, src, tgt, path):
    doc, text = io.load_file(resolve(path))
    tgt = io.share_algebra(tgt, src) if doc.get("identity") else tgt
    m = io.morphism_from_doc(doc, src, tgt, text)
    v = verify_morphism(m, 2 * args.n + 1)
    if not v.ok:
        raise InputError("morphism %s does not verify: %s %r" % (path, v.detail, v.failure))
    return m


def cmd_cs(args):
    src = load(args, args.source)
    tgt = load(args, args.target)
    n = args.n
    a, b = as_cdg(src), as_cdg(tgt)
    m = _load_morphism(args, a, b, args.morphism)
    rep = Report("cs", args, src.field)
    o_a, o_b = TwoTermObject(m.source, n), TwoTermObject(m.target, n)
    cm = cs_morphism(m, n, o_a, o_b)
    ok = cm.defining_equation() and cm.square_commutes()
    rep.line("CS_%d: c1 = %s" % (n, list(map(str, cm.c1))))
    rep.line("c' - f0(c) = delta'(c1): %s" % cm.defining_equation())
    rep.line("square commutes: %s" % cm.square_commutes())
    rep.set("c1", list(cm.c1))
    rep.set("defining_equation", cm.defining_equation())
    if m.target.h.is_zero():
        cc = cs_class(m, n)
        rep.line("Chern-Simons class: %s" % ("zero" if cc.zero else "nonzero %s" % list(map(str, cc.cls))))
        rep.line("boundary relation delta c1 = -f_*(c_n): %s" % cc.boundary_ok)
        rep.set("cs_class", cc.as_dict())
        ok = ok and cc.boundary_ok
    if args.then:
        if not args.final:
            raise InputError("--then needs --final (the target of the second morphism)")
        c = as_cdg(load(args, args.final))
        m2 = _load_morphism(args, m.target, c, args.then)
        o_c = TwoTermObject(m2.target, n)
        cm2 = cs_morphism(m2, n, o_b, o_c)
        comp = cs_morphism(compose(m2, m), n, o_a, o_c)
        func = comp == c2_compose(cm2, cm)
        rep.line("functoriality CS(m2 o m1) = CS(m2) o CS(m1): %s" % func)
        rep.set("functoriality", func)
        ok = ok and func
    return rep.emit(args, 0 if ok else 1)


def cmd_verify(args):
    ld = load(args, args.file, verify=False)
    N = args.max_degree
    rep = Report("verify", args, ld.field)
    if ld.kind == "cdg":
        v = verify_cdg(ld.obj, N)
        rep.line("CDG axioms up to degree %d: %s" % (N, "pass" if v.ok else "FAIL %s %r" % (v.detail, v.failure)))
    else:
        p = as_presentation(ld)
        j2_subspace(p)
        v = verify_cdg(dualize(p), N)
        rep.line("presentation: %d generators, %d relations" % (p.gen_dim, p.I.dim))
        rep.line("augmentation: %s" % ("none" if p.augmentation is None else "consistent"))
        rep.line("consistency (dual CDG axioms) up to degree %d: %s"
                 % (N, "pass" if v.ok else "FAIL %s %r" % (v.detail, v.failure)))
    rep.set("verify", v.as_dict())
    return rep.emit(args, 0 if v.ok else 1)


def build_parser():
    ap = argparse.ArgumentParser(prog="nqd", description="Nonhomogeneous quadratic duality toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, file=True):
        if file:
            p.add_argument("file", help="document path or fixture:NAME")
        p.add_argument("--field", default=None, help="'rational' or a prime p (overrides the document)")
        p.add_argument("--output", default=None, help="write a machine-readable JSON report here")
        p.add_argument("--no-verify", action="store_true", help="skip verify_cdg when loading CDG documents")
        p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("dualize", help="dual CDG-algebra of a presentation")
    common(p)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--document", default=None, help="write the CDG document here")
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("reconstruct", help="presentation from a quadratic CDG-algebra")
    common(p)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--document", default=None, help="write the algebra document here")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("pbw", help="filtration dims versus the quadratic dual")
    common(p)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--slack", type=int, default=2)
    p.set_defaults(func=cmd_pbw)

    p = sub.add_parser("bar", help="filtered bar cohomology")
    common(p)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--max-degree", "--max-internal", dest="max_degree", type=int, default=4)
    p.add_argument("--slack", type=int, default=None, help="edge margin")
    p.set_defaults(func=cmd_bar)

    p = sub.add_parser("koszul", help="Ext table and Koszul verdict")
    common(p)
    p.add_argument("--max-degree", type=int, default=4)
    p.set_defaults(func=cmd_koszul)

    p = sub.add_parser("hilbert", help="graded or filtered dimensions")
    common(p)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--slack", type=int, default=None)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("chern", help="Chern character components and their invariance")
    common(p)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--twists", type=int, default=20)
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("cs", help="Chern-Simons data of a CDG morphism")
    common(p, file=False)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--morphism", required=True)
    p.add_argument("--then", default=None, help="second morphism, from --target to --final")
    p.add_argument("--final", default=None)
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_cs)

    p = sub.add_parser("verify", help="validate a document")
    common(p)
    p.add_argument("--max-degree", type=int, default=6)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    args.argv = argv
    try:
        return args.func(args)
    except (InputError, io.DocumentError, CharacteristicError, FieldError, MorphismError,
            NotADerivation, OSError) as e:
        sys.stderr.write("nqd %s: error: %s\n" % (args.command, e))
        return 2


if __name__ == "__main__":
    sys.exit(main())
