"""JSON documents for presentations, quadratic algebras, CDG-algebras and morphisms.

Numbers are exact: integers or "p/q" strings.  Errors carry a line and column
pointing into the source text whenever one can be found.
"""

import json

from .field import QQ, FieldError, field_from_spec
from .graded import MatrixExteriorAlgebra, GradedMap
from .linalg import Subspace
from .quadratic import QuadraticAlgebra, relations_from_words
from .nonhom import NQPresentation, PresentationError, j2_subspace
from .cdg import CDGAlgebra, CDGMorphism, matrix_connection, verify_cdg


class DocumentError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = " (line %d, column %d)" % (line, column) if line is not None else ""
        super().__init__(message + where)


def _locate(text, token):
    """Line/column of the first occurrence of a JSON string token."""
    if text is None:
        return None, None
    needle = json.dumps(token)
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError("malformed JSON: %s" % e.msg, e.lineno, e.colno) from None


def load_file(path):
    with open(path) as fh:
        text = fh.read()
    return loads(text), text


def _num(field, x, text=None):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise DocumentError("coefficient %r is not an integer or 'p/q' string" % (x,),
                            *_locate(text, x) if isinstance(x, str) else (None, None))
    try:
        return field(x)
    except FieldError as e:
        raise DocumentError(str(e), *_locate(text, x) if isinstance(x, str) else (None, None)) from None


def _field(doc, override=None):
    if override is not None:
        return override
    try:
        return field_from_spec(doc.get("field", "rational"))
    except FieldError as e:
        raise DocumentError(str(e)) from None


def _names(doc, text):
    names = doc.get("generators")
    if not isinstance(names, list) or not all(isinstance(n, str) and n for n in names):
        raise DocumentError("'generators' must be a list of nonempty names", *_locate(text, "generators"))
    seen = set()
    for n in names:
        if n in seen:
            raise DocumentError("duplicate generator name %r" % n, *_locate(text, n))
        seen.add(n)
    return names


def _gen(pos, name, text):
    if not isinstance(name, str) or name not in pos:
        raise DocumentError("unknown generator %r" % (name,),
                            *_locate(text, name) if isinstance(name, str) else (None, None))
    return pos[name]


def _parse_relations(doc, names, field, text):
    pos = {n: k for k, n in enumerate(names)}
    rels = doc.get("relations", [])
    if not isinstance(rels, list):
        raise DocumentError("'relations' must be a list", *_locate(text, "relations"))
    out = []
    for r in rels:
        if not isinstance(r, dict):
            raise DocumentError("each relation must be an object")
        unknown = set(r) - {"quadratic", "linear", "scalar"}
        if unknown:
            key = sorted(unknown)[0]
            raise DocumentError("unknown relation field %r" % key, *_locate(text, key))
        quad, lin = {}, {}
        for term in r.get("quadratic", []):
            if not isinstance(term, list) or len(term) != 3:
                raise DocumentError("quadratic terms are [coeff, gen, gen]")
            c, a, b = term
            key = (_gen(pos, a, text), _gen(pos, b, text))
            quad[key] = quad.get(key, field.zero) + _num(field, c, text)
        for term in r.get("linear", []):
            if not isinstance(term, list) or len(term) != 2:
                raise DocumentError("linear terms are [coeff, gen]")
            c, a = term
            k = _gen(pos, a, text)
            lin[k] = lin.get(k, field.zero) + _num(field, c, text)
        sc = _num(field, r.get("scalar", 0), text)
        out.append(({k: v for k, v in quad.items() if v}, {k: v for k, v in lin.items() if v}, sc))
    return out


class Loaded:
    """A parsed document: kind, the object and notes (e.g. duplicate relations)."""

    def __init__(self, kind, obj, field, notes=None, doc=None):
        self.kind = kind
        self.obj = obj
        self.field = field
        self.notes = notes or []
        self.doc = doc


def presentation_from_doc(doc, text=None, field=None):
    field = _field(doc, field)
    names = _names(doc, text)
    g = len(names)
    rels = _parse_relations(doc, names, field, text)
    notes = []
    kind = doc.get("kind", "nonhomogeneous")
    if kind == "quadratic":
        for q, lin, sc in rels:
            if lin or sc:
                raise DocumentError("a quadratic document cannot have linear or scalar parts",
                                    *_locate(text, "linear" if lin else "scalar"))
        sub = relations_from_words(g, [{w: c for w, c in q.items()} for q, _, _ in rels], field)
        if sub.dim < len(rels):
            notes.append("%d relation(s) are linearly dependent on the others" % (len(rels) - sub.dim))
        return Loaded("quadratic", QuadraticAlgebra(g, sub, names), field, notes, doc)
    if kind != "nonhomogeneous":
        raise DocumentError("unknown algebra kind %r" % (kind,), *_locate(text, kind))
    aug = doc.get("augmentation")
    if aug is not None:
        if not isinstance(aug, dict):
            raise DocumentError("'augmentation' must map generator names to values")
        pos = {n: k for k, n in enumerate(names)}
        vals = [field.zero] * g
        for name, v in aug.items():
            vals[_gen(pos, name, text)] = _num(field, v, text)
        aug = vals
    try:
        p = NQPresentation.from_relations(g, rels, field, augmentation=aug, names=names)
        j2_subspace(p)
    except PresentationError as e:
        raise DocumentError("invalid presentation: %s" % e) from None
    if p.I.dim < len(rels):
        notes.append("%d relation(s) are linearly dependent on the others" % (len(rels) - p.I.dim))
    return Loaded("nonhomogeneous", p, field, notes, doc)


def _coef(field, x):
    if field.characteristic:
        return int(str(x))
    return int(x) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def presentation_to_doc(p):
    f = p.field
    g = p.gen_dim
    rels = []
    for row, ph, h in zip(p.I.rows, p.phi, p.hc):
        quad = [[_coef(f, v), p.names[c // g], p.names[c % g]] for c, v in sorted(row.items())]
        lin = [[_coef(f, v), p.names[a]] for a, v in enumerate(ph) if v]
        rels.append({"quadratic": quad, "linear": lin, "scalar": _coef(f, h)})
    doc = {"kind": "nonhomogeneous", "field": f.spec(), "generators": list(p.names),
           "relations": rels}
    if p.augmentation is not None:
        doc["augmentation"] = {n: _coef(f, v) for n, v in zip(p.names, p.augmentation)}
    return doc


def quadratic_to_doc(a):
    f = a.field
    g = a.gen_dim
    rels = [{"quadratic": [[_coef(f, v), a.names[c // g], a.names[c % g]] for c, v in sorted(r.items())]}
            for r in a.relations.rows]
    return {"kind": "quadratic", "field": f.spec(), "generators": list(a.names), "relations": rels}


def cdg_to_doc(psi):
    alg = psi.alg
    f = alg.field
    if isinstance(alg, MatrixExteriorAlgebra):
        if not hasattr(psi, "alpha0"):
            raise DocumentError("matrix CDG-algebras are serialized through their connection data")
        bg = psi.background
        d0 = {}
        for s in range(alg.m):
            img = bg.d.images[(1, alg.index(0, 0, (s,)))]
            terms = [[_coef(f, c), list(S)] for k, c in enumerate(img.vec) if c
                     for (i, j, S) in [alg.basis_label(2, k)] if i == 0 and j == 0]
            if terms:
                d0[str(s)] = terms
        alpha0 = [[_coef(f, c)] + list(alg.basis_label(1, k)[:2]) + [alg.basis_label(1, k)[2][0]]
                  for k, c in enumerate(psi.alpha0.vec) if c]
        extra = psi.h - (bg.h + bg.d(psi.alpha0) + psi.alpha0 * psi.alpha0)
        omega = [[_coef(f, c), list(S)] for k, c in enumerate(extra.vec) if c
                 for (i, j, S) in [alg.basis_label(2, k)] if i == 0 and j == 0]
        return {"kind": "cdg", "field": f.spec(),
                "matrix": {"rank": alg.r, "exterior_dim": alg.m, "d0": d0, "alpha0": alpha0,
                           "omega": omega}}
    return {"kind": "cdg", "field": f.spec(), "base": quadratic_to_doc(alg),
            "basis": {"2": alg.labels(2)},
            "d1": [[_coef(f, c) for c in row] for row in psi.d1_rows()],
            "h": [_coef(f, c) for c in psi.h.vec]}


def cdg_from_doc(doc, text=None, field=None, verify=True, max_degree=6):
    field = _field(doc, field)
    if "matrix" in doc:
        m = doc["matrix"]
        try:
            r, ed = int(m["rank"]), int(m["exterior_dim"])
        except (KeyError, TypeError, ValueError):
            raise DocumentError("matrix block needs integer 'rank' and 'exterior_dim'",
                                *_locate(text, "matrix")) from None
        alg = MatrixExteriorAlgebra(r, ed, field)
        d0 = {int(s): {tuple(S): _num(field, c, text) for c, S in terms}
              for s, terms in m.get("d0", {}).items()}
        entries = {}
        for c, i, j, s in m.get("alpha0", []):
            if not (0 <= i < r and 0 <= j < r and 0 <= s < ed):
                raise DocumentError("alpha0 entry (%r, %r, %r) out of range" % (i, j, s),
                                    *_locate(text, "alpha0"))
            entries[(i, j, (s,))] = entries.get((i, j, (s,)), field.zero) + _num(field, c, text)
        omega = {tuple(S): _num(field, c, text) for c, S in m.get("omega", [])} or None
        psi = matrix_connection(alg, d0, alg.form(1, entries), omega)
    else:
        base = doc.get("base")
        if not isinstance(base, dict):
            raise DocumentError("CDG document needs a 'base' algebra or a 'matrix' block",
                                *_locate(text, "kind"))
        base = dict(base, kind="quadratic")
        alg = presentation_from_doc(base, text, field).obj
        declared = doc.get("basis", {}).get("2")
        if declared is not None and declared != alg.labels(2):
            raise DocumentError("declared degree-2 basis %r does not match the normal words %r"
                                % (declared, alg.labels(2)), *_locate(text, "basis"))
        g, b2 = alg.dim(1), alg.dim(2)
        d1 = doc.get("d1", [[0] * b2] * g)
        h = doc.get("h", [0] * b2)
        if len(d1) != g or any(len(row) != b2 for row in d1) or len(h) != b2:
            raise DocumentError("d1 must be %d rows of length %d and h of length %d" % (g, b2, b2),
                                *_locate(text, "d1"))
        d1 = [[_num(field, c, text) for c in row] for row in d1]
        h = [_num(field, c, text) for c in h]
        psi = CDGAlgebra.quadratic(alg, d1, h)
    if verify:
        v = verify_cdg(psi, max_degree)
        if not v.ok:
            raise DocumentError("not a CDG-algebra: %s %r" % (v.detail, v.failure))
    return Loaded("cdg", psi, field, [], doc)


def morphism_from_doc(doc, source, target, text=None):
    """Morphism document: {"images": [[coeffs in target B^1] per source generator] | "identity": true,
    "alpha": [coeffs in target B^1]}."""
    src, tgt = source.alg, target.alg
    field = tgt.field
    if doc.get("identity"):
        if not _same_algebra(src, tgt):
            raise DocumentError("identity morphism needs equal underlying algebras")
        images = {g: tgt.gen_element(g) for g in src.generators()}
    else:
        rows = doc.get("images")
        gens = src.generators()
        if not isinstance(rows, list) or len(rows) != len(gens):
            raise DocumentError("'images' needs one row per source generator", *_locate(text, "images"))
        images = {}
        for g, row in zip(gens, rows):
            if len(row) != tgt.dim(g[0]):
                raise DocumentError("image of generator %r needs %d coefficients" % (g, tgt.dim(g[0])))
            images[g] = tgt.element(g[0], [_num(field, c, text) for c in row])
    a = doc.get("alpha", [0] * tgt.dim(1))
    if len(a) != tgt.dim(1):
        raise DocumentError("'alpha' needs %d coefficients" % tgt.dim(1), *_locate(text, "alpha"))
    alpha = tgt.element(1, [_num(field, c, text) for c in a])
    return CDGMorphism(source, target, GradedMap(src, tgt, images), alpha)


def _same_algebra(a, b):
    if isinstance(a, MatrixExteriorAlgebra):
        return isinstance(b, MatrixExteriorAlgebra) and (a.r, a.m) == (b.r, b.m)
    return a == b


def share_algebra(psi, like):
    """Rebuild psi over the algebra object of `like` when the algebras are equal
    (so that identity-type maps between separately loaded documents make sense)."""
    if psi.alg is like.alg or not _same_algebra(psi.alg, like.alg):
        return psi
    alg = like.alg
    imgs = {g: alg.element(g[0] + 1, psi.d.images[g].vec) for g in alg.generators()}
    out = CDGAlgebra(alg, imgs, alg.element(2, psi.h.vec), psi.name)
    for attr in ("background", "alpha0"):
        if hasattr(psi, attr):
            setattr(out, attr, getattr(psi, attr))
    return out


def morphism_to_doc(m):
    f = m.target.alg.field
    rows = [[_coef(f, c) for c in m.f.images[g].vec] for g in m.source.alg.generators()]
    return {"kind": "morphism", "images": rows, "alpha": [_coef(f, c) for c in m.alpha.vec]}


def load_any(path_or_text, field=None, verify=True, max_degree=6, is_text=False):
    if is_text:
        text = path_or_text
        doc = loads(text)
    else:
        doc, text = load_file(path_or_text)
    if not isinstance(doc, dict):
        raise DocumentError("a document must be a JSON object", 1, 1)
    kind = doc.get("kind", "nonhomogeneous")
    if kind == "cdg":
        return cdg_from_doc(doc, text, field, verify, max_degree)
    if kind in ("quadratic", "nonhomogeneous"):
        return presentation_from_doc(doc, text, field)
    if kind == "morphism":
        return Loaded("morphism", doc, field, [], doc)
    raise DocumentError("unknown document kind %r" % (kind,), *_locate(text, kind))


def _flat(x):
    return not isinstance(x, (dict, list)) or (
        isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x))


def _fmt(x, indent):
    pad = "  " * indent
    if _flat(x):
        return json.dumps(x)
    if isinstance(x, list):
        inner = ",\n".join(pad + "  " + _fmt(y, indent + 1) for y in x)
        return "[\n" + inner + "\n" + pad + "]"
    inner = ",\n".join(pad + "  " + json.dumps(k) + ": " + _fmt(v, indent + 1) for k, v in x.items())
    return "{\n" + inner + "\n" + pad + "}" if x else "{}"


def dumps(doc):
    """JSON with one line per list of scalars."""
    return _fmt(doc, 0) + "\n"
