"""Bar complex of a connected quadratic CDG-algebra.

Basis elements of B_+^{(x)n} are tuples ((i_1, b_1), ..., (i_n, b_n)) of
(degree, basis index).  Total degree k = m - n, with m the internal degree.
The three differentials all raise k by one; the cobar side is the transpose.
"""

from dataclasses import dataclass, field as dc_field

from .linalg import echelon
from .field import QQ


def _compositions(m, n):
    if n == 0:
        if m == 0:
            yield ()
        return
    for first in range(1, m - n + 2):
        for rest in _compositions(m - first, n - 1):
            yield (first,) + rest


class BarSpaces:
    """Bases of B_+^{(x)n} in internal degree m, for m <= M."""

    def __init__(self, alg, M):
        self.alg = alg
        self.M = M
        self._basis = {}
        self._index = {}

    def basis(self, n, m):
        key = (n, m)
        hit = self._basis.get(key)
        if hit is not None:
            return hit
        out = []
        if 0 <= n <= m or (n == 0 and m == 0):
            for comp in _compositions(m, n):
                dims = [self.alg.dim(i) for i in comp]
                if 0 in dims:
                    continue
                acc = [()]
                for i, dm in zip(comp, dims):
                    acc = [t + ((i, j),) for t in acc for j in range(dm)]
                out.extend(acc)
        self._basis[key] = out
        self._index[key] = {t: k for k, t in enumerate(out)}
        return out

    def index(self, n, m):
        self.basis(n, m)
        return self._index[(n, m)]

    def dim(self, n, m):
        return len(self.basis(n, m))


def _sparse(vec):
    return {i: a for i, a in enumerate(vec) if a}


class BarComplex:
    """Matrices of the bar differentials on the window m <= M.

    literal_sign=True uses the exponent i_1+...+i_k+k-1 for the product term;
    the default adds one, which is what makes the
    total differential square to zero when d^2 = [h, .] is nonzero.
    """

    def __init__(self, psi, M, literal_sign=False):
        if not psi.alg.connected:
            raise ValueError("the bar complex needs B^0 = k")
        self.psi = psi
        self.alg = psi.alg
        self.M = M
        self.spaces = BarSpaces(psi.alg, M)
        self.shift = 0 if literal_sign else 1
        self._h = _sparse(psi.h.vec)
        self._cache = {}

    # single-element differentials, as {target tuple: coeff}

    def _partial(self, t):
        alg = self.alg
        out = {}
        s = 0
        for k in range(len(t) - 1):
            s += t[k][0]
            sg = -1 if (s + k + self.shift) % 2 else 1  # k counts merge positions from 0
            (i, a), (j, b) = t[k], t[k + 1]
            for c, v in alg.mul_basis(i, a, j, b).items():
                key = t[:k] + ((i + j, c),) + t[k + 2:]
                out[key] = out.get(key, 0) + sg * v
        return out

    def _d(self, t):
        out = {}
        s = 0
        for k in range(len(t)):
            sg = -1 if (s + k) % 2 else 1
            i, a = t[k]
            for c, v in _sparse(self.psi.d.on_basis(i, a).vec).items():
                key = t[:k] + ((i + 1, c),) + t[k + 1:]
                out[key] = out.get(key, 0) + sg * v
            s += i
        return out

    def _delta(self, t):
        out = {}
        s = 0
        for k in range(len(t) + 1):
            sg = -1 if (s + k) % 2 else 1
            for c, v in self._h.items():
                key = t[:k] + ((2, c),) + t[k:]
                out[key] = out.get(key, 0) + sg * v
            if k < len(t):
                s += t[k][0]
        return out

    def apply(self, which, vec):
        """Apply one of 'partial', 'd', 'delta' to a sparse {tuple: coeff} vector."""
        fn = {"partial": self._partial, "d": self._d, "delta": self._delta}[which]
        out = {}
        for t, c in vec.items():
            for k, v in fn(t).items():
                nv = out.get(k, 0) + c * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def matrix(self, which, n, m):
        """Sparse rows: source index -> {target index: coeff}."""
        key = (which, n, m)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        tn, tm = {"partial": (n - 1, m), "d": (n, m + 1), "delta": (n + 1, m + 2)}[which]
        idx = self.spaces.index(tn, tm)
        rows = []
        for t in self.spaces.basis(n, m):
            r = self.apply(which, {t: 1})
            rows.append({idx[k]: v for k, v in r.items()})
        self._cache[key] = rows
        return rows

    def total(self, vec):
        out = {}
        for which in ("partial", "d", "delta"):
            for k, v in self.apply(which, vec).items():
                nv = out.get(k, 0) + v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out


def build_bar(psi, M, literal_sign=False):
    return BarComplex(psi, M, literal_sign)


# the components of (partial + d + delta)^2, by bidegree (internal, homological)
IDENTITIES = {
    "(0,-2) partial^2": [("partial", "partial")],
    "(1,-1) partial d + d partial": [("partial", "d"), ("d", "partial")],
    "(2,0) d^2 + partial delta + delta partial": [("d", "d"), ("partial", "delta"), ("delta", "partial")],
    "(3,1) d delta + delta d": [("d", "delta"), ("delta", "d")],
    "(4,2) delta^2": [("delta", "delta")],
}
_SHIFT = {"(0,-2) partial^2": 0, "(1,-1) partial d + d partial": 1,
          "(2,0) d^2 + partial delta + delta partial": 2,
          "(3,1) d delta + delta d": 3, "(4,2) delta^2": 4}


def square_zero_report(bar, max_n=None):
    """For each identity, the first source basis element where it fails (or None).

    A source (n, m) is checked when all composites stay inside the window,
    i.e. m + (internal shift) <= M.  The last entry checks the total square.
    """
    M = bar.M
    report = {}
    checked = {}
    for name, pairs in IDENTITIES.items():
        fail = None
        count = 0
        for m in range(0, M - _SHIFT[name] + 1):
            for n in range(0, m + 1):
                if max_n is not None and n > max_n:
                    continue
                for t in bar.spaces.basis(n, m):
                    acc = {}
                    for outer, inner in pairs:
                        v = bar.apply(outer, bar.apply(inner, {t: 1}))
                        for k, c in v.items():
                            acc[k] = acc.get(k, 0) + c
                    count += 1
                    if any(acc.values()):
                        fail = t
                        break
                if fail:
                    break
            if fail:
                break
        report[name] = fail
        checked[name] = count
    fail = None
    count = 0
    for m in range(0, M - 4 + 1):
        for n in range(0, m + 1):
            if max_n is not None and n > max_n:
                continue
            for t in bar.spaces.basis(n, m):
                count += 1
                if bar.total(bar.total({t: 1})):
                    fail = t
                    break
            if fail:
                break
        if fail:
            break
    report["total (d+partial+delta)^2"] = fail
    checked["total (d+partial+delta)^2"] = count
    return report, checked


# cohomology of the cobar side

def _total_rows(bar, k, lo_m, hi_m):
    """D restricted to B^k (m <= hi_m) -> B^{k+1} (m <= hi_m), rows by source."""
    rows = []
    sources = []
    for m in range(max(lo_m, 0), hi_m + 1):
        n = m - k
        if n < 0 or (n == 0 and m != 0):
            continue
        for t in bar.spaces.basis(n, m):
            img = bar.total({t: 1})
            rows.append({key: v for key, v in img.items() if _mdeg(key) <= hi_m})
            sources.append(t)
    return sources, rows


def _mdeg(t):
    return sum(i for i, _ in t)


def _space(bar, k, hi_m):
    out = []
    for m in range(0, hi_m + 1):
        n = m - k
        if n < 0 or (n == 0 and m != 0):
            continue
        out.extend(bar.spaces.basis(n, m))
    return out


def _rank_rows(rows, cols_index, field):
    sparse_rows = [{cols_index[k]: v for k, v in r.items()} for r in rows]
    piv, _ = echelon(sparse_rows, len(cols_index), field, reduced=False)
    return len(piv)


def _image_meet_filtration(bar, k, top, field):
    """Echelon data of im(D^*: F_top C_{k+1} -> C_k), columns by descending m."""
    space = _space(bar, k, top)
    space.sort(key=lambda t: -_mdeg(t))
    col = {t: i for i, t in enumerate(space)}
    # D^* phi_y = sum_x D[y][x] x^*: gather, for each target y in B^{k+1}, its preimage row
    src, rows = _total_rows(bar, k, 0, top)
    trans = {}
    for x, r in zip(src, rows):
        for y, v in r.items():
            trans.setdefault(y, {})[col[x]] = v
    piv, _ = echelon(list(trans.values()), len(space), field, reduced=False)
    mdeg_of_col = [_mdeg(t) for t in space]
    return [mdeg_of_col[c] for c in piv]


@dataclass
class BarCohomology:
    k: int
    M: int
    filtered: list
    graded: list
    edge: list

    def as_dict(self):
        return {"k": self.k, "M": self.M, "filtered": self.filtered, "graded": self.graded,
                "edge": self.edge}


def bar_cohomology(psi, k, M, margin=None, bar=None):
    """dims of F_j H^b_k for j <= M, with F the internal-degree filtration.

    Boundaries are taken from the whole window (so elements of higher internal
    degree that collapse into F_j are counted); entries with j > M - margin
    are flagged as edge.
    """
    if M < k + 1:
        raise ValueError("window too small: need M >= k+1")
    field = psi.field
    bar = bar or BarComplex(psi, M)
    if margin is None:
        margin = 0 if (psi.h.is_zero() and all(v.is_zero() for v in psi.d.images.values())) else 2
    img_mdegs = _image_meet_filtration(bar, k, M, field)
    filtered = []
    for j in range(M + 1):
        space = _space(bar, k, j)
        dimC = len(space)
        if k >= 1:
            lower = _space(bar, k - 1, j)
            src, rows = _total_rows(bar, k - 1, 0, j)
            col = {t: i for i, t in enumerate(space)}
            rank_in = _rank_rows(rows, col, field) if rows else 0
        else:
            rank_in = 0
        kernel = dimC - rank_in
        bnd = sum(1 for md in img_mdegs if md <= j)
        filtered.append(kernel - bnd)
    graded = [filtered[0]] + [filtered[j] - filtered[j - 1] for j in range(1, M + 1)]
    edge = [j > M - margin for j in range(M + 1)]
    return BarCohomology(k, M, filtered, graded, edge)


def h0_filtered_dims(psi, N, slack=2):
    """dim F_n H^b_0 for n <= N, boundaries from internal degree <= n + slack."""
    field = psi.field
    bar = BarComplex(psi, N + slack)
    out = []
    g = psi.alg.dim(1)
    for n in range(N + 1):
        mdegs = _image_meet_filtration(bar, 0, n + slack, field)
        tn = sum(g ** j for j in range(n + 1))
        out.append(tn - sum(1 for md in mdegs if md <= n))
    return out


@dataclass
class CompareVerdict:
    ok: bool
    left: list
    right: list
    first_failure: object = None

    def as_dict(self):
        return {"ok": self.ok, "left": self.left, "right": self.right,
                "first_failure": self.first_failure}


def h0_compare(psi, N, slack=2):
    from .cdg import reconstruct
    from .nonhom import filtration_dims
    left = h0_filtered_dims(psi, N, slack)
    right = filtration_dims(reconstruct(psi), N, slack).f_dims
    fail = next((n for n in range(N + 1) if left[n] != right[n]), None)
    return CompareVerdict(fail is None, left, right, fail)


# Ext of a quadratic algebra via its bar complex (d = 0, h = 0)

def ext_table(a, N):
    """{(i, j): dim Ext^i(k,k)_j} for 0 <= i <= j <= N."""
    from .cdg import CDGAlgebra
    psi = CDGAlgebra.quadratic(a)
    bar = BarComplex(psi, N)
    field = a.field
    ranks = {}

    def rank_partial(n, m):
        key = (n, m)
        if key not in ranks:
            if n < 1 or n > m:
                ranks[key] = 0
            else:
                rows = bar.matrix("partial", n, m)
                ranks[key] = len(echelon(rows, bar.spaces.dim(n - 1, m), field, reduced=False)[0]) if rows else 0
        return ranks[key]

    table = {}
    for j in range(N + 1):
        for i in range(j + 1):
            dim = bar.spaces.dim(i, j)
            table[(i, j)] = dim - rank_partial(i, j) - rank_partial(i + 1, j)
    return table


@dataclass
class KoszulVerdict:
    koszul: bool
    weak: bool
    N: int
    witness: object
    table: dict = dc_field(default_factory=dict)

    def as_dict(self):
        return {"koszul_up_to_N": self.koszul, "near_diagonal_vanishes": self.weak, "N": self.N,
                "witness": self.witness,
                "table": {"%d,%d" % k: v for k, v in sorted(self.table.items())}}


def koszul_verdict(a, N):
    table = ext_table(a, N)
    off = [(i, j) for (i, j), v in sorted(table.items()) if v and i != j]
    weak = all(table.get((i, i + 1), 0) == 0 for i in range(N))
    return KoszulVerdict(not off, weak, N, off[0] if off else None, table)


@dataclass
class PBWVerdict:
    holds: bool
    gr_dims: list
    dual_dims: list
    first_failure: object
    koszul: KoszulVerdict
    stabilized: list

    def as_dict(self):
        return {"holds": self.holds, "Gr": self.gr_dims, "B!": self.dual_dims,
                "first_failure": self.first_failure, "koszul": self.koszul.as_dict(),
                "stabilized": self.stabilized}


def pbw_check(psi, N, slack=2):
    from .cdg import reconstruct
    from .nonhom import filtration_dims
    from .quadratic import quadratic_dual
    p = reconstruct(psi)
    rep = filtration_dims(p, N, slack)
    bd = [quadratic_dual(psi.alg).dim(n) for n in range(N + 1)]
    fail = next((n for n in range(N + 1) if rep.gr_dims[n] != bd[n]), None)
    kv = koszul_verdict(psi.alg, N)
    return PBWVerdict(fail is None, rep.gr_dims, bd, fail, kv, rep.stabilized)
