"""One-point (co)extensions, the iterated A[S,n,m] construction, trivial
extensions, repetitive windows, the Nakayama shift and socle quotients."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exact_linear import (
    Matrix,
    complement_basis,
    inverse,
    kernel_vectors,
    row_space_basis,
    span_rank,
)
from .quiver_algebra import (
    Arrow,
    BoundQuiverAlgebra,
    Path,
    Quiver,
    Relation,
    StructureAlgebra,
    build_algebra,
    dense,
    radical,
    sparse,
    vec_add,
)
from .representation import (
    Representation,
    ar_translate,
    dual,
    hom_space,
    indec_projective,
    is_indecomposable,
    kernel_rep,
    map_from_sum,
    top_generators,
    yoneda_map,
    direct_sum,
)


class SocleNotTwoSided(ValueError):
    """Left and right socles of the algebra differ."""


@dataclass
class ExtensionResult:
    algebra: BoundQuiverAlgebra
    vertex: object
    base: BoundQuiverAlgebra
    module: Representation  # the module X (over the base; over the opposite base for coextensions)
    new_arrows: list
    generators: list = field(default_factory=list)  # (vertex, vector) lifting top(X)
    coextension: bool = False
    dual_result: "ExtensionResult | None" = None  # extension over the opposite algebra

    @property
    def vertex_map(self) -> dict:
        return {v: v for v in self.base.vertices}


def one_point_extension(R: BoundQuiverAlgebra, X: Representation, vertex="w",
                        arrow_labels: Sequence[str] | None = None, name: str = "") -> ExtensionResult:
    """R[X]: new source vertex whose projective has radical X."""
    if vertex in R.vertices:
        raise ValueError(f"vertex {vertex!r} already exists")
    gens = top_generators(X)
    labels = list(arrow_labels) if arrow_labels is not None else [f"{vertex}_{k}" for k in range(len(gens))]
    if len(labels) != len(gens):
        raise ValueError(f"need {len(gens)} arrow labels, got {len(labels)}")
    new_arrows = [Arrow(lab, vertex, v) for lab, (v, _) in zip(labels, gens)]
    q = Quiver(list(R.vertices) + [vertex], list(R.quiver.arrows) + new_arrows)
    rels = list(R.relations)
    if gens:
        parts = [indec_projective(R, v) for v, _ in gens]
        P0 = direct_sum(*parts)
        pi = map_from_sum(X, [yoneda_map(X, v, m) for v, m in gens])
        K, incl = kernel_rep(P0, pi)
        # one relation per generator of the kernel of P0 -> X
        for w, vec in top_generators(K):
            col = incl[w].apply(vec)
            terms = []
            pos = 0
            for (v, _), lab in zip(gens, labels):
                for b in R.basis_paths(src=v, tgt=w):
                    c = col[pos]
                    pos += 1
                    if c:
                        terms.append((c, R.basis[b].after(Path(vertex, v, (lab,)))))
            if terms:
                rels.append(Relation(tuple(terms)))
    A = build_algebra(q, rels, cap=max(R.bound + 2, 4), name=name or f"{R.name}[X]")
    if A.dim != R.dim + X.total_dim + 1:
        raise ArithmeticError("one-point extension has the wrong dimension")
    return ExtensionResult(A, vertex, R, X, labels, gens)


def one_point_coextension(R: BoundQuiverAlgebra, X: Representation, vertex="u",
                          arrow_labels: Sequence[str] | None = None, name: str = "") -> ExtensionResult:
    """[X]R = (R^op[DX])^op: new sink vertex whose injective has X as its quotient by the socle."""
    op = R.opposite()
    res = one_point_extension(op, dual(X), vertex, arrow_labels, name=f"({name or R.name})^op")
    A = res.algebra.opposite()
    A.name = name or f"[X]{R.name}"
    return ExtensionResult(A, vertex, R, X, res.new_arrows, res.generators, coextension=True,
                           dual_result=res)


def extend_zero(res: ExtensionResult, M: Representation) -> Representation:
    """Zero embedding: M over the base, with 0 at the new vertex."""
    return _with_zero_vertex(res, M)


def _with_zero_vertex(res: ExtensionResult, M: Representation) -> Representation:
    dims = dict(M.dims)
    dims[res.vertex] = 0
    maps = dict(M.maps)
    for a in res.algebra.quiver.arrows:
        if a.label not in maps:
            maps[a.label] = Matrix.zeros(dims[a.tgt], dims[a.src])
    return Representation(res.algebra, dims, maps)


def extend_hom(res: ExtensionResult, M: Representation) -> Representation:
    """Right adjoint embedding: Hom(X, M) sits at the new vertex of R[X]."""
    if res.coextension:
        raise ValueError("extend_hom needs a one-point extension")
    H = hom_space(res.module, M)
    maps = dict(M.maps)
    for lab, (v, m) in zip(res.new_arrows, res.generators):
        cols = [f[v].apply(m) for f in H.maps]
        maps[lab] = Matrix.from_columns(cols, M.dims[v])
    dims = dict(M.dims)
    dims[res.vertex] = H.dim
    return Representation(res.algebra, dims, maps)


def coextend_zero(res: ExtensionResult, M: Representation) -> Representation:
    return _with_zero_vertex(res, M)


def coextend_tensor(res: ExtensionResult, M: Representation) -> Representation:
    """Left adjoint embedding into [X]R: the dual of Hom(M, X) at the new vertex."""
    if not res.coextension:
        raise ValueError("coextend_tensor needs a one-point coextension")
    dM = dual(M)
    lifted = extend_hom(res.dual_result, Representation(res.dual_result.base, dM.dims, dM.maps, check=False))
    out = dual(lifted)
    return Representation(res.algebra, out.dims, out.maps)


@dataclass
class ASnmResult:
    algebra: BoundQuiverAlgebra
    extensions: list
    coextensions: list
    modules: list  # P_0 = S, P_1, ..., P_n then W_0, ..., W_{m-1}


def _lift_zero(M: Representation, A: BoundQuiverAlgebra) -> Representation:
    return Representation(A, dict(M.dims), dict(M.maps), check=False)


def build_ASnm(A: BoundQuiverAlgebra, S: Representation, n: int, m: int,
               ext_vertices: Sequence | None = None, coext_vertices: Sequence | None = None,
               ext_labels: Sequence | None = None, coext_labels: Sequence | None = None) -> ASnmResult:
    """n one-point extensions by successive projectives, then m coextensions.

    S should be simple regular; only indecomposability is checked.
    """
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    if not is_indecomposable(S):
        raise ValueError("S must be indecomposable")
    ext_vertices = list(ext_vertices or [f"w{i}" for i in range(1, n + 1)])
    coext_vertices = list(coext_vertices or [f"u{j}" for j in range(1, m + 1)])
    cur, P = A, S
    exts, coexts, modules = [], [], [S]
    for i in range(n):
        labs = ext_labels[i] if ext_labels else None
        res = one_point_extension(cur, _lift_zero(P, cur), ext_vertices[i], labs, name=f"A[S,{i + 1}]")
        exts.append(res)
        cur = res.algebra
        P = indec_projective(cur, ext_vertices[i])
        modules.append(P)
    W = P
    for j in range(m):
        W = _lift_zero(W, cur)
        if j > 0:
            W = ar_translate(W)
            modules.append(W)
        else:
            modules.append(W)
        labs = coext_labels[j] if coext_labels else None
        res = one_point_coextension(cur, W, coext_vertices[j], labs, name=f"A[S,{n},{j + 1}]")
        coexts.append(res)
        cur = res.algebra
    return ASnmResult(cur, exts, coexts, modules)


# ---------------------------------------------------------------------------
# trivial extensions and repetitive categories


def _structure(R) -> StructureAlgebra:
    return R.structure() if isinstance(R, BoundQuiverAlgebra) else R


def trivial_extension(R) -> StructureAlgebra:
    """R ⋉ D(R) with (r, x)(s, y) = (rs, xs + ry) and D(R)·D(R) = 0.

    Index i < n is the basis element b_i of R, index n + i its dual functional.
    """
    S = _structure(R)
    n = S.dim
    table = {}
    for (i, j), prod in S.table.items():
        table[(i, j)] = dict(prod)
        for k, c in prod.items():
            # dual_k * b_i picks up c_{ij}^k on dual_j; b_j * dual_k picks up c_{ij}^k on dual_i
            key = (n + k, i)
            table.setdefault(key, {})
            table[key][n + j] = table[key].get(n + j, 0) + c
            key = (j, n + k)
            table.setdefault(key, {})
            table[key][n + i] = table[key].get(n + i, 0) + c
    table = {k: {a: b for a, b in v.items() if b} for k, v in table.items()}
    loc = list(S.loc) + [(t, s) for s, t in S.loc]
    labels = list(S.labels) + [f"{lab}*" for lab in S.labels]
    return StructureAlgebra(labels, table, S.vertices, S.idempotents, loc, name=f"T({S.name})")


class RepetitiveCategory:
    """The repetitive category of R, never materialised: objects (v, m) for all integers m.

    Basis morphisms are ("r", k, m): (s_k, m) -> (t_k, m) and
    ("d", k, m): (t_k, m) -> (s_k, m + 1) for b_k: s_k -> t_k in R.
    """

    def __init__(self, R):
        self.base = _structure(R)
        self._hom_cache: dict = {}

    def hom(self, x, y) -> list:
        key = (x, y)
        if key not in self._hom_cache:
            (i, m), (j, n) = x, y
            S = self.base
            if n == m:
                out = [("r", k, m) for k in S.hom(i, j)]
            elif n == m + 1:
                out = [("d", k, m) for k in S.hom(j, i)]
            else:
                out = []
            self._hom_cache[key] = out
        return self._hom_cache[key]

    def domain(self, b) -> tuple:
        kind, k, m = b
        s, t = self.base.loc[k]
        return (s, m) if kind == "r" else (t, m)

    def codomain(self, b) -> tuple:
        kind, k, m = b
        s, t = self.base.loc[k]
        return (t, m) if kind == "r" else (s, m + 1)

    def identity(self, x) -> dict:
        v, m = x
        return {("r", k, m): c for k, c in self.base.idempotents[v].items()}

    def compose_basis(self, g, f) -> dict:
        """g after f, as a sparse combination of basis morphisms."""
        if self.domain(g) != self.codomain(f):
            return {}
        S = self.base
        gk, gi, gm = g
        fk, fj, fm = f
        if gk == "r" and fk == "r":
            return {("r", k, gm): c for k, c in S.mul_basis(gi, fj).items()}
        if gk == "d" and fk == "r":
            # (dual_i * b_j)(b_k) = dual_i(b_j b_k)
            out: dict = {}
            for k in range(S.dim):
                c = S.mul_basis(fj, k).get(gi)
                if c:
                    out[("d", k, fm)] = out.get(("d", k, fm), 0) + c
            return out
        if gk == "r" and fk == "d":
            # (b_j * dual_i)(b_k) = dual_i(b_k b_j)
            out = {}
            for k in range(S.dim):
                c = S.mul_basis(k, gi).get(fj)
                if c:
                    out[("d", k, fm)] = out.get(("d", k, fm), 0) + c
            return out
        return {}

    def compose(self, g: Mapping, f: Mapping) -> dict:
        out: dict = {}
        for gb, gc in g.items():
            for fb, fc in f.items():
                out = vec_add(out, self.compose_basis(gb, fb), gc * fc)
        return out


@dataclass
class RepetitiveWindow:
    base: StructureAlgebra
    lo: int
    hi: int
    algebra: StructureAlgebra
    labels: list  # basis index -> repetitive basis label

    def index(self, label) -> int:
        return self.labels.index(label)


def _window_algebra(cat: RepetitiveCategory, objects: Sequence) -> tuple[StructureAlgebra, list]:
    labels = []
    loc = []
    for x in objects:
        for y in objects:
            for b in cat.hom(x, y):
                labels.append(b)
                loc.append((x, y))
    index = {b: i for i, b in enumerate(labels)}
    table = {}
    for i, g in enumerate(labels):
        for j, f in enumerate(labels):
            if loc[j][1] != loc[i][0]:
                continue
            prod = cat.compose_basis(g, f)
            if prod:
                table[(i, j)] = {index[b]: c for b, c in prod.items()}
    idem = {x: {index[b]: c for b, c in cat.identity(x).items()} for x in objects}
    A = StructureAlgebra([f"{k}{cat.base.labels[i]}@{m}" for k, i, m in labels], table,
                         list(objects), idem, loc)
    return A, labels


def repetitive_window(R, lo: int, hi: int) -> RepetitiveWindow:
    """Full subcategory of the repetitive category on levels lo..hi."""
    if lo > hi:
        raise ValueError("need lo <= hi")
    cat = RepetitiveCategory(R)
    objects = [(v, m) for m in range(lo, hi + 1) for v in cat.base.vertices]
    A, labels = _window_algebra(cat, objects)
    A.name = f"window[{lo},{hi}]"
    return RepetitiveWindow(cat.base, lo, hi, A, labels)


def nakayama_shift(x, steps: int = 1):
    """Shift an object (v, m), a basis label (kind, k, m), a sparse combination of
    labels, or a whole window, by ``steps`` levels."""
    if isinstance(x, RepetitiveWindow):
        return repetitive_window(x.base, x.lo + steps, x.hi + steps)
    if isinstance(x, Mapping):
        return {nakayama_shift(b, steps): c for b, c in x.items()}
    if isinstance(x, tuple) and len(x) == 3:
        kind, k, m = x
        return (kind, k, m + steps)
    if isinstance(x, tuple) and len(x) == 2:
        v, m = x
        return (v, m + steps)
    raise TypeError(f"cannot shift {x!r}")


# ---------------------------------------------------------------------------
# socle quotient


def _annihilator(A: StructureAlgebra, rad: list, side: str) -> list:
    """Basis of {x : r x = 0 for all r in rad} (side='right') or {x : x r = 0} (side='left')."""
    n = A.dim
    rows = []
    for r in rad:
        rs = sparse(r)
        # linear map x -> r x (or x r) as a matrix
        cols = []
        for j in range(n):
            prod = A.mul(rs, {j: 1}) if side == "right" else A.mul({j: 1}, rs)
            cols.append(dense(prod, n))
        rows.extend(Matrix.from_columns(cols, n).to_lists())
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return row_space_basis(kernel_vectors(Matrix(len(rows), n, rows)), n)


def socle(A: StructureAlgebra) -> list:
    rad = radical(A)
    right = _annihilator(A, rad, "right")
    left = _annihilator(A, rad, "left")
    n = A.dim
    if span_rank(right, n) != span_rank(left, n) or span_rank(right + left, n) != span_rank(right, n):
        raise SocleNotTwoSided("left and right socles differ")
    return right


def socle_quotient(A) -> StructureAlgebra:
    """A / soc(A) for a self-injective algebra, with a corner-compatible basis."""
    A = _structure(A)
    soc = socle(A)
    n = A.dim
    keep = []  # standard basis indices spanning a complement, chosen corner by corner
    for (s, t), idx in sorted(A._hom.items(), key=repr):
        block = [[v[k] for k in idx] for v in soc if any(v[k] for k in idx)]
        comp = complement_basis(block, len(idx))
        for e in comp:
            keep.append(idx[e.index(1)])
    keep.sort()
    full = Matrix.from_columns([[Fraction(int(i == k)) for i in range(n)] for k in keep] + soc, n)
    inv = inverse(full)
    pos = list(range(len(keep)))

    def project(x: Mapping) -> dict:
        v = inv.apply(dense(x, n))
        return {p: v[p] for p in pos if v[p]}

    table = {}
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            prod = A.table.get((i, j))
            if prod:
                pr = project(prod)
                if pr:
                    table[(a, b)] = pr
    idem = {v: project(e) for v, e in A.idempotents.items()}
    return StructureAlgebra([A.labels[i] for i in keep], table, A.vertices, idem,
                            [A.loc[i] for i in keep], name=f"{A.name}/soc")
