"""Quivers, admissible relations, bound quiver algebras and structure-constant algebras.

Composition convention: a path is stored as a *word* of arrow labels in
which the left-most arrow is applied last, exactly like composing maps.
So the word ``("a", "b")`` means "first b, then a", and the algebra
product ``x * y`` of two paths is ``x`` after ``y``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .exact_linear import (
    Matrix,
    _rref_lists,
    format_scalar,
    kernel_vectors,
    row_space_basis,
    span_rank,
    to_scalar,
)

Vertex = Hashable
Vector = dict  # sparse vector: basis index -> Fraction


class NotAdmissible(ValueError):
    """A relation uses a path of length < 2 or mixes non-parallel paths."""


class NotFiniteDimensional(ValueError):
    """No power of the arrow ideal up to the cap lies in the relation ideal."""


class NotBasic(ValueError):
    """Some corner algebra e_i A e_i is not local with residue field the ground field."""


class BadAssignment(ValueError):
    """Assigned arrow images do not lie in the radical or do not span rad/rad^2."""


@dataclass(frozen=True)
class Arrow:
    label: str
    src: Vertex
    tgt: Vertex


class Quiver:
    def __init__(self, vertices: Iterable[Vertex], arrows: Iterable[Arrow | tuple]):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        arrs = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            if a.src not in self.vertices or a.tgt not in self.vertices:
                raise ValueError(f"arrow {a.label} uses an undeclared vertex")
            arrs.append(a)
        self.arrows = tuple(arrs)
        self._by_label = {a.label: a for a in self.arrows}
        if len(self._by_label) != len(self.arrows):
            raise ValueError("duplicate arrow labels")
        self._vindex = {v: i for i, v in enumerate(self.vertices)}

    def arrow(self, label: str) -> Arrow:
        return self._by_label[label]

    def has_arrow(self, label: str) -> bool:
        return label in self._by_label

    def vertex_index(self, v: Vertex) -> int:
        return self._vindex[v]

    def arrows_out(self, v: Vertex) -> list[Arrow]:
        return [a for a in self.arrows if a.src == v]

    def arrows_in(self, v: Vertex) -> list[Arrow]:
        return [a for a in self.arrows if a.tgt == v]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.label, a.tgt, a.src) for a in self.arrows])

    def multiplicities(self) -> Counter:
        return Counter((a.src, a.tgt) for a in self.arrows)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "arrows": [{"label": a.label, "src": a.src, "tgt": a.tgt} for a in self.arrows]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Quiver":
        return cls(data["vertices"], [Arrow(a["label"], a["src"], a["tgt"]) for a in data["arrows"]])

    def __eq__(self, other) -> bool:
        return isinstance(other, Quiver) and self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


def same_multigraph(q1: Quiver, q2: Quiver, vertex_map: Mapping | None = None) -> bool:
    """Compare two quivers as multigraphs, optionally renaming q1's vertices."""
    vm = vertex_map or {v: v for v in q1.vertices}
    if sorted(map(repr, (vm[v] for v in q1.vertices))) != sorted(map(repr, q2.vertices)):
        return False
    left = Counter((vm[a.src], vm[a.tgt]) for a in q1.arrows)
    return left == q2.multiplicities()


@dataclass(frozen=True)
class Path:
    src: Vertex
    tgt: Vertex
    word: tuple = ()

    @property
    def length(self) -> int:
        return len(self.word)

    def after(self, other: "Path") -> "Path":
        """Composite self ∘ other (other first)."""
        if other.tgt != self.src:
            raise ValueError("paths are not composable")
        return Path(other.src, self.tgt, self.word + other.word)

    def reversed(self) -> "Path":
        return Path(self.tgt, self.src, tuple(reversed(self.word)))

    def __str__(self) -> str:
        return "".join(self.word) if self.word else f"e[{self.src}]"


def trivial_path(v: Vertex) -> Path:
    return Path(v, v, ())


def path_from_word(q: Quiver, word: Sequence[str], vertex: Vertex | None = None) -> Path:
    """Build a path from a word (last-applied arrow first); empty word needs ``vertex``."""
    word = tuple(word)
    if not word:
        if vertex is None:
            raise ValueError("the trivial path needs a vertex")
        return trivial_path(vertex)
    arrows = [q.arrow(a) for a in word]
    for later, earlier in zip(arrows, arrows[1:]):
        if earlier.tgt != later.src:
            raise ValueError(f"word {word} is not composable")
    return Path(arrows[-1].src, arrows[0].tgt, word)


def paths_by_length(q: Quiver, max_len: int) -> list[list[Path]]:
    out = [[trivial_path(v) for v in q.vertices]]
    for _ in range(max_len):
        nxt = []
        for p in out[-1]:
            for a in q.arrows_out(p.tgt):
                nxt.append(Path(p.src, a.tgt, (a.label,) + p.word))
        out.append(nxt)
    return out


@dataclass(frozen=True)
class Relation:
    """Formal combination of parallel paths, each of length at least 2."""

    terms: tuple  # of (Fraction, Path)

    def __post_init__(self):
        terms = tuple((to_scalar(c), p) for c, p in self.terms if to_scalar(c))
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise NotAdmissible("relation has no nonzero terms")
        s, t = terms[0][1].src, terms[0][1].tgt
        for _, p in terms:
            if (p.src, p.tgt) != (s, t):
                raise NotAdmissible("relation mixes non-parallel paths")
            if p.length < 2:
                raise NotAdmissible(f"relation contains the short path {p}")

    @property
    def src(self):
        return self.terms[0][1].src

    @property
    def tgt(self):
        return self.terms[0][1].tgt

    @property
    def min_length(self) -> int:
        return min(p.length for _, p in self.terms)

    @classmethod
    def from_words(cls, q: Quiver, terms: Iterable[tuple]) -> "Relation":
        return cls(tuple((to_scalar(c), path_from_word(q, w)) for c, w in terms))

    def reversed(self) -> "Relation":
        return Relation(tuple((c, p.reversed()) for c, p in self.terms))

    def to_json(self) -> list[dict]:
        return [{"coef": format_scalar(c), "path": list(p.word)} for c, p in self.terms]

    @classmethod
    def from_json(cls, q: Quiver, data: Sequence[Mapping]) -> "Relation":
        try:
            return cls.from_words(q, [(t["coef"], t["path"]) for t in data])
        except ValueError as exc:
            if isinstance(exc, NotAdmissible):
                raise
            raise NotAdmissible(str(exc)) from exc

    def __str__(self) -> str:
        return " + ".join(f"({format_scalar(c)}){p}" for c, p in self.terms) + " = 0"


# ---------------------------------------------------------------------------
# sparse vector helpers

def vec_add(x: Mapping, y: Mapping, c=1) -> dict:
    out = dict(x)
    c = to_scalar(c)
    for k, v in y.items():
        nv = out.get(k, 0) + c * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def vec_scale(x: Mapping, c) -> dict:
    c = to_scalar(c)
    if not c:
        return {}
    return {k: c * v for k, v in x.items()}


def dense(x: Mapping, n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for k, v in x.items():
        out[k] = to_scalar(v)
    return out


def sparse(x: Sequence) -> dict:
    return {i: to_scalar(v) for i, v in enumerate(x) if v}


# ---------------------------------------------------------------------------
# structure-constant algebras


class StructureAlgebra:
    """Finite-dimensional algebra given by a multiplication table.

    The basis is assumed to be compatible with the chosen idempotents:
    every basis element ``b`` lies in a single corner ``e_t A e_s`` and
    ``loc[b] = (s, t)`` records it (a "morphism" from ``s`` to ``t``).
    ``table[(i, j)]`` is the sparse product ``b_i * b_j``.
    """

    def __init__(self, labels: Sequence, table: Mapping, vertices: Sequence,
                 idempotents: Mapping, loc: Sequence, name: str = ""):
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.table = {k: dict(v) for k, v in table.items() if v}
        self.vertices = list(vertices)
        self.idempotents = {v: dict(e) for v, e in idempotents.items()}
        self.loc = list(loc)
        self.name = name
        if len(self.loc) != self.dim:
            raise ValueError("loc must give a corner for every basis element")
        self._hom: dict = {}
        for i, (s, t) in enumerate(self.loc):
            self._hom.setdefault((s, t), []).append(i)
        self._op = None

    # category-style access
    @property
    def objects(self) -> list:
        return self.vertices

    def hom(self, x, y) -> list[int]:
        """Basis indices of morphisms x -> y (that is, of e_y A e_x)."""
        return self._hom.get((x, y), [])

    def basis_vector(self, i: int) -> dict:
        return {i: Fraction(1)}

    def one(self) -> dict:
        out: dict = {}
        for e in self.idempotents.values():
            out = vec_add(out, e)
        return out

    def mul_basis(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            if not a:
                continue
            for j, b in y.items():
                if not b:
                    continue
                prod = self.table.get((i, j))
                if prod:
                    out = vec_add(out, prod, a * b)
        return out

    def left_matrix(self, x: Mapping) -> Matrix:
        """Matrix of y -> x*y in the standard basis."""
        cols = [dense(self.mul(x, {j: 1}), self.dim) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim)

    def check_associative(self) -> bool:
        for i in range(self.dim):
            for j in self._composable_right(i):
                ij = self.table.get((i, j), {})
                for k in self._composable_right(j):
                    left = self.mul(ij, {k: 1})
                    right = self.mul({i: 1}, self.table.get((j, k), {}))
                    if left != right:
                        return False
        return True

    def _composable_right(self, i: int) -> list[int]:
        s, _ = self.loc[i]
        return [j for j in range(self.dim) if self.loc[j][1] == s]

    def check_idempotents(self) -> bool:
        es = list(self.idempotents.values())
        for a in range(len(es)):
            for b in range(len(es)):
                prod = self.mul(es[a], es[b])
                if prod != (es[a] if a == b else {}):
                    return False
        one = self.one()
        for i in range(self.dim):
            if self.mul(one, {i: 1}) != {i: Fraction(1)} or self.mul({i: 1}, one) != {i: Fraction(1)}:
                return False
        return True

    def opposite(self) -> "StructureAlgebra":
        if self._op is None:
            table = {(j, i): v for (i, j), v in self.table.items()}
            op = StructureAlgebra(self.labels, table, self.vertices, self.idempotents,
                                  [(t, s) for s, t in self.loc], name=f"({self.name})^op")
            op._op = self
            self._op = op
        return self._op

    def block(self, x: Mapping, s, t) -> dict:
        """Component of x in the corner of morphisms s -> t."""
        idx = set(self.hom(s, t))
        return {k: v for k, v in x.items() if k in idx}

    def __repr__(self) -> str:
        return f"StructureAlgebra({self.name or 'unnamed'}, dim={self.dim})"


# ---------------------------------------------------------------------------
# bound quiver algebras


class BoundQuiverAlgebra:
    """kQ/I with a normal-form path basis and reduction to that basis."""

    def __init__(self, quiver: Quiver, relations: Sequence[Relation], bound: int,
                 basis: list[Path], reductions: dict, name: str = ""):
        self.quiver = quiver
        self.relations = list(relations)
        self.bound = bound
        self.basis = basis
        self._index = {p: i for i, p in enumerate(basis)}
        self._reductions = reductions  # non-basis path of length <= bound -> sparse vector
        self.name = name
        self._structure = None
        self._op = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertices(self):
        return self.quiver.vertices

    def index_of(self, p: Path) -> int | None:
        return self._index.get(p)

    def reduce_path(self, p: Path) -> dict:
        if p in self._index:
            return {self._index[p]: Fraction(1)}
        if p.length >= self.bound:
            return {}
        return dict(self._reductions[p])

    def element(self, terms: Iterable[tuple]) -> dict:
        """Reduce a combination [(coef, Path or word)] to basis coordinates."""
        out: dict = {}
        for c, p in terms:
            if not isinstance(p, Path):
                p = path_from_word(self.quiver, p)
            out = vec_add(out, self.reduce_path(p), c)
        return out

    def path_element(self, word: Sequence[str], vertex=None) -> dict:
        return self.reduce_path(path_from_word(self.quiver, word, vertex))

    def basis_paths(self, src=None, tgt=None) -> list[int]:
        return [i for i, p in enumerate(self.basis)
                if (src is None or p.src == src) and (tgt is None or p.tgt == tgt)]

    def mul_basis(self, i: int, j: int) -> dict:
        bi, bj = self.basis[i], self.basis[j]
        if bi.src != bj.tgt:
            return {}
        return self.reduce_path(bi.after(bj))

    def structure(self) -> StructureAlgebra:
        if self._structure is None:
            table = {}
            for i, bi in enumerate(self.basis):
                for j, bj in enumerate(self.basis):
                    if bi.src == bj.tgt:
                        prod = self.reduce_path(bi.after(bj))
                        if prod:
                            table[(i, j)] = prod
            idem = {v: {self._index[trivial_path(v)]: Fraction(1)} for v in self.vertices}
            self._structure = StructureAlgebra(
                [str(p) for p in self.basis], table, list(self.vertices), idem,
                [(p.src, p.tgt) for p in self.basis], name=self.name)
        return self._structure

    def opposite(self) -> "BoundQuiverAlgebra":
        if self._op is None:
            op = build_algebra(self.quiver.opposite(), [r.reversed() for r in self.relations],
                               cap=max(self.bound + 1, 2), name=f"({self.name})^op")
            op._op = self
            self._op = op
        return self._op

    def opposite_element(self, x: Mapping) -> dict:
        """Transport an element of A to A^op (reverse every basis path)."""
        op = self.opposite()
        out: dict = {}
        for i, c in x.items():
            out = vec_add(out, op.reduce_path(self.basis[i].reversed()), c)
        return out

    def dim_matrix(self) -> list[list[int]]:
        """Cartan-style counts: entry [w][v] = dim of the corner of paths v -> w."""
        vs = self.vertices
        return [[len(self.basis_paths(src=v, tgt=w)) for v in vs] for w in vs]

    def to_json(self) -> dict:
        return {"quiver": self.quiver.to_json(), "relations": [r.to_json() for r in self.relations],
                "dim": self.dim, "bound": self.bound, "basis": [list(p.word) if p.word else [f"e:{p.src}"]
                                                                for p in self.basis]}

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra({self.name or 'unnamed'}, dim={self.dim})"


def _ideal_span(q: Quiver, rels: Sequence[Relation], paths: list[list[Path]], N: int) -> dict:
    """Generators of the relation ideal truncated above length N, grouped by (src, tgt)."""
    starting = {}
    ending = {}
    for L in range(N + 1):
        for p in paths[L]:
            starting.setdefault(p.src, []).append(p)
            ending.setdefault(p.tgt, []).append(p)
    gens: dict = {}
    for r in rels:
        m = r.min_length
        if m > N:
            continue
        for w in ending.get(r.src, []):
            if w.length + m > N:
                continue
            for u in starting.get(r.tgt, []):
                if u.length + w.length + m > N:
                    continue
                vec = {}
                for c, p in r.terms:
                    full = u.after(p.after(w))
                    if full.length <= N:
                        vec[full] = vec.get(full, 0) + c
                vec = {k: v for k, v in vec.items() if v}
                if vec:
                    gens.setdefault((w.src, u.tgt), []).append(vec)
    return gens


def build_algebra(q: Quiver, rels: Sequence[Relation], cap: int = 64, name: str = "") -> BoundQuiverAlgebra:
    """Path basis and reductions for kQ/I.

    The nilpotency bound N is the least length for which every path of
    length N reduces to zero modulo the ideal truncated above N.
    """
    rels = list(rels)
    for r in rels:
        for _, p in r.terms:
            for a in p.word:
                if not q.has_arrow(a):
                    raise NotAdmissible(f"relation uses unknown arrow {a}")
            if p.length < 2:
                raise NotAdmissible(f"relation contains the short path {p}")
    paths = paths_by_length(q, 1)
    for N in range(1, cap + 1):
        while len(paths) <= N:
            nxt = []
            for p in paths[-1]:
                for a in q.arrows_out(p.tgt):
                    nxt.append(Path(p.src, a.tgt, (a.label,) + p.word))
            paths.append(nxt)
        gens = _ideal_span(q, rels, paths, N)
        if any((p.src, p.tgt) not in gens for p in paths[N]):
            continue
        reductions, basis = _normal_forms(paths, gens, N)
        if all(p in reductions and not reductions[p] for p in paths[N]):
            return BoundQuiverAlgebra(q, rels, N, basis, reductions, name=name)
    raise NotFiniteDimensional(f"no nilpotency bound found up to length {cap}")


def _normal_forms(paths: list[list[Path]], gens: dict, N: int) -> tuple[dict, list[Path]]:
    classes: dict = {}
    for L in range(N + 1):
        for p in paths[L]:
            classes.setdefault((p.src, p.tgt), []).append(p)
    reductions: dict = {}
    basis: list[Path] = []
    for key in sorted(classes, key=repr):
        cls_paths = classes[key]
        # longest paths first so that pivots (eliminated paths) are as long as possible
        order = sorted(cls_paths, key=lambda p: (-p.length, p.word))
        col = {p: i for i, p in enumerate(order)}
        rows = []
        for vec in gens.get(key, []):
            row = [Fraction(0)] * len(order)
            for p, c in vec.items():
                row[col[p]] += c
            rows.append(row)
        rows, piv = _rref_lists(rows, len(order))
        pivset = set(piv)
        free = [order[i] for i in range(len(order)) if i not in pivset]
        free_sorted = sorted(free, key=lambda p: (p.length, p.word))
        basis.extend(free_sorted)
        for row, pc in zip(rows, piv):
            reductions[order[pc]] = {order[k]: -row[k] for k in range(len(order)) if k != pc and row[k]}
    # order basis: trivial paths first (by vertex order), then by length
    vorder = {}
    for p in paths[0]:
        vorder[p.src] = len(vorder)
    basis.sort(key=lambda p: (p.length, vorder[p.src], vorder[p.tgt], p.word))
    index = {p: i for i, p in enumerate(basis)}
    final = {}
    for p, vec in reductions.items():
        final[p] = {index[b]: c for b, c in vec.items()}
    return final, basis


# ---------------------------------------------------------------------------
# radical, ext quiver, relation checks


def _as_structure(A) -> StructureAlgebra:
    return A.structure() if isinstance(A, BoundQuiverAlgebra) else A


def radical(A) -> list[list[Fraction]]:
    """Basis of the Jacobson radical via the trace form (characteristic zero).

    x lies in the radical iff tr(L_{xy}) = 0 for every y.  The result is
    checked to be nilpotent.
    """
    A = _as_structure(A)
    n = A.dim
    traces = [Fraction(0)] * n
    for (k, i), prod in A.table.items():
        c = prod.get(i)
        if c:
            traces[k] += c
    form = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), prod in A.table.items():
        s = sum((c * traces[k] for k, c in prod.items()), Fraction(0))
        if s:
            form[i][j] = s
    # x in rad  iff  sum_i x_i form[i][j] = 0 for all j
    rad = kernel_vectors(Matrix(n, n, form).transpose())
    rad = row_space_basis(rad, n)
    if not _is_nilpotent(A, rad):
        raise ArithmeticError("trace-form kernel is not nilpotent")
    return rad


def _product_span(A: StructureAlgebra, X: list, Y: list) -> list:
    prods = []
    for x in X:
        sx = sparse(x)
        for y in Y:
            p = A.mul(sx, sparse(y))
            if p:
                prods.append(dense(p, A.dim))
    return row_space_basis(prods, A.dim)


def _is_nilpotent(A: StructureAlgebra, rad: list) -> bool:
    power = rad
    for _ in range(A.dim + 1):
        if not power:
            return True
        power = _product_span(A, power, rad)
    return not power


def radical_square(A, rad: list | None = None) -> list:
    A = _as_structure(A)
    rad = radical(A) if rad is None else rad
    return _product_span(A, rad, rad)


def _block_rank(A: StructureAlgebra, vectors: list, s, t) -> int:
    idx = A.hom(s, t)
    return span_rank([[v[k] for k in idx] for v in vectors], len(idx)) if idx else 0


@dataclass
class ExtQuiver:
    quiver: Quiver
    lifts: dict = field(default_factory=dict)  # arrow label -> sparse element of rad
    radical: list = field(default_factory=list)
    radical_square: list = field(default_factory=list)

    @property
    def multiplicities(self) -> Counter:
        return self.quiver.multiplicities()


def ext_quiver(A) -> ExtQuiver:
    """Quiver of A: arrows i -> j counted by dim e_j (rad/rad^2) e_i."""
    A = _as_structure(A)
    rad = radical(A)
    rad2 = _product_span(A, rad, rad)
    for v in A.vertices:
        if len(A.hom(v, v)) - _block_rank(A, rad, v, v) != 1:
            raise NotBasic(f"corner algebra at {v!r} is not local")
    arrows = []
    lifts = {}
    for s in A.vertices:
        for t in A.vertices:
            idx = A.hom(s, t)
            if not idx:
                continue
            r_block = row_space_basis([[v[k] for k in idx] for v in rad], len(idx))
            r2_block = row_space_basis([[v[k] for k in idx] for v in rad2], len(idx))
            if len(r_block) == len(r2_block):
                continue
            # complete rad^2 to rad inside this corner
            chosen = list(r2_block)
            k = 0
            for vec in r_block:
                if span_rank(chosen + [vec], len(idx)) > len(chosen):
                    chosen.append(vec)
                    label = f"{s}->{t}#{k}"
                    arrows.append(Arrow(label, s, t))
                    lifts[label] = {idx[m]: c for m, c in enumerate(vec) if c}
                    k += 1
    return ExtQuiver(Quiver(A.vertices, arrows), lifts, rad, rad2)


def evaluate_word(A: StructureAlgebra, assignment: Mapping[str, Mapping], word: Sequence[str]) -> dict:
    """Product of assigned elements along a word (left-most factor applied last)."""
    out = None
    for a in word:
        x = assignment[a]
        out = dict(x) if out is None else A.mul(out, x)
        if not out:
            return {}
    return out or {}


def evaluate_relation(A: StructureAlgebra, assignment: Mapping, rel: Relation) -> dict:
    out: dict = {}
    for c, p in rel.terms:
        out = vec_add(out, evaluate_word(A, assignment, p.word), c)
    return out


def verify_relations(A, assignment: Mapping[str, Mapping], rels: Sequence[Relation]) -> bool:
    """True iff each relation vanishes under the arrow assignment.

    Raises BadAssignment unless the assigned elements lie in the radical and
    their residues span rad/rad^2.
    """
    A = _as_structure(A)
    assignment = {k: (sparse(v) if not isinstance(v, Mapping) else dict(v)) for k, v in assignment.items()}
    rad = radical(A)
    rad2 = _product_span(A, rad, rad)
    n = A.dim
    vecs = [dense(v, n) for v in assignment.values()]
    for label, v in zip(assignment, vecs):
        if span_rank(rad + [v], n) != len(rad):
            raise BadAssignment(f"image of {label} is not in the radical")
    if span_rank(rad2 + vecs, n) != len(rad):
        raise BadAssignment("assigned residues do not span rad/rad^2")
    return all(not evaluate_relation(A, assignment, r) for r in rels)
