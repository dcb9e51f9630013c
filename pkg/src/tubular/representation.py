"""Finite-dimensional representations of bound quiver algebras.

A representation assigns a vector space ``Q^d`` to every vertex and a
matrix (target dim x source dim) to every arrow.  Over the opposite
algebra the same arrow labels are used with source and target swapped,
so the standard duality just transposes every matrix.
"""

from __future__ import annotations

import enum
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

import sympy

from .exact_linear import (
    Matrix,
    block_diag,
    complement_basis,
    hstack,
    inverse,
    is_invertible,
    kernel_vectors,
    row_space_basis,
    solve,
    to_scalar,
    vstack,
)
from .quiver_algebra import (
    BoundQuiverAlgebra,
    Path,
    StructureAlgebra,
    path_from_word,
    radical,
)

ISO_SEED = 20240611


class AlgebraMismatch(ValueError):
    """Two representations live over different algebras."""


class ZeroModule(ValueError):
    """The operation needs a nonzero module."""


def same_algebra(A: BoundQuiverAlgebra, B: BoundQuiverAlgebra) -> bool:
    return A is B or (A.quiver == B.quiver and A.relations == B.relations)


class Representation:
    def __init__(self, algebra: BoundQuiverAlgebra, dims: Mapping, maps: Mapping[str, Matrix],
                 check: bool = True):
        self.algebra = algebra
        q = algebra.quiver
        self.dims = {v: int(dims.get(v, 0)) for v in q.vertices}
        self.maps = {}
        for a in q.arrows:
            m = maps.get(a.label)
            if m is None:
                m = Matrix.zeros(self.dims[a.tgt], self.dims[a.src])
            elif not isinstance(m, Matrix):
                m = Matrix.from_json(m, self.dims[a.tgt], self.dims[a.src])
            if m.shape != (self.dims[a.tgt], self.dims[a.src]):
                raise ValueError(f"matrix for {a.label} has shape {m.shape}, expected "
                                 f"{(self.dims[a.tgt], self.dims[a.src])}")
            self.maps[a.label] = m
        if check:
            for r in algebra.relations:
                if not self.relation_matrix(r).is_zero():
                    raise ValueError(f"representation violates relation {r}")

    @property
    def quiver(self):
        return self.algebra.quiver

    def dim(self, v) -> int:
        return self.dims[v]

    def dim_vector(self) -> tuple:
        return tuple(self.dims[v] for v in self.quiver.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, p: Path | Sequence[str], vertex=None) -> Matrix:
        if not isinstance(p, Path):
            p = path_from_word(self.quiver, p, vertex)
        out = Matrix.identity(self.dims[p.src])
        for a in reversed(p.word):
            out = self.maps[a] @ out
        return out

    def relation_matrix(self, r) -> Matrix:
        out = Matrix.zeros(self.dims[r.tgt], self.dims[r.src])
        for c, p in r.terms:
            out = out + self.path_matrix(p).scale(c)
        return out

    def basis_matrix(self, i: int) -> Matrix:
        """Action of the i-th basis path of the algebra."""
        return self.path_matrix(self.algebra.basis[i])

    def element_matrix(self, x: Mapping, s, t) -> Matrix:
        """Action of the component of x in the corner s -> t."""
        out = Matrix.zeros(self.dims[t], self.dims[s])
        for i, c in x.items():
            p = self.algebra.basis[i]
            if (p.src, p.tgt) == (s, t):
                out = out + self.path_matrix(p).scale(c)
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, Representation) and same_algebra(self.algebra, other.algebra)
                and self.dims == other.dims and self.maps == other.maps)

    def __repr__(self) -> str:
        return f"Representation(dim={''.join(map(str, self.dim_vector()))})"

    def to_json(self) -> dict:
        return {"algebra": self.algebra.name or None,
                "dims": {str(v): d for v, d in self.dims.items()},
                "maps": {a: m.to_json() for a, m in self.maps.items()}}

    @classmethod
    def from_json(cls, algebra: BoundQuiverAlgebra, data: Mapping) -> "Representation":
        lookup = {str(v): v for v in algebra.vertices}
        dims = {lookup[str(k)]: int(d) for k, d in data["dims"].items()}
        unknown = set(data.get("maps", {})) - {a.label for a in algebra.quiver.arrows}
        if unknown:
            raise ValueError(f"no arrows named {sorted(unknown)}")
        maps = {}
        for a in algebra.quiver.arrows:
            if a.label in data.get("maps", {}):
                maps[a.label] = Matrix.from_json(data["maps"][a.label], dims.get(a.tgt, 0),
                                                 dims.get(a.src, 0))
        return cls(algebra, dims, maps)


# ---------------------------------------------------------------------------
# basic modules


def zero_rep(A: BoundQuiverAlgebra) -> Representation:
    return Representation(A, {}, {})


def simple(A: BoundQuiverAlgebra, v) -> Representation:
    return Representation(A, {v: 1}, {})


def direct_sum(*reps: Representation) -> Representation:
    A = reps[0].algebra
    for r in reps[1:]:
        if not same_algebra(A, r.algebra):
            raise AlgebraMismatch("direct sum over different algebras")
    dims = {v: sum(r.dims[v] for r in reps) for v in A.vertices}
    maps = {a.label: block_diag([r.maps[a.label] for r in reps]) for a in A.quiver.arrows}
    return Representation(A, dims, maps, check=False)


def indec_projective(A: BoundQuiverAlgebra, v) -> Representation:
    """P(v): basis paths starting at v, arrows acting by post-composition."""
    cols = {w: A.basis_paths(src=v, tgt=w) for w in A.vertices}
    pos = {w: {b: k for k, b in enumerate(cols[w])} for w in A.vertices}
    maps = {}
    for a in A.quiver.arrows:
        arrow_path = Path(a.src, a.tgt, (a.label,))
        columns = []
        for b in cols[a.src]:
            red = A.reduce_path(arrow_path.after(A.basis[b]))
            col = [Fraction(0)] * len(cols[a.tgt])
            for k, c in red.items():
                col[pos[a.tgt][k]] += c
            columns.append(col)
        maps[a.label] = Matrix.from_columns(columns, len(cols[a.tgt]))
    return Representation(A, {w: len(cols[w]) for w in A.vertices}, maps, check=False)


def dual(M: Representation) -> Representation:
    """Standard duality: a module over A becomes a module over the opposite algebra."""
    op = M.algebra.opposite()
    return Representation(op, dict(M.dims), {a: m.T for a, m in M.maps.items()}, check=False)


def indec_injective(A: BoundQuiverAlgebra, v) -> Representation:
    I = dual(indec_projective(A.opposite(), v))
    return Representation(A, I.dims, I.maps, check=False)


def _over(M: Representation, A: BoundQuiverAlgebra) -> Representation:
    return M if M.algebra is A else Representation(A, M.dims, M.maps, check=False)


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class HomBasis:
    source: Representation
    target: Representation
    maps: list  # each: dict vertex -> Matrix

    @property
    def dim(self) -> int:
        return len(self.maps)

    def combine(self, coeffs: Sequence) -> dict:
        out = {v: Matrix.zeros(self.target.dims[v], self.source.dims[v]) for v in self.source.algebra.vertices}
        for c, f in zip(coeffs, self.maps):
            if c:
                out = {v: out[v] + f[v].scale(c) for v in out}
        return out


def _hom_system(M: Representation, N: Representation):
    offsets = {}
    n = 0
    for v in M.algebra.vertices:
        offsets[v] = n
        n += N.dims[v] * M.dims[v]
    rows = []
    for a in M.quiver.arrows:
        s, t = a.src, a.tgt
        Ma, Na = M.maps[a.label], N.maps[a.label]
        # (f_t M(a))[i][j] - (N(a) f_s)[i][j] = 0
        for i in range(N.dims[t]):
            for j in range(M.dims[s]):
                row = [Fraction(0)] * n
                for k in range(M.dims[t]):
                    c = Ma[k, j]
                    if c:
                        row[offsets[t] + i * M.dims[t] + k] += c
                for k in range(N.dims[s]):
                    c = Na[i, k]
                    if c:
                        row[offsets[s] + k * M.dims[s] + j] -= c
                rows.append(row)
    return rows, offsets, n


def hom_space(M: Representation, N: Representation) -> HomBasis:
    if not same_algebra(M.algebra, N.algebra):
        raise AlgebraMismatch("hom between modules over different algebras")
    rows, offsets, n = _hom_system(M, N)
    sol = kernel_vectors(Matrix(len(rows), n, rows)) if rows else \
        [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    maps = []
    for vec in sol:
        f = {}
        for v in M.algebra.vertices:
            r, c = N.dims[v], M.dims[v]
            o = offsets[v]
            f[v] = Matrix(r, c, [vec[o + i * c: o + (i + 1) * c] for i in range(r)])
        maps.append(f)
    return HomBasis(M, N, maps)


def is_morphism(f: Mapping, M: Representation, N: Representation) -> bool:
    return all(f[a.tgt] @ M.maps[a.label] == N.maps[a.label] @ f[a.src] for a in M.quiver.arrows)


def compose(g: Mapping, f: Mapping) -> dict:
    return {v: g[v] @ f[v] for v in f}


def identity_map(M: Representation) -> dict:
    return {v: Matrix.identity(d) for v, d in M.dims.items()}


def _flatten(f: Mapping, vertices) -> list:
    return [x for v in vertices for row in f[v].to_lists() for x in row]


def endomorphism_algebra(M: Representation) -> tuple[StructureAlgebra, HomBasis]:
    H = hom_space(M, M)
    vs = M.algebra.vertices
    n = sum(M.dims[v] ** 2 for v in vs)
    flat = [_flatten(f, vs) for f in H.maps]
    basis_cols = Matrix.from_columns(flat, n)

    def coords(g):
        x, _ = solve(basis_cols, _flatten(g, vs))
        return x

    table = {}
    for i, fi in enumerate(H.maps):
        for j, fj in enumerate(H.maps):
            c = coords(compose(fi, fj))
            sp = {k: v for k, v in enumerate(c) if v}
            if sp:
                table[(i, j)] = sp
    one = {k: v for k, v in enumerate(coords(identity_map(M))) if v}
    E = StructureAlgebra([f"f{i}" for i in range(H.dim)], table, ["*"], {"*": one},
                         [("*", "*")] * H.dim, name="End")
    return E, H


class Verdict(enum.Enum):
    INDEC = "Indec"
    DECOMPOSABLE = "Decomposable"
    INDEC_NON_SPLIT = "IndecNonSplit"


def _total_matrix(f: Mapping, vertices) -> Matrix:
    return block_diag([f[v] for v in vertices])


def _splits(mat: Matrix) -> bool:
    """True when the characteristic polynomial has two distinct irreducible factors."""
    if mat.rows == 0:
        return False
    S = sympy.Matrix(mat.to_lists())
    x = sympy.Symbol("x")
    poly = S.charpoly(x).as_expr()
    _, factors = sympy.factor_list(poly, x, domain="QQ")
    return len(factors) > 1


def indecomposability(M: Representation, attempts: int = 40) -> Verdict:
    """Three-valued verdict; see ``is_indecomposable``."""
    if M.is_zero():
        raise ZeroModule("the zero module is neither decomposable nor indecomposable")
    E, H = endomorphism_algebra(M)
    if E.dim - len(radical(E)) == 1:
        return Verdict.INDEC
    vs = M.algebra.vertices
    rng = random.Random(ISO_SEED)
    candidates = [[int(i == k) for i in range(H.dim)] for k in range(H.dim)]
    candidates += [[int(i in (a, b)) for i in range(H.dim)] for a, b in combinations(range(H.dim), 2)]
    candidates += [[rng.randint(-3, 3) for _ in range(H.dim)] for _ in range(attempts)]
    for coeffs in candidates:
        if _splits(_total_matrix(H.combine(coeffs), vs)):
            return Verdict.DECOMPOSABLE
    return Verdict.INDEC_NON_SPLIT


def is_indecomposable(M: Representation) -> bool:
    """True iff End(M)/rad End(M) is one-dimensional.

    When that quotient is bigger but no endomorphism with a reducible
    characteristic polynomial turns up, the module may be indecomposable with
    a non-split endomorphism ring over the rationals; a warning is emitted and
    True is returned.
    """
    v = indecomposability(M)
    if v is Verdict.INDEC_NON_SPLIT:
        warnings.warn("End(M)/rad has dimension > 1 but no splitting endomorphism was found",
                      RuntimeWarning, stacklevel=2)
        return True
    return v is Verdict.INDEC


def find_isomorphism(M: Representation, N: Representation, attempts: int = 30) -> dict | None:
    if not same_algebra(M.algebra, N.algebra) or M.dim_vector() != N.dim_vector():
        return None
    H = hom_space(M, N)
    if H.dim == 0:
        return identity_map(M) if M.is_zero() else None
    vs = M.algebra.vertices

    def ok(f):
        return all(is_invertible(f[v]) for v in vs)

    rng = random.Random(ISO_SEED)
    for _ in range(attempts):
        f = H.combine([rng.randint(-5, 5) for _ in range(H.dim)])
        if ok(f):
            return f
    for r in range(1, H.dim + 1):
        for subset in combinations(range(H.dim), r):
            f = H.combine([int(i in subset) for i in range(H.dim)])
            if ok(f):
                return f
    return None


def is_isomorphic(M: Representation, N: Representation) -> bool:
    return find_isomorphism(M, N) is not None


# ---------------------------------------------------------------------------
# kernels, cokernels, tops


def radical_at(M: Representation, v) -> list:
    vecs = []
    for a in M.quiver.arrows_in(v):
        vecs.extend(list(c) for c in M.maps[a.label].columns())
    return row_space_basis(vecs, M.dims[v])


def top_generators(M: Representation) -> list[tuple]:
    """Pairs (vertex, vector) lifting a basis of the top of M."""
    out = []
    for v in M.algebra.vertices:
        for vec in complement_basis(radical_at(M, v), M.dims[v]):
            out.append((v, vec))
    return out


def top_dims(M: Representation) -> dict:
    return {v: M.dims[v] - len(radical_at(M, v)) for v in M.algebra.vertices}


def yoneda_map(M: Representation, u, m: Sequence) -> dict:
    """The morphism P(u) -> M sending the trivial path at u to m."""
    A = M.algebra
    m = [to_scalar(x) for x in m]
    f = {}
    for w in A.vertices:
        cols = [M.path_matrix(A.basis[b]).apply(m) for b in A.basis_paths(src=u, tgt=w)]
        f[w] = Matrix.from_columns(cols, M.dims[w])
    return f


def map_from_sum(target: Representation, parts: Sequence[dict]) -> dict:
    """Assemble maps P_k -> target into one map from the direct sum."""
    return {v: hstack([p[v] for p in parts], target.dims[v]) for v in target.algebra.vertices}


def projective_cover(M: Representation) -> tuple[Representation, dict, list]:
    """P0 -> M from a lift of the top; returns (P0, map, generator vertices)."""
    A = M.algebra
    gens = top_generators(M)
    if not gens:
        return zero_rep(A), {v: Matrix.zeros(M.dims[v], 0) for v in A.vertices}, []
    P0 = direct_sum(*[indec_projective(A, u) for u, _ in gens])
    pi = map_from_sum(M, [yoneda_map(M, u, m) for u, m in gens])
    return P0, pi, [u for u, _ in gens]


def kernel_rep(M: Representation, f: Mapping) -> tuple[Representation, dict]:
    """Kernel of f: M -> N with its inclusion."""
    A = M.algebra
    basis = {v: kernel_vectors(f[v]) for v in A.vertices}
    incl = {v: Matrix.from_columns(basis[v], M.dims[v]) for v in A.vertices}
    maps = {}
    for a in A.quiver.arrows:
        K_s, K_t = basis[a.src], basis[a.tgt]
        cols = []
        for vec in K_s:
            image = M.maps[a.label].apply(vec)
            x, _ = solve(incl[a.tgt], image)
            cols.append(x)
        maps[a.label] = Matrix.from_columns(cols, len(K_t))
    K = Representation(A, {v: len(basis[v]) for v in A.vertices}, maps, check=False)
    return K, incl


def _quotient(image_vectors: list, n: int) -> tuple[Matrix, Matrix]:
    """(projection n -> c, section c -> n) for the quotient by span(image_vectors)."""
    im = row_space_basis(image_vectors, n)
    comp = complement_basis(im, n)
    full = Matrix.from_columns(im + comp, n)
    inv = inverse(full) if n else Matrix(0, 0)
    proj = Matrix(len(comp), n, [inv.row(len(im) + k) for k in range(len(comp))])
    section = Matrix.from_columns(comp, n)
    return proj, section


def cokernel(N: Representation, f: Mapping, M_dims: Mapping | None = None) -> tuple[Representation, dict]:
    """Cokernel of f: M -> N with its projection."""
    A = N.algebra
    proj, sect = {}, {}
    for v in A.vertices:
        proj[v], sect[v] = _quotient([list(c) for c in f[v].columns()], N.dims[v])
    maps = {a.label: proj[a.tgt] @ N.maps[a.label] @ sect[a.src] for a in A.quiver.arrows}
    C = Representation(A, {v: proj[v].rows for v in A.vertices}, maps, check=False)
    return C, proj


def projective_map(A: BoundQuiverAlgebra, u, v, x: Mapping) -> dict:
    """The map P(u) -> P(v) sending the trivial path at u to x (paths v -> u)."""
    return yoneda_map(indec_projective(A, v), u, _coords_in_projective(A, v, u, x))


def _coords_in_projective(A: BoundQuiverAlgebra, v, w, x: Mapping) -> list:
    idx = A.basis_paths(src=v, tgt=w)
    pos = {b: k for k, b in enumerate(idx)}
    out = [Fraction(0)] * len(idx)
    for b, c in x.items():
        if b not in pos:
            if c:
                raise ValueError("element does not lie in the requested corner")
            continue
        out[pos[b]] += c
    return out


def _split_projective_vector(A: BoundQuiverAlgebra, gens: Sequence, w, vec: Sequence) -> list[dict]:
    """Cut a vector of (sum of P(v_k))(w) into corner elements, one per summand."""
    out = []
    pos = 0
    for v in gens:
        idx = A.basis_paths(src=v, tgt=w)
        out.append({b: vec[pos + k] for k, b in enumerate(idx) if vec[pos + k]})
        pos += len(idx)
    return out


@dataclass
class Presentation:
    p0_vertices: list
    p1_vertices: list
    components: list  # components[l][k]: element of A in paths v_k -> u_l


def minimal_presentation(M: Representation) -> Presentation:
    A = M.algebra
    P0, pi, v0 = projective_cover(M)
    K, incl = kernel_rep(P0, pi)
    gens = top_generators(K)
    comps = []
    for u, vec in gens:
        in_p0 = incl[u].apply(vec)
        comps.append(_split_projective_vector(A, v0, u, in_p0))
    return Presentation(v0, [u for u, _ in gens], comps)


def transpose(M: Representation) -> Representation:
    """Tr M over the opposite algebra: cokernel of Hom(P0, A) -> Hom(P1, A)."""
    A = M.algebra
    op = A.opposite()
    pres = minimal_presentation(M)
    src = [indec_projective(op, v) for v in pres.p0_vertices]
    tgt_parts = [indec_projective(op, u) for u in pres.p1_vertices]
    if not tgt_parts:
        return zero_rep(op)
    target = direct_sum(*tgt_parts)
    blocks = []  # map from each P^op(v_k) into target
    for k, v in enumerate(pres.p0_vertices):
        pieces = []
        for l, u in enumerate(pres.p1_vertices):
            a = pres.components[l][k]
            pieces.append(projective_map(op, v, u, A.opposite_element(a)))
        blocks.append({w: vstack([p[w] for p in pieces], src[k].dims[w]) for w in op.vertices})
    if blocks:
        d_star = map_from_sum(target, blocks)
    else:
        d_star = {w: Matrix.zeros(target.dims[w], 0) for w in op.vertices}
    C, _ = cokernel(target, d_star)
    return C


def ar_translate(M: Representation) -> Representation:
    """tau M = D Tr M; zero exactly when M is projective."""
    return _over(dual(transpose(M)), M.algebra)


def ar_translate_inverse(M: Representation) -> Representation:
    A = M.algebra
    return _over(dual(ar_translate(dual(M))), A)


def is_projective(M: Representation) -> bool:
    P0, _, _ = projective_cover(M)
    return P0.dim_vector() == M.dim_vector()
