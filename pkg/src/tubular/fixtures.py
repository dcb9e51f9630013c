"""Worked examples as reusable builders.

Label normalisation: every relation below is written in the library's
composition order (left-most arrow applied last).  The source text writes
paths left to right in order of traversal, so each of its words appears
here reversed.  For instance its ``alpha_2 beta_1 = lambda alpha_2 beta_2``
becomes ``("b1", "a2") = lambda ("b2", "a2")``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Mapping, Sequence

from .constructions import (
    build_ASnm,
    one_point_coextension,
    one_point_extension,
    trivial_extension,
)
from .exact_linear import Matrix, kernel_vectors, rank
from .quiver_algebra import (
    BoundQuiverAlgebra,
    Quiver,
    Relation,
    StructureAlgebra,
    build_algebra,
    evaluate_word,
    vec_add,
)
from .representation import Representation

FIXTURE_SEED = 7


# ---------------------------------------------------------------------------
# Kronecker


def kronecker() -> BoundQuiverAlgebra:
    """Two parallel arrows b1, b2 from c2 to c1."""
    q = Quiver(["c1", "c2"], [("b1", "c2", "c1"), ("b2", "c2", "c1")])
    return build_algebra(q, [], name="kronecker")


def kronecker_regular(A: BoundQuiverAlgebra, lam) -> Representation:
    """R_lambda: one-dimensional at both vertices, b1 acting by lambda and b2 by 1."""
    return Representation(A, {"c1": 1, "c2": 1},
                          {"b1": Matrix.from_rows([[lam]]), "b2": Matrix.from_rows([[1]])})


def kronecker_S22(lam=2):
    """C[S,2,2] for S = R_lambda.

    Quiver w2 -> w1 -> c2 => c1 -> u1 -> u2; the source w2 is the drawn b and
    the sink u2 the drawn a.  Arrow names follow the drawing: a1: w2->w1, a2: w1->c2,
    g1: c1->u1, g2: u1->u2.
    """
    C = kronecker()
    S = kronecker_regular(C, lam)
    res = build_ASnm(C, S, 2, 2, ext_vertices=["w1", "w2"], coext_vertices=["u1", "u2"],
                     ext_labels=[["a2"], ["a1"]], coext_labels=[["g1"], ["g2"]])
    return res


def kronecker_S22_relations(A: BoundQuiverAlgebra, lam=2) -> list[Relation]:
    q = A.quiver
    return [
        Relation.from_words(q, [(1, ("b1", "a2")), (-Fraction(lam), ("b2", "a2"))]),
        Relation.from_words(q, [(1, ("g1", "b1")), (-Fraction(lam), ("g1", "b2"))]),
        Relation.from_words(q, [(1, ("g2", "g1", "b1", "a2", "a1"))]),
    ]


KRONECKER_S22_ORDER = ["u2", "u1", "c1", "c2", "w1", "w2"]  # reading order a ... b of the drawing


def kronecker_S22_quiver() -> Quiver:
    """The quiver drawn for C[S,2,2], transcribed by hand."""
    return Quiver(["u2", "u1", "c1", "c2", "w1", "w2"], [
        ("a1", "w2", "w1"), ("a2", "w1", "c2"), ("b1", "c2", "c1"), ("b2", "c2", "c1"),
        ("g1", "c1", "u1"), ("g2", "u1", "u2")])


# Γ(0,2,2) picture for C[S,2,2]: dimension vectors in the order u2 u1 c1 c2 w1 w2
GAMMA_022_DIMVECS = {
    "Y1[1]": "111110", "Y2[1]": "011111",
    "X0[1]": "111100", "Y1[2]": "011110", "Y2[2]": "001111",
    "Y2[3]": "112211", "X0[2]": "011100", "Y1[3]": "001110",
    "Y1[4]": "112210", "Y2[4]": "012211", "X0[3]": "001100",
}


# ---------------------------------------------------------------------------
# canonical algebra of type (3,3,3) and the Euclidean E6 algebra


E6_VERTICES = ["0", "1", "2", "3", "4", "5", "6"]


def e6_hereditary() -> BoundQuiverAlgebra:
    """Three arms of length two into the sink 0: 2 -> 1 -> 0, 4 -> 3 -> 0, 6 -> 5 -> 0."""
    q = Quiver(E6_VERTICES, [("a3", "1", "0"), ("a2", "2", "1"),
                             ("b3", "3", "0"), ("b2", "4", "3"),
                             ("c3", "5", "0"), ("c2", "6", "5")])
    return build_algebra(q, [], name="E6")


def e6_module(A: BoundQuiverAlgebra) -> Representation:
    one = Matrix.from_rows([[1]])
    return Representation(A, {"0": 2, "1": 1, "2": 1, "3": 1, "4": 1, "5": 1, "6": 1}, {
        "a3": Matrix.from_rows([[1], [0]]), "b3": Matrix.from_rows([[1], [1]]),
        "c3": Matrix.from_rows([[0], [1]]), "a2": one, "b2": one, "c2": one})


def e6_extension():
    """A[X]: one new source w with arrows a1, b1, c1 to the arm ends."""
    A = e6_hereditary()
    return one_point_extension(A, e6_module(A), "w", ["a1", "b1", "c1"], name="A[X]")


def canonical_quiver() -> Quiver:
    return Quiver(E6_VERTICES + ["w"], [
        ("a3", "1", "0"), ("a2", "2", "1"), ("a1", "w", "2"),
        ("b3", "3", "0"), ("b2", "4", "3"), ("b1", "w", "4"),
        ("c3", "5", "0"), ("c2", "6", "5"), ("c1", "w", "6")])


def canonical_333() -> BoundQuiverAlgebra:
    """Canonical algebra of type (3,3,3) with a3a2a1 + b3b2b1 + c3c2c1 = 0."""
    q = canonical_quiver()
    rel = Relation.from_words(q, [(1, ("a3", "a2", "a1")), (1, ("b3", "b2", "b1")),
                                  (1, ("c3", "c2", "c1"))])
    return build_algebra(q, [rel], name="canonical-333")


def a_x11():
    """A[X,1,1]: coextension of A[X] by X, new sink s with arrows d, e from 0."""
    ext = e6_extension()
    AX = ext.algebra
    X = Representation(AX, e6_module(ext.base).dims, e6_module(ext.base).maps, check=False)
    return one_point_coextension(AX, X, "s", ["d", "e"], name="A[X,1,1]")


def a_x11_relations(A: BoundQuiverAlgebra) -> list[Relation]:
    """The published list; its second gamma_1 is the arrow into the sink (c3 here)."""
    q = A.quiver
    return [
        Relation.from_words(q, [(1, ("e", "a3"))]),
        Relation.from_words(q, [(1, ("d", "b3")), (-1, ("e", "b3"))]),
        Relation.from_words(q, [(1, ("d", "c3"))]),
    ]


# ---------------------------------------------------------------------------
# trivial extension of the canonical (3,3,3) algebra, labelled as in its quiver picture


def canonical_333_tx() -> BoundQuiverAlgebra:
    """Same algebra with the arrow names of the trivial-extension picture:
    x0: i -> 0, x1, x2: w -> arm end for x in a, b, c."""
    q = Quiver(E6_VERTICES + ["w"], [
        ("a0", "1", "0"), ("a1", "2", "1"), ("a2", "w", "2"),
        ("b0", "3", "0"), ("b1", "4", "3"), ("b2", "w", "4"),
        ("c0", "5", "0"), ("c1", "6", "5"), ("c2", "w", "6")])
    rel = Relation.from_words(q, [(1, ("a0", "a1", "a2")), (1, ("b0", "b1", "b2")),
                                  (1, ("c0", "c1", "c2"))])
    return build_algebra(q, [rel], name="canonical-333")


def trivext_quiver() -> Quiver:
    base = canonical_333_tx().quiver
    return Quiver(base.vertices, list(base.arrows) + [("d", "0", "w"), ("e", "0", "w")])


def trivext_relations() -> list[Relation]:
    q = trivext_quiver()
    words = [
        [(1, ("a0", "a1", "a2")), (1, ("b0", "b1", "b2")), (1, ("c0", "c1", "c2"))],
        [(1, ("c2", "d"))], [(1, ("a2", "e"))], [(1, ("b2", "d")), (-1, ("b2", "e"))],
        [(1, ("e", "a0"))], [(1, ("d", "c0"))], [(1, ("d", "b0")), (-1, ("e", "b0"))],
        [(1, ("a1", "a2", "d", "a0", "a1"))], [(1, ("b1", "b2", "d", "b0", "b1"))],
        [(1, ("c1", "c2", "e", "c0", "c1"))],
    ]
    return [Relation.from_words(q, w) for w in words]


def trivext_333():
    """(R, T, natural assignment) for R canonical (3,3,3) and T its trivial extension.

    Original arrows go to themselves; d and e go to the functionals on
    e_0 R e_w dual to the basis {a-path, c-path}.
    """
    R = canonical_333_tx()
    T = trivial_extension(R)
    n = R.dim
    assignment = {}
    for a in R.quiver.arrows:
        assignment[a.label] = R.path_element((a.label,))
    A_path = R.path_element(("a0", "a1", "a2"))
    C_path = R.path_element(("c0", "c1", "c2"))
    idx = R.basis_paths(src="w", tgt="0")
    # coordinates of each basis path of the corner in terms of {A, C}
    coords = {}
    for b in idx:
        cA, cC = _solve2(A_path, C_path, {b: Fraction(1)})
        coords[b] = (cA, cC)
    assignment["d"] = {n + b: coords[b][0] for b in idx if coords[b][0]}
    assignment["e"] = {n + b: coords[b][1] for b in idx if coords[b][1]}
    return R, T, assignment


def _solve2(u: Mapping, v: Mapping, x: Mapping) -> tuple:
    keys = sorted(set(u) | set(v) | set(x))
    M = Matrix.from_columns([[u.get(k, 0) for k in keys], [v.get(k, 0) for k in keys],
                             [-x.get(k, 0) for k in keys]], len(keys))
    for vec in kernel_vectors(M):
        if vec[2]:
            return vec[0] / vec[2], vec[1] / vec[2]
    raise ValueError("element is outside the span")


# ---------------------------------------------------------------------------
# matching relation lists up to a change of basis of some arrows


def match_linear_relations(A: StructureAlgebra, fixed: Mapping[str, Mapping],
                           unknown: Mapping[str, Sequence[Mapping]], rels: Sequence[Relation],
                           tries: int = 50):
    """Find images for the ``unknown`` arrows, each a combination of its candidate
    elements, making every relation vanish.  Each relation term may contain
    at most one unknown arrow, so the conditions are linear.  Returns an
    assignment whose unknown part is an invertible change of basis, or None.
    """
    names = list(unknown)
    slots = [(p, k) for p in names for k in range(len(unknown[p]))]
    equations: list[dict] = []  # per relation: slot -> sparse element
    for r in rels:
        contrib: dict = {}
        constant: dict = {}
        for c, path in r.terms:
            hits = [i for i, a in enumerate(path.word) if a in unknown]
            if len(hits) > 1:
                raise ValueError("relation is not linear in the unknown arrows")
            if not hits:
                constant = vec_add(constant, evaluate_word(A, fixed, path.word), c)
                continue
            i = hits[0]
            p = path.word[i]
            for k, cand in enumerate(unknown[p]):
                env = dict(fixed)
                env[p] = cand
                val = evaluate_word(A, env, path.word)
                contrib[(p, k)] = vec_add(contrib.get((p, k), {}), val, c)
        if constant:
            return None
        equations.append(contrib)
    rows = []
    for contrib in equations:
        keys = sorted({key for val in contrib.values() for key in val})
        for key in keys:
            rows.append([contrib.get(s, {}).get(key, 0) for s in slots])
    sol = kernel_vectors(Matrix(len(rows), len(slots), rows)) if rows else \
        [[Fraction(int(i == j)) for j in range(len(slots))] for i in range(len(slots))]
    rng = random.Random(FIXTURE_SEED)
    for _ in range(tries):
        coeffs = [rng.randint(-3, 3) for _ in sol]
        x = [sum((c * v[i] for c, v in zip(coeffs, sol)), Fraction(0)) for i in range(len(slots))]
        # change-of-basis matrix per parallel class must be invertible: check overall rank
        out = dict(fixed)
        mat_rows = []
        for p in names:
            elem: dict = {}
            row = []
            for k, cand in enumerate(unknown[p]):
                coef = x[slots.index((p, k))]
                row.append(coef)
                elem = vec_add(elem, cand, coef)
            out[p] = elem
            mat_rows.append(row)
        widths = {len(r) for r in mat_rows}
        if len(widths) == 1 and len(mat_rows) == widths.pop():
            if Matrix.from_rows(mat_rows).rows and _det_nonzero(mat_rows):
                return out
        elif all(any(r) for r in mat_rows):
            return out
    return None


def _det_nonzero(rows) -> bool:
    return rank(Matrix.from_rows(rows)) == len(rows)


# ---------------------------------------------------------------------------
# the Γ(2,3,2) picture: grid cells (row, column) with labels, arrows, dashed pairs


GAMMA_232_CELLS = {
    (1, 7): "Y1[1]", (1, 9): "Y2[1]",
    (2, 6): "X1[1]", (2, 8): "Y1[2]", (2, 10): "Y2[2]", (2, 12): "Z1[1]",
    (3, 1): "Z1[1]", (3, 3): "Z2[1]", (3, 5): "X0[1]", (3, 7): "X1[2]", (3, 9): "Y1[3]", (3, 11): "Y2[3]",
    (4, 2): "Z1[2]", (4, 4): "Z2[2]", (4, 6): "X0[2]", (4, 8): "X1[3]", (4, 10): "Y1[4]", (4, 12): "Y2[4]",
    (5, 1): "Y2[4]", (5, 3): "Z1[3]", (5, 5): "Z2[3]", (5, 7): "X0[3]", (5, 9): "X1[4]",
    # the picture prints this cell as Y1[4]; its position on the Y1 ray makes it Y1[5]
    (5, 11): "Y1[5]",
}

GAMMA_232_EDGES = [
    ((3, 1), (4, 2)), ((4, 2), (3, 3)), ((3, 3), (4, 4)), ((4, 4), (3, 5)), ((3, 5), (4, 6)),
    ((4, 6), (3, 7)), ((3, 7), (4, 8)), ((4, 8), (3, 9)), ((3, 9), (4, 10)), ((4, 10), (3, 11)),
    ((3, 5), (2, 6)), ((2, 6), (1, 7)), ((1, 7), (2, 8)), ((2, 6), (3, 7)), ((3, 7), (2, 8)),
    ((2, 8), (3, 9)), ((2, 8), (1, 9)), ((3, 9), (2, 10)), ((1, 9), (2, 10)), ((2, 10), (3, 11)),
    ((3, 11), (2, 12)), ((3, 11), (4, 12)),
    ((5, 1), (4, 2)), ((4, 2), (5, 3)), ((5, 3), (4, 4)), ((4, 4), (5, 5)), ((5, 5), (4, 6)),
    ((4, 6), (5, 7)), ((5, 7), (4, 8)), ((4, 8), (5, 9)), ((5, 9), (4, 10)), ((4, 10), (5, 11)),
    ((5, 11), (4, 12)),
]

# dashed pairs (translate, vertex)
GAMMA_232_TAU = [("Z1[1]", "Z2[1]"), ("Z2[1]", "X0[1]"), ("Y2[2]", "Z1[1]")]
