"""Named worked examples: a builder plus the checks that pin it to its source."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import fixtures as fx
from .quiver_algebra import Relation, build_algebra, ext_quiver, same_multigraph, verify_relations
from .representation import (
    ar_translate,
    indec_injective,
    indec_projective,
    is_indecomposable,
    is_isomorphic,
)
from .tube import TubeVertex, build_gamma, to_dot


@dataclass
class Check:
    name: str
    expected: object
    got: object
    provenance: str

    @property
    def ok(self) -> bool:
        return self.expected == self.got

    def to_json(self) -> dict:
        return {"name": self.name, "expected": _plain(self.expected), "got": _plain(self.got),
                "provenance": self.provenance, "ok": self.ok}


def _plain(x):
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(y) for y in x)
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, Fraction):
        return str(x)
    return x


@dataclass
class Entry:
    name: str
    summary: str
    build: Callable
    checks: Callable  # built object -> list[Check]
    emit_json: Callable = field(default=lambda obj: {})
    emit_dot: Callable | None = None


def _algebra_dot(q, name: str) -> str:
    lines = [f'digraph "{name}" {{', "  rankdir=LR;"]
    for v in q.vertices:
        lines.append(f'  "{v}";')
    for a in q.arrows:
        lines.append(f'  "{a.src}" -> "{a.tgt}" [label="{a.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dimstr(M, order) -> str:
    return "".join(str(M.dim(v)) for v in order)


# -- kronecker


def _kronecker_checks(A):
    R2 = fx.kronecker_regular(A, 2)
    eq = ext_quiver(A)
    return [
        Check("dimension", 4, A.dim, "TRIVIAL: path algebra of the Kronecker quiver"),
        Check("ext-quiver arrows c2->c1", 2, eq.quiver.multiplicities()[("c2", "c1")], "TRIVIAL"),
        Check("tau of a projective is zero", 0, ar_translate(indec_projective(A, "c2")).total_dim,
              "TRIVIAL"),
        Check("tau R_2 is isomorphic to R_2", True, is_isomorphic(ar_translate(R2), R2),
              "PAPER: R_lambda lies in a homogeneous tube"),
    ]


# -- C[S,2,2]


def _s22_checks(res):
    A = res.algebra
    order = fx.KRONECKER_S22_ORDER
    projinj = set()
    for v in A.quiver.vertices:
        P = indec_projective(A, v)
        if any(is_isomorphic(P, indec_injective(A, u)) for u in A.quiver.vertices):
            projinj.add(_dimstr(P, order))
    listed = build_algebra(A.quiver, fx.kronecker_S22_relations(A), name="C[S,2,2] presented")
    asg = {a.label: A.path_element((a.label,)) for a in A.quiver.arrows}
    return [
        Check("vertex count", 6, len(A.quiver.vertices), "PAPER: quiver of C[S,2,2]"),
        Check("ext quiver equals the drawn quiver", True,
              same_multigraph(ext_quiver(A).quiver, fx.kronecker_S22_quiver()), "PAPER: quiver of C[S,2,2]"),
        Check("projective-injective dimension vectors", {"011111", "111110"}, projinj,
              "PAPER: Y1[1], Y2[1] of the Γ(0,2,2) picture"),
        Check("relations hold", True, verify_relations(A, asg, fx.kronecker_S22_relations(A)),
              "PAPER: relation list of C[S,2,2]"),
        Check("presentation by the listed relations has the same dimension", A.dim, listed.dim,
              "DERIVED: normal forms of both presentations"),
    ]


# -- canonical (3,3,3) as the one-point extension of the E6 algebra


def _canonical_checks(ext):
    A = ext.algebra
    C = fx.canonical_333()
    asg = {a.label: A.path_element((a.label,)) for a in A.quiver.arrows}
    asg["b1"] = {k: -c for k, c in asg["b1"].items()}
    rel = C.relations[0]
    return [
        Check("dimension equals the canonical presentation", C.dim, A.dim, "DERIVED: normal forms"),
        Check("ext quiver equals the canonical quiver", True,
              same_multigraph(ext_quiver(A).quiver, fx.canonical_quiver()), "PAPER: Example quiver"),
        Check("a3a2a1 + b3b2b1 + c3c2c1 = 0 after b1 -> -b1", True, verify_relations(A, asg, [rel]),
              "PAPER: canonical relation"),
    ]


def _e6_checks(ext):
    A = ext.algebra
    X = ext.module
    rels = A.relations
    shapes = sorted(sorted(len(p.word) for _, p in r.terms) for r in rels)
    tX = ar_translate(X)
    return [
        Check("one relation from w to 0 with three length-3 terms", [[3, 3, 3]], shapes,
              "PAPER: relation of the extension"),
        Check("X is indecomposable", True, is_indecomposable(X), "PAPER: X simple regular"),
        Check("tau X is not isomorphic to X", False, is_isomorphic(tX, X), "PAPER: tube of rank 2"),
        Check("tau^2 X is isomorphic to X", True, is_isomorphic(ar_translate(tX), X), "PAPER: tube of rank 2"),
    ]


# -- A[X,1,1]


def _ax11_checks(ext):
    A = ext.algebra
    S = A.structure()
    fixed = {a.label: A.path_element((a.label,)) for a in A.quiver.arrows if a.label not in ("d", "e")}
    cand = [A.path_element(("d",)), A.path_element(("e",))]
    rels = fx.a_x11_relations(A)
    match = fx.match_linear_relations(S, fixed, {"d": cand, "e": cand}, rels)
    canon = Relation.from_words(A.quiver, [(1, ("a3", "a2", "a1")), (1, ("b3", "b2", "b1")),
                                           (1, ("c3", "c2", "c1"))])
    listed = build_algebra(A.quiver, [canon] + rels)
    completed = build_algebra(A.quiver, [canon] + rels + [Relation.from_words(A.quiver, [(1, ("e", "c3", "c2", "c1"))])])
    return [
        Check("dimension", 34, A.dim, "DERIVED: dim A[X] + dim of the coextension module"),
        Check("listed relations hold after a change of basis of d, e", True,
              match is not None and verify_relations(S, match, rels), "PAPER: relation list of A[X,1,1]"),
        Check("listed relations plus e c3c2c1 = 0 present an algebra of the right size", A.dim,
              completed.dim, "DERIVED: normal forms"),
        Check("listed relations alone leave one extra path", A.dim + 1, listed.dim,
              "DERIVED: the relation e c3c2c1 = 0 is missing from the list"),
    ]


# -- trivial extension


def _trivext_checks(data):
    R, T, asg = data
    return [
        Check("dim T = 2 dim R", 2 * R.dim, T.dim, "PAPER: trivial extension"),
        Check("ext quiver equals the drawn quiver", True,
              same_multigraph(ext_quiver(T).quiver, fx.trivext_quiver()), "PAPER: quiver of T"),
        Check("relations hold under the natural assignment", True,
              verify_relations(T, asg, fx.trivext_relations()), "PAPER: relation list of T"),
    ]


# -- Γ(2,3,2)


def gamma232_picture():
    cells = {k: TubeVertex.parse(v) for k, v in fx.GAMMA_232_CELLS.items()}
    arrows = {(cells[a], cells[b]) for a, b in fx.GAMMA_232_EDGES}
    tau = {TubeVertex.parse(v): TubeVertex.parse(t) for t, v in fx.GAMMA_232_TAU}
    return set(cells.values()), arrows, tau


def _gamma_checks(T):
    verts, arrows, tau = gamma232_picture()
    T4 = build_gamma(2, 3, 2, 4)
    return [
        Check("pictured arrows = arrows of Γ(2,3,2) among pictured vertices", arrows,
              {k for k in T.arrows if k[0] in verts and k[1] in verts}, "PAPER: Γ(2,3,2) picture"),
        Check("depth-4 arrows among pictured vertices", {a for a in arrows if a[0].j <= 4 and a[1].j <= 4},
              {k for k in T4.arrows if k[0] in verts and k[1] in verts}, "PAPER: Γ(2,3,2) picture"),
        Check("dashed mouth pairs", tau, {v: T.tau[v] for v in tau if v in T.tau}, "PAPER: Γ(2,3,2) picture"),
        Check("projective-injective vertices", {TubeVertex("Y", 1, 1), TubeVertex("Y", 2, 1)},
              T.projective & T.injective, "PAPER: Y1[1], Y2[1] projective-injective"),
    ]


REGISTRY: dict[str, Entry] = {}


def _register(e: Entry):
    REGISTRY[e.name] = e


_register(Entry("kronecker", "Kronecker algebra", fx.kronecker, _kronecker_checks,
                lambda A: A.to_json(), lambda A: _algebra_dot(A.quiver, "kronecker")))
_register(Entry("kronecker-S22", "C[S,2,2] for S = R_2 over the Kronecker algebra", fx.kronecker_S22,
                _s22_checks, lambda r: r.algebra.to_json(), lambda r: _algebra_dot(r.algebra.quiver, "C[S,2,2]")))
_register(Entry("canonical-333", "canonical algebra (3,3,3) as the extension A[X]", fx.e6_extension,
                _canonical_checks, lambda e: e.algebra.to_json(), lambda e: _algebra_dot(e.algebra.quiver, "A[X]")))
_register(Entry("e6-extension", "one-point extension of the E6 algebra by a simple regular module",
                fx.e6_extension, _e6_checks, lambda e: {"algebra": e.algebra.to_json(), "module": e.module.to_json()},
                lambda e: _algebra_dot(e.algebra.quiver, "A[X]")))
_register(Entry("a-x11", "A[X,1,1]: coextension of A[X] by X", fx.a_x11, _ax11_checks,
                lambda e: e.algebra.to_json(), lambda e: _algebra_dot(e.algebra.quiver, "A[X,1,1]")))
_register(Entry("trivext-333", "trivial extension of the canonical (3,3,3) algebra", fx.trivext_333,
                _trivext_checks, lambda d: {"dim": d[1].dim, "relations": [r.to_json() for r in fx.trivext_relations()]},
                lambda d: _algebra_dot(fx.trivext_quiver(), "T")))
_register(Entry("gamma-232", "the tube Γ(2,3,2) near its mouth", lambda: build_gamma(2, 3, 2, 5), _gamma_checks,
                lambda T: T.to_json(), lambda T: to_dot(T, "gamma-232")))
