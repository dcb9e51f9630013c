"""Exhaustive checks over a window of the repetitive category, shared by the
covering tests and the acceptance run."""

from tubular.covering import (
    AlgebraCategory,
    check_covering,
    galois_covering,
    hom_dim,
    lift_morphism,
    lift_morphism_codomain,
    projective_module,
    push_down,
    reassemble,
    restrict,
    simple_module,
    window_objects,
)
from tubular.quiver_algebra import vec_add


def lifting_failures(F, window):
    """Counts of (reassembly, convolution, symmetry) failures over every
    basis morphism leaving an object of the window."""
    cat, B = F.source, F.target
    bad = conv = sym = 0
    for a1 in window:
        for b2 in B.vertices:
            for beta in B.hom(F.obj(a1), b2):
                L = lift_morphism(F, {beta: 1}, a1, b2)
                if reassemble(F, L) != {beta: 1}:
                    bad += 1
                for a2, comp in L.components.items():
                    if lift_morphism_codomain(F, {beta: 1}, a2, F.obj(a1)).component(a1) != comp:
                        sym += 1
                for b3 in B.vertices:
                    for delta in B.hom(b2, b3):
                        db = B.mul({delta: 1}, {beta: 1})
                        if not db:
                            continue
                        total: dict = {}
                        for a2, comp in L.components.items():
                            for a3, c3 in lift_morphism(F, {delta: 1}, a2, b3).components.items():
                                total[a3] = vec_add(total.get(a3, {}), cat.compose(c3, comp))
                        total = {k: v for k, v in total.items() if v}
                        if total != lift_morphism(F, db, a1, b3).components:
                            conv += 1
    return bad, conv, sym


def projective_push_down_failures(F, R, window):
    cat = F.source
    big = window_objects(R, -1, max(a[1] for a in window) + 2)
    fails = []
    for a in window:
        P = projective_module(cat, a, big)
        X = push_down(F, P)
        Q = projective_module(AlgebraCategory(F.target), F.obj(a), F.target.vertices)
        if X.dims != Q.dims or X.total_dim() != P.total_dim() or not X.is_functor():
            fails.append(a)
    return fails


def single_orbit_modules(F, R, s):
    """Simples and level-restricted projectives on levels 0..s-1, which meet each orbit once."""
    cat = F.source
    W = window_objects(R, 0, s - 1)
    big = window_objects(R, -1, s + 1)
    return [simple_module(cat, a) for a in W] + [restrict(projective_module(cat, a, big), W) for a in W]


def hom_preservation_mismatches(F, modules):
    pushed = [push_down(F, M) for M in modules]
    return sum(hom_dim(M, N) != hom_dim(X, Y)
               for M, X in zip(modules, pushed) for N, Y in zip(modules, pushed))


def straddling_control(R):
    """Two simples in the same ν-orbit: no maps upstairs, a nonzero map downstairs."""
    F = galois_covering(R, 1)
    cat = F.source
    v = R.quiver.vertices[0]
    M, N = simple_module(cat, (v, 0)), simple_module(cat, (v, 1))
    return hom_dim(M, N), hom_dim(push_down(F, M), push_down(F, N))


def full_suite(R, s, levels=(0, 2)):
    F = galois_covering(R, s)
    window = window_objects(R, *levels)
    rep = check_covering(F, window)
    return {
        "covering": rep.ok,
        "lifting": lifting_failures(F, window),
        "projectives": projective_push_down_failures(F, R, window),
        "hom": hom_preservation_mismatches(F, single_orbit_modules(F, R, s)),
    }
