"""The twelve acceptance criteria, one test each.

Run under pytest for the summary section, or directly with
``python3 tests/test_acceptance.py`` to print one PASS/FAIL line per criterion.
"""

import itertools
import random
import sys

import pytest

from covering_suite import full_suite, straddling_control
from oracles import coxeter_translate
from tubular import fixtures as fx
from tubular.constructions import extend_hom, extend_zero
from tubular.registry import REGISTRY, gamma232_picture
from tubular.representation import (
    ar_translate,
    hom_space,
    indec_injective,
    indec_projective,
    is_isomorphic,
    is_projective,
    simple,
)
from tubular.tube import (
    TubeVertex,
    build_gamma,
    coray_insertion,
    maximal_corays,
    maximal_rays,
    mesh_additivity_check,
    ray_insertion,
)
from tubular.ziegler import GENERIC, SymbolicSubset, ZgSpace, cover_Ei, cover_galois, cover_trivial_extension
from zg_random import random_subset

TRIPLES = [(p, n, m) for p, n, m in itertools.product(range(4), repeat=3) if m <= n]
V = TubeVertex.parse
SUBSETS_PER_TRIPLE = 1000
SEED = 20240601


def c1_gamma_232():
    verts, arrows, tau = gamma232_picture()
    T4, T5 = build_gamma(2, 3, 2, 4), build_gamma(2, 3, 2, 5)
    low = {v for v in verts if v.j <= 4}
    problems = []
    if not low <= T4.vertices:
        problems.append(f"missing at depth 4: {sorted(map(str, low - T4.vertices))}")
    if {k for k in T4.arrows if k[0] in low and k[1] in low} != {a for a in arrows if set(a) <= low}:
        problems.append("depth-4 arrows differ")
    # the picture reaches one vertex past depth 4 on the Y1 ray
    if {k for k in T5.arrows if k[0] in verts and k[1] in verts} != arrows:
        problems.append("arrows through Y1[5] differ")
    if any(T4.tau.get(v) != t for v, t in tau.items()):
        problems.append("mouth τ-pairs differ")
    if T4.projective & T4.injective != {V("Y1[1]"), V("Y2[1]")}:
        problems.append("projective-injective flags differ")
    return not problems, "; ".join(problems) or f"{len(verts)} vertices, {len(arrows)} arrows, {len(tau)} τ-pairs"


def c2_insertion_laws():
    d, bad, count = 8, [], 0
    for p, n in itertools.product(range(4), range(1, 4)):
        res = ray_insertion(build_gamma(p, n - 1, 0, 2 * d + 4), V(f"X{n - 1}[1]"), depth=d)
        count += 1
        if res.tube != build_gamma(p, n, 0, d):
            bad.append(("ray", p, n))
    for p, n, m in TRIPLES:
        if m == 0:
            continue
        res = coray_insertion(build_gamma(p, n, m - 1, 2 * d + 4), V(f"X{n - m + 1}[1]"), depth=d)
        count += 1
        if res.tube != build_gamma(p, n, m, d):
            bad.append(("coray", p, n, m))
    return not bad, f"{count} insertions" + (f", failures {bad}" if bad else "")


def c3_counts():
    bad = []
    for p, n, m in TRIPLES:
        T = build_gamma(p, n, m, 8)
        rays, corays = maximal_rays(T), maximal_corays(T)
        ok = len(rays) == p + n + 1 and len(corays) == p + m + 1
        for family in (rays, corays):
            flat = [v for x in family for v in x.vertices]
            ok = ok and len(flat) == len(set(flat)) == len(T.vertices)
        if not ok:
            bad.append((p, n, m))
    return not bad, f"{len(TRIPLES)} triples" + (f", failures {bad}" if bad else "")


def c4_cb_ranks():
    bad = []
    for t in TRIPLES:
        Z = ZgSpace(*t)
        seq = Z.derived_sequence()
        finite = [V(f"X0[{j}]") for j in (1, 2, 5)]
        if t[0]:
            finite.append(V("Z1[3]"))
        ok = len(seq) == 4 and seq[-1].is_empty() and not seq[-2].is_empty()
        ok = ok and all(Z.cb_rank(v) == 0 for v in finite)
        ok = ok and all(Z.cb_rank(x) == (2 if x == GENERIC else 1) for x in Z.infinite_points())
        ok = ok and Z.space_rank() == 2
        if not ok:
            bad.append(t)
    return not bad, f"{len(TRIPLES)} triples, chain length 3" + (f", failures {bad}" if bad else "")


def c5_kuratowski():
    rng = random.Random(SEED)
    bad, total = [], 0
    for t in TRIPLES:
        Z = ZgSpace(*t)
        if not Z.closure(SymbolicSubset()).is_empty():
            bad.append((t, "empty"))
        for _ in range(SUBSETS_PER_TRIPLE):
            A, B = random_subset(Z, rng), random_subset(Z, rng)
            cA, cB = Z.closure(A), Z.closure(B)
            total += 1
            if A | cA != cA or Z.closure(cA) != cA or Z.closure(A | B) != cA | cB:
                bad.append((t, "axiom"))
            elif cA.vertices != A.vertices or cA.tails != A.tails:
                bad.append((t, "new finite point"))
            elif (A.is_infinite() or A.points) and GENERIC not in cA:
                bad.append((t, "generic"))
    return not bad, f"{total} subsets over {len(TRIPLES)} triples" + (f", failures {bad[:5]}" if bad else "")


def _registry_checks(name):
    e = REGISTRY[name]
    checks = e.checks(e.build())
    failed = [c.name for c in checks if not c.ok]
    return not failed, f"{len(checks)} checks" + (f", failed {failed}" if failed else "")


def c6_kronecker_s22():
    return _registry_checks("kronecker-S22")


def c7_mesh_additivity():
    T = build_gamma(0, 2, 2, 4)
    dims = {V(k): [int(c) for c in s] for k, s in fx.GAMMA_022_DIMVECS.items()}
    rep = mesh_additivity_check(T, dims)
    perturbed = dict(dims)
    perturbed[V("X0[2]")] = [x + (i == 2) for i, x in enumerate(dims[V("X0[2]")])]
    neg = mesh_additivity_check(T, perturbed)
    return rep.ok and not neg.ok, f"{len(rep.notes)} meshes, perturbation {'caught' if not neg.ok else 'missed'}"


def c8_trivial_extension():
    return _registry_checks("trivext-333")


def c9_covering():
    bad = []
    for name, builder in (("kronecker", fx.kronecker), ("canonical", fx.canonical_333)):
        R = builder()
        for s in (1, 2):
            res = full_suite(R, s, (0, 2))
            if res != {"covering": True, "lifting": (0, 0, 0), "projectives": [], "hom": 0}:
                bad.append((name, s, res))
        up, down = straddling_control(R)
        if not up < down:
            bad.append((name, "straddle", up, down))
    return not bad, "2 bases, s in {1,2}, levels 0..2" + (f", failures {bad}" if bad else "")


def c10_ar_translate():
    problems = []
    K, E = fx.kronecker(), fx.e6_hereditary()
    for A in (K, E):
        if any(ar_translate(indec_projective(A, v)).total_dim for v in A.quiver.vertices):
            problems.append(f"τP ≠ 0 over {A.name}")
    for lam in (0, 1, 2, -3):
        R = fx.kronecker_regular(K, lam)
        if not is_isomorphic(ar_translate(R), R):
            problems.append(f"τR_{lam}")
    rng = random.Random(11)
    checked = 0
    for A, extra in ((K, [fx.kronecker_regular(K, 2)]), (E, [fx.e6_module(E)])):
        pool = list(extra)
        for v in A.quiver.vertices:
            M = indec_injective(A, v)
            for _ in range(3):
                if M.total_dim == 0 or is_projective(M):
                    break
                pool.append(M)
                M = ar_translate(M)
        for M in (rng.choice(pool) for _ in range(20)):
            checked += 1
            if list(ar_translate(M).dim_vector()) != coxeter_translate(A, M.dim_vector()):
                problems.append(f"oracle mismatch at {M.dim_vector()}")
    return not problems, f"{checked} oracle comparisons" + (f", {problems}" if problems else "")


def c11_extension_functors():
    ext = fx.e6_extension()
    R, X = ext.base, ext.module
    mods = [X, simple(R, "0"), simple(R, "2"), indec_projective(R, "0"), indec_injective(R, "0"),
            indec_injective(R, "2"), ar_translate(X)]
    bad, seen = [], set()
    for M in mods:
        vanishes = hom_space(X, M).dim == 0
        seen.add(vanishes)
        if (extend_hom(ext, M) == extend_zero(ext, M)) != vanishes:
            bad.append(M.dim_vector())
    ok = not bad and seen == {True, False}
    return ok, f"{len(mods)} modules, vanishing and non-vanishing cases" + (f", failures {bad}" if bad else "")


def c12_spectrum_covers():
    T = cover_trivial_extension((3, 3, 3))
    G = cover_galois((3, 3, 3), 2)
    E2 = cover_Ei("E2", (3, 3, 3))
    tubes = [pc for pc in E2.pieces if pc.kind == "tube"]
    rng = random.Random(SEED)
    disagree = 0
    for _ in range(300):
        traces = {pc.name: random_subset(pc.space, rng) for pc in tubes}
        direct = all(pc.space.closure(traces[pc.name]) == traces[pc.name] for pc in tubes)
        disagree += E2.is_closed(traces) != direct
    ok = len(T.pieces) == 6 and len(G.pieces) == 12 and disagree == 0
    return ok, f"{len(T.pieces)} and {len(G.pieces)} pieces, {disagree} piecewise disagreements"


CRITERIA = [
    (1, "Γ(2,3,2) golden picture", c1_gamma_232),
    (2, "ray/coray insertion laws", c2_insertion_laws),
    (3, "ray/coray counts and partitions", c3_counts),
    (4, "CB ranks by derivative iteration", c4_cb_ranks),
    (5, "Kuratowski closure axioms", c5_kuratowski),
    (6, "Kronecker C[S,2,2] golden test", c6_kronecker_s22),
    (7, "mesh additivity on Γ(0,2,2)", c7_mesh_additivity),
    (8, "trivial extension golden test", c8_trivial_extension),
    (9, "covering suite", c9_covering),
    (10, "AR translate", c10_ar_translate),
    (11, "one-point extension functors", c11_extension_functors),
    (12, "spectrum covers", c12_spectrum_covers),
]


def _line(k, title, ok, detail):
    return f"criterion {k:2d} {title}: {'PASS' if ok else 'FAIL'} ({detail})"


@pytest.mark.parametrize("k,title,fn", CRITERIA, ids=[f"c{k}" for k, _, _ in CRITERIA])
def test_criterion(k, title, fn):
    import conftest

    ok, detail = fn()
    conftest.ACCEPTANCE_LINES[k] = _line(k, title, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for k, title, fn in CRITERIA:
        ok, detail = fn()
        results.append(ok)
        print(_line(k, title, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
