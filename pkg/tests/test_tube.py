import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tubular import fixtures as fx
from tubular.registry import gamma232_picture
from tubular.tube import (
    CORAY,
    RAY,
    BadParams,
    NotCorayVertex,
    NotRayVertex,
    TubeVertex,
    build_gamma,
    coray_insertion,
    is_coray_vertex,
    maximal_corays,
    maximal_rays,
    mesh_additivity_check,
    ray_insertion,
    remove_vertices,
    to_dot,
    truncate,
    validate,
)

V = TubeVertex.parse
TRIPLES = [(p, n, m) for p, n, m in itertools.product(range(4), repeat=3) if m <= n]


def test_bad_params():
    with pytest.raises(BadParams):
        build_gamma(0, 1, 2, 5)
    with pytest.raises(BadParams):
        build_gamma(0, 3, 3, 4)


def test_gamma_232_picture():
    verts, arrows, tau = gamma232_picture()
    T = build_gamma(2, 3, 2, 5)
    assert verts <= T.vertices
    assert {k for k in T.arrows if k[0] in verts and k[1] in verts} == arrows
    assert all(T.tau[v] == t for v, t in tau.items())
    assert T.projective & T.injective == {V("Y1[1]"), V("Y2[1]")}


def test_gamma_232_rays_and_corays():
    T = build_gamma(2, 3, 2, 6)
    assert sorted(str(r.start) for r in maximal_rays(T)) == ["X0[1]", "X1[1]", "Y1[1]", "Y2[1]", "Z1[1]", "Z2[1]"]
    assert sorted(str(c.end) for c in maximal_corays(T)) == ["Y1[1]", "Y2[1]", "Y2[2]", "Z1[1]", "Z2[1]"]


@pytest.mark.parametrize("p,n,m", TRIPLES)
def test_counts_and_partitions(p, n, m):
    T = build_gamma(p, n, m, 8)
    rays, corays = maximal_rays(T), maximal_corays(T)
    assert len(rays) == p + n + 1
    assert len(corays) == p + m + 1
    for family in (rays, corays):
        flat = [v for x in family for v in x.vertices]
        assert len(flat) == len(set(flat)) == len(T.vertices)


@pytest.mark.parametrize("p,n,m", TRIPLES)
def test_validate_passes(p, n, m):
    assert validate(build_gamma(p, n, m, 8)).ok


def test_validate_catches_corrupted_tau():
    T = build_gamma(1, 2, 1, 6)
    v = V("X1[3]")
    T.tau[v] = V("X0[1]")
    assert not validate(T).ok


@given(st.sampled_from(TRIPLES), st.integers(4, 7))
@settings(max_examples=60, deadline=None)
def test_depth_monotonicity(t, d):
    p, n, m = t
    d = max(d, m + 2)
    assert truncate(build_gamma(p, n, m, d + 1), d) == build_gamma(p, n, m, d)


def test_stable_tube_mouth_orbit():
    for p in range(4):
        T = build_gamma(p, 0, 0, 5)
        orbit = {V("X0[1]")}
        v = V("X0[1]")
        while True:
            v = T.tau[v]
            if v in orbit:
                break
            orbit.add(v)
        assert len(orbit) == p + 1
    T = build_gamma(0, 0, 0, 5)
    assert all(T.tau[v] == v for v in T.vertices)


@pytest.mark.parametrize("p", range(4))
@pytest.mark.parametrize("n", range(0, 3))
def test_ray_insertion_law(p, n):
    d = 8
    res = ray_insertion(build_gamma(p, n, 0, 2 * d + 4), V(f"X{n}[1]"), depth=d)
    assert res.tube == build_gamma(p, n + 1, 0, d)
    assert all(res.renaming[v] == v for v in build_gamma(p, n, 0, d).vertices)


@pytest.mark.parametrize("p,n,m", [t for t in TRIPLES if t[2] >= 1])
def test_coray_insertion_law(p, n, m):
    d = 8
    src = build_gamma(p, n, m - 1, 2 * d + 4)
    res = coray_insertion(src, V(f"X{n - m + 1}[1]"), depth=d)
    assert res.tube == build_gamma(p, n, m, d)


def test_coray_insertion_renaming():
    res = coray_insertion(build_gamma(0, 1, 0, 20), V("X1[1]"), depth=8)
    # old vertices land at even positions of the new ray Y1 and of X0
    assert res.renaming[V("X1[1]")] == V("Y1[2]")
    assert res.renaming[V("X1[3]")] == V("Y1[6]")
    assert res.renaming[V("X0[2]")] == V("X0[4]")


def test_insertion_preconditions():
    with pytest.raises(NotRayVertex):
        ray_insertion(build_gamma(0, 1, 0, 8), V("X0[1]"))
    T = build_gamma(0, 2, 0, 8)
    assert not is_coray_vertex(T, V("X0[2]"))
    with pytest.raises(NotCorayVertex):
        coray_insertion(T, V("X0[2]"))


@pytest.mark.parametrize("p,n", [(0, 1), (0, 2), (2, 2), (1, 3), (3, 3)])
def test_removing_projective_injectives_gives_stable_tube(p, n):
    T = build_gamma(p, n, n, 9)
    S = remove_vertices(T, [V(f"Y{i}[1]") for i in range(1, n + 1)])
    assert validate(S).ok
    assert not S.projective
    assert len(maximal_rays(S)) == p + n + 1
    orbit, v = [V("X0[1]")], S.tau[V("X0[1]")]
    while v != V("X0[1]"):
        orbit.append(v)
        v = S.tau[v]
    assert len(orbit) == p + n + 1


def _gamma022_dims():
    return {V(k): [int(c) for c in s] for k, s in fx.GAMMA_022_DIMVECS.items()}


def test_mesh_additivity_on_picture():
    T = build_gamma(0, 2, 2, 4)
    rep = mesh_additivity_check(T, _gamma022_dims())
    assert rep.ok
    assert len(rep.notes) == 6


def test_mesh_additivity_perturbation_fails():
    T = build_gamma(0, 2, 2, 4)
    for v in [V("X0[2]"), V("Y1[2]"), V("Y2[3]")]:
        dims = _gamma022_dims()
        dims[v] = list(dims[v])
        dims[v][2] += 1
        assert not mesh_additivity_check(T, dims).ok


def test_mesh_additivity_zero_assignment():
    T = build_gamma(1, 2, 1, 6)
    assert mesh_additivity_check(T, {v: [0, 0] for v in T.vertices}).ok


def test_arrow_kinds():
    T = build_gamma(1, 2, 1, 5)
    for (u, w), kind in T.arrows.items():
        assert (kind == RAY) == (u.family == w.family and u.i == w.i and w.j == u.j + 1)
        assert kind in (RAY, CORAY)


def test_dot_styling():
    dot = to_dot(build_gamma(2, 3, 2, 4))
    assert '"Y1[1]" [shape=doubleoctagon]' in dot
    assert '"X1[1]" [shape=box]' in dot
    assert "style=dashed, constraint=false" in dot
    assert dot == to_dot(build_gamma(2, 3, 2, 4))


def test_json_is_stable():
    assert build_gamma(1, 1, 1, 4).to_json() == build_gamma(1, 1, 1, 4).to_json()
