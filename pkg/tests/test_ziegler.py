import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tubular.tube import TubeVertex
from tubular.ziegler import (
    GENERIC,
    Adic,
    BadTubularType,
    NotClosed,
    OpaqueTrace,
    Prufer,
    SymbolicSubset,
    ZgSpace,
    cover_Ei,
    cover_galois,
    cover_trivial_extension,
    points,
)
from zg_random import random_subset, vertices_of

TRIPLES = [(p, n, m) for p, n, m in itertools.product(range(4), repeat=3) if m <= n]
SPACES = {t: ZgSpace(*t) for t in TRIPLES}
V = TubeVertex.parse


@st.composite
def subsets(draw):
    t = draw(st.sampled_from(TRIPLES))
    Z = SPACES[t]
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    return Z, random_subset(Z, rng), random_subset(Z, rng)


@given(subsets())
@settings(max_examples=300, deadline=None)
def test_kuratowski(data):
    Z, A, B = data
    cA, cB = Z.closure(A), Z.closure(B)
    assert A.union(cA) == cA
    assert Z.closure(cA) == cA
    assert Z.closure(A | B) == cA | cB
    assert cA.vertices == A.vertices and cA.tails == A.tails
    if A.is_infinite() or A.points:
        assert GENERIC in cA


def test_closure_of_empty():
    for Z in SPACES.values():
        assert Z.closure(SymbolicSubset()).is_empty()


def test_point_counts():
    assert (points(0, 2, 2).prufer, points(0, 2, 2).adic, points(0, 2, 2).generic) == (3, 3, 1)
    assert (points(2, 1, 1).prufer, points(2, 1, 1).adic) == (4, 4)
    assert (points(0, 0, 0).prufer, points(0, 0, 0).adic) == (1, 1)


def test_closure_examples():
    Z = ZgSpace(1, 2, 1)
    v = SymbolicSubset.make([V("X1[2]")])
    assert Z.closure(v) == v
    a = SymbolicSubset.make(points=[Adic(Z.corays[0])])
    assert Z.closure(a).points == {Adic(Z.corays[0]), GENERIC}
    assert Z.is_closed(SymbolicSubset.make(points=[GENERIC]))
    assert Z.is_closed(Z.everything)
    tail = SymbolicSubset.make(tails={"X0": 4})
    assert not Z.is_closed(tail)


def test_full_ray_closure_includes_every_adic():
    # each coray meets every ray infinitely often, so one full ray forces all adic points
    for Z in SPACES.values():
        ray = SymbolicSubset.make(tails={Z.rays[0]: 1})
        c = Z.closure(ray)
        assert c.points == {Prufer(Z.rays[0]), GENERIC} | {Adic(x) for x in Z.corays}
        for x in Z.corays:
            assert set(Z.coray_meets(x)) == set(Z.rays)


@pytest.mark.parametrize("t", TRIPLES)
def test_cb_ranks(t):
    Z = SPACES[t]
    seq = Z.derived_sequence()
    assert len(seq) == 4 and seq[-1].is_empty()
    assert seq[1] == SymbolicSubset.make(points=Z.infinite_points())
    assert seq[2] == SymbolicSubset.make(points=[GENERIC])
    for v in vertices_of(Z, 4):
        assert Z.cb_rank(v) == 0
    for x in Z.infinite_points():
        assert Z.cb_rank(x) == (2 if x == GENERIC else 1)
    assert Z.space_rank() == 2


def test_derivative_needs_closed_set():
    Z = ZgSpace(0, 1, 0)
    with pytest.raises(NotClosed):
        Z.cb_derivative(SymbolicSubset.make(tails={"X0": 1}))
    assert Z.cb_derivative(SymbolicSubset.make(points=[GENERIC])).is_empty()


def test_removing_tail_vertex_keeps_representation():
    S = SymbolicSubset.make(tails={"X0": 2})
    T = S.without_vertex(V("X0[4]"))
    assert not T.contains_vertex(V("X0[4]"))
    assert T.contains_vertex(V("X0[3]")) and T.contains_vertex(V("X0[9]"))


def test_json_round_trip():
    Z = ZgSpace(2, 3, 2)
    S = SymbolicSubset.make([V("Y1[1]")], {"Z2": 3}, [Prufer("X1"), Adic("Y2[2]")])
    assert SymbolicSubset.from_json(S.to_json(), Z) == S
    with pytest.raises(ValueError):
        SymbolicSubset.from_json({"vertices": [["Y", 3, 1]]}, Z)


def test_covers():
    E1 = cover_Ei("E1", (3, 3, 3))
    assert E1.names() == ["Zg(D0)", "cl(T)(1, 1, 1)", "Zg(D1)"]
    E2 = cover_Ei("E2", (3, 3, 3))
    tubes = [pc for pc in E2.pieces if pc.kind == "tube"]
    assert [pc.params for pc in tubes] == [(0, 2, 2)] * 3
    assert len(cover_Ei("E2", (2, 3, 6)).pieces) == 5
    assert [pc.params for pc in cover_Ei("E0", (2, 3, 6)).pieces if pc.params] == [(4, 1, 1)]
    with pytest.raises(BadTubularType):
        cover_Ei("E1", (2, 2, 3))
    T = cover_trivial_extension((3, 3, 3))
    assert len(T.pieces) == 6
    assert len(cover_galois((2, 4, 4), 2).pieces) == 12
    assert _cover_shape(cover_galois((3, 3, 3), 1)) == _cover_shape(T)


def _cover_shape(C):
    return [(pc.name, pc.kind, [s.name for s in pc.subpieces]) for pc in C.pieces], C.identifications


def test_piecewise_closedness_matches_direct_closure():
    E2 = cover_Ei("E2", (3, 3, 3))
    tubes = [pc for pc in E2.pieces if pc.kind == "tube"]
    rng = random.Random(5)
    for _ in range(200):
        traces = {pc.name: random_subset(pc.space, rng) for pc in tubes}
        direct = all(pc.space.closure(s) == s for pc, s in zip(tubes, traces.values()))
        assert E2.is_closed(traces) == direct
    with pytest.raises(OpaqueTrace):
        E2.is_closed({"Zg(D1)": "something"})
