from dataclasses import replace
from fractions import Fraction

import pytest

from covering_suite import full_suite, single_orbit_modules, straddling_control
from tubular import fixtures as fx
from tubular.constructions import trivial_extension
from tubular.covering import (
    AlgebraCategory,
    check_covering,
    direct_sum,
    galois_covering,
    identity_covering,
    is_unit_natural,
    lift_morphism,
    orbit_algebra,
    orbit_sum_on_window,
    projective_module,
    pull_up,
    push_down,
    simple_module,
    triangle_identities,
    window_objects,
)

BASES = {"kronecker": fx.kronecker, "canonical": fx.canonical_333}


@pytest.fixture(scope="module", params=list(BASES))
def base(request):
    return BASES[request.param]()


@pytest.mark.parametrize("s", [1, 2])
def test_covering_suite(base, s):
    res = full_suite(base, s)
    assert res == {"covering": True, "lifting": (0, 0, 0), "projectives": [], "hom": 0}


def test_straddling_window_breaks_hom_preservation(base):
    up, down = straddling_control(base)
    assert up < down


def test_orbit_algebra_period_one_is_the_trivial_extension(base):
    O, T = orbit_algebra(base, 1), trivial_extension(base)
    assert O.dim == T.dim
    assert O.table == T.table


def test_identity_covering(kron):
    S = kron.structure()
    F = identity_covering(S)
    assert check_covering(F, S.vertices).ok


def test_corrupted_covering_is_rejected(kron):
    F = galois_covering(kron, 1)
    n = F.source.base.dim

    def mor(b):
        kind, k, _ = b
        if kind == "r" and k == n - 1:
            return {}
        return F.mor(b)

    G = replace(F, mor=mor)
    rep = check_covering(G, window_objects(kron, 0, 1))
    assert not rep.ok
    assert rep.failure["rank"] < rep.failure["shape"][0]


def test_lift_rejects_foreign_hom_space(kron):
    F = galois_covering(kron, 2)
    a = ("c1", 0)
    beta = F.target.hom(F.obj(("c2", 0)), F.obj(("c2", 0)))[0]
    with pytest.raises(ValueError):
        lift_morphism(F, {beta: Fraction(1)}, a, F.obj(("c2", 0)))


@pytest.mark.parametrize("s", [1, 2])
def test_adjunction(kron, s):
    F = galois_covering(kron, s)
    for a in window_objects(kron, 0, 1):
        P = projective_module(F.source, a, window_objects(kron, -1, 3))
        assert triangle_identities(F, P)
        assert is_unit_natural(F, P)


def test_push_down_is_additive(kron):
    F = galois_covering(kron, 1)
    mods = single_orbit_modules(F, kron, 1)
    M, N = mods[0], mods[-1]
    S = push_down(F, direct_sum(M, N))
    assert S.total_dim() == M.total_dim() + N.total_dim()
    assert S.is_functor()


def test_pull_up_of_push_down_is_the_orbit_sum(base):
    for s in (1, 2):
        F = galois_covering(base, s)
        M = single_orbit_modules(F, base, s)[-1]
        win = window_objects(base, -1, 2)
        assert pull_up(F, push_down(F, M), win) == orbit_sum_on_window(F, M, win)


def test_pull_up_of_zero(kron):
    F = galois_covering(kron, 1)
    zero = simple_module(AlgebraCategory(F.target), F.target.vertices[0])
    zero.dims = {}
    assert pull_up(F, zero, window_objects(kron, 0, 2)).total_dim() == 0


def test_period_must_be_positive(kron):
    with pytest.raises(ValueError):
        galois_covering(kron, 0)

