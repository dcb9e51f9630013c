import pytest

from tubular.quiver_algebra import (
    BoundQuiverAlgebra,
    NotAdmissible,
    NotFiniteDimensional,
    Quiver,
    Relation,
    build_algebra,
    ext_quiver,
    radical,
    same_multigraph,
    verify_relations,
)
from tubular import fixtures as fx


def test_kronecker_basics(kron):
    assert kron.dim == 4
    assert len(radical(kron.structure())) == 2
    assert kron.structure().check_associative()
    eq = ext_quiver(kron)
    assert same_multigraph(eq.quiver, kron.quiver)


def test_truncated_polynomial_ring():
    q = Quiver(["v"], [("x", "v", "v")])
    A = build_algebra(q, [Relation.from_words(q, [(1, ("x", "x", "x"))])])
    assert A.dim == 3


def test_loop_without_relations_is_infinite():
    q = Quiver(["v"], [("x", "v", "v")])
    with pytest.raises(NotFiniteDimensional):
        build_algebra(q, [], cap=8)


def test_relations_must_be_admissible():
    q = Quiver(["a", "b", "c"], [("x", "a", "b"), ("y", "b", "c"), ("z", "a", "b")])
    with pytest.raises(NotAdmissible):
        Relation.from_words(q, [(1, ("x",))])
    with pytest.raises(NotAdmissible):
        Relation.from_words(q, [(1, ("y", "x")), (1, ("x",))])


def test_canonical_333(canonical):
    assert canonical.dim == 25
    assert canonical.bound == 4
    assert canonical.structure().check_associative()
    assert same_multigraph(ext_quiver(canonical).quiver, fx.canonical_quiver())


def test_opposite_is_cached_both_ways(canonical):
    op = canonical.opposite()
    assert op.opposite() is canonical
    assert op.dim == canonical.dim


def test_quiver_json_round_trip(canonical):
    q = canonical.quiver
    assert Quiver.from_json(q.to_json()) == q
    rel = canonical.relations[0]
    assert Relation.from_json(q, rel.to_json()).terms == rel.terms


def test_verify_relations_detects_wrong_relation(canonical):
    q = canonical.quiver
    asg = {a.label: canonical.path_element((a.label,)) for a in q.arrows}
    wrong = Relation.from_words(q, [(1, ("a3", "a2", "a1")), (-1, ("b3", "b2", "b1"))])
    assert verify_relations(canonical, asg, canonical.relations)
    assert not verify_relations(canonical, asg, [wrong])


def test_normal_form_dim_counts_paths(canonical):
    # e_0 A e_w is two-dimensional: three arm paths modulo one relation
    assert len(canonical.basis_paths(src="w", tgt="0")) == 2
    assert isinstance(canonical, BoundQuiverAlgebra)
