import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twisted_levis import _linalg as la
from twisted_levis.catalog import preset
from twisted_levis.root_system import is_closed, span_of
from twisted_levis.weyl import act, fixes_fr_vector, inv, mul

from helpers import SMALL, gen, stable, tori

GROUPS = ["Sp4", "G2", "SU3q", "SL3"]
group_st = st.sampled_from(GROUPS)


def pick(data, seq):
    return data.draw(st.sampled_from(sorted(seq)))


@settings(max_examples=60, deadline=None)
@given(group_st, st.data())
def test_weyl_action_is_equivariant(group, data):
    W = preset(group).apartment.W
    rs = W.rs
    a, b = pick(data, W.elements), pick(data, W.elements)
    S = frozenset(data.draw(st.sets(st.sampled_from(range(len(rs.roots))), max_size=4)))
    assert act(mul(a, b), S) == act(a, act(b, S))
    assert span_of(rs, act(a, S)) == act(a, span_of(rs, S))
    assert is_closed(rs, act(a, S)) == is_closed(rs, S)
    m = W.matrix(a)
    x = data.draw(st.lists(st.fractions(max_denominator=5, min_value=-3, max_value=3), min_size=rs.rank, max_size=rs.rank))
    i = pick(data, range(len(rs.roots)))
    assert rs.evaluate(a[i], la.matvec(m, x)) == rs.evaluate(i, x)


@settings(max_examples=40, deadline=None)
@given(group_st, st.data())
def test_frobenius_is_an_automorphism(group, data):
    apt = preset(group).apartment
    W, fr = apt.W, apt.fr
    a, b = pick(data, W.elements), pick(data, W.elements)
    assert fr(mul(a, b)) == mul(fr(a), fr(b))
    assert fr(inv(a)) == inv(fr(a))


@settings(max_examples=80, deadline=None)
@given(group_st, st.data())
def test_ellipticity_is_an_f_class_invariant(group, data):
    E = tori(group)
    F = data.draw(st.sampled_from(E.apt.facets))
    pairs = E.pairs(F)
    X, w = data.draw(st.sampled_from(pairs))
    n = data.draw(st.sampled_from(E.W_F(F)))
    moved = (act(n, X), mul(E.fr(n), mul(w, inv(n))))
    assert E.is_elliptic(F, X, w) == E.is_elliptic(F, *moved)


@pytest.mark.parametrize("group", SMALL)
def test_elliptic_implies_torus_elliptic(group):
    E = tori(group)
    for F in E.apt.facets:
        for X, w in E.pairs(F):
            if E.is_elliptic(F, X, w):
                assert E.is_elliptic(F, frozenset(), w)


@pytest.mark.parametrize("group", SMALL)
def test_bad_elements_are_the_fr_vector_fixers(group):
    E = tori(group)
    for F in E.apt.facets:
        bad = E.bad_elements(F)
        for w in E.W_F(F):
            assert (w in bad) == fixes_fr_vector(E.W, w, F.phi, E.fr)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["Sp4", "G2", "SU3q"]), st.data())
def test_stable_class_is_conjugation_invariant(group, data):
    E, S = tori(group), stable(group)
    c = data.draw(st.sampled_from(E.classes))
    n = pick(data, E.W.elements)
    moved = (act(n, c.members), mul(E.fr(n), mul(c.w, inv(n))))
    assert S.stable_class_of(*moved) == S.stable_class_of(c.members, c.w)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["Sp4", "G2", "SU3q"]), st.data())
def test_embedding_count_independent_of_representative(group, data):
    E, S = tori(group), stable(group)
    c = data.draw(st.sampled_from(E.classes))
    t = data.draw(st.sampled_from(c.triples))
    n = data.draw(st.sampled_from(E.W_F(t.facet)))
    moved = (act(n, t.members), mul(E.fr(n), mul(t.w, inv(n))))
    base = S.embedding_count(c.facet, c.members, c.w).count
    assert S.embedding_count(t.facet, *moved).count == base


@pytest.mark.parametrize("group", ["Sp4", "G2", "SU3q", "SL3", "SL1D(4)"])
def test_radius_stability(group):
    apt = preset(group).apartment
    key = lambda classes: [[f.vanishing_nodes for f in c] for c in classes]
    assert key(apt.facet_equivalence_classes(4)) == key(apt.facet_equivalence_classes(6))
    for F in apt.facets:
        assert apt.span_stabilizer_linear_parts(F, 4).elements == apt.span_stabilizer_linear_parts(F, 6).elements


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([("Sp4", 2), ("G2", 3), ("Sp4", 0), ("G2", 0)]), st.data())
def test_contains_transitive_samples(gc, data):
    G = gen(*gc)
    n = len(G.classes)
    a, b, c = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    if G.contains(a, b) and G.contains(b, c):
        assert G.contains(a, c)
