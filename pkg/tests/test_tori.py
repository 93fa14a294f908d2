import pytest
from sympy import divisor_count

from twisted_levis.weyl import act, inv, mul

from helpers import SMALL, TORI_PRESETS, locate, reference, tori
from oracles import classes_from_relation, lifts_to_larger_facet


def f_related(E, F, p, q) -> bool:
    """(Phi, w) ∼_F (Phi', w'): n Phi = Phi' and Fr(n) w n^-1 in w'(W_F ∩ W_Phi')."""
    (X, w), (Y, v) = p, q
    wf = E.W_F(F)
    for n in wf:
        if act(n, X) != Y:
            continue
        x = mul(inv(v), mul(E.fr(n), mul(w, inv(n))))
        if x in wf and x in E.W_of(Y):
            return True
    return False


@pytest.mark.parametrize("group,count", [("Sp4", 16), ("G2", 15), ("SU3q", 7), ("SL3", 7), ("A1", 4)])
def test_class_counts(group, count):
    assert len(tori(group).classes) == count


@pytest.mark.parametrize("n", range(2, 9))
def test_division_algebra_classes_count_divisors(n):
    assert len(tori(f"SL1D({n})").classes) == divisor_count(n)


@pytest.mark.parametrize("group", SMALL)
def test_f_classes_match_naive(group):
    E = tori(group)
    for F in E.apt.facets:
        pairs = E.pairs(F)
        naive = classes_from_relation(pairs, lambda p, q: f_related(E, F, p, q))
        assert {frozenset(c) for c in E.f_classes(F)} == naive


@pytest.mark.parametrize("group", TORI_PRESETS)
def test_approx_classes_match_naive(group):
    E = tori(group)
    items = [(F, p) for F in E.apt.facets for c in E.elliptic_f_classes(F) for p in c]
    maps = {(F.vanishing_nodes, G.vanishing_nodes): E.apt.span_maps(F, G) for F in E.apt.facets for G in E.apt.facets}

    def related(a, b):
        (F, (X, w)), (G, q) = a, b
        if F == G and f_related(E, F, (X, w), q):
            return True
        return any(f_related(E, G, (act(M, X), mul(M, mul(w, inv(M)))), q) for M in maps[(F.vanishing_nodes, G.vanishing_nodes)])

    index = {it: k for k, it in enumerate(items)}
    adj = {(index[a], index[b]) for a in items for b in items if related(a, b)}
    naive = classes_from_relation(list(range(len(items))), lambda i, j: (i, j) in adj)
    engine = {frozenset(index[(t.facet, (t.members, t.w))] for t in c.triples) for c in E.classes}
    assert engine == naive


@pytest.mark.parametrize("group", SMALL)
def test_ellipticity_is_dimension_maximality(group):
    E = tori(group)
    for F in E.apt.facets:
        for c in E.f_classes(F):
            assert E.is_elliptic(F, *c[0]) != lifts_to_larger_facet(E.apt, F, E.W_F(F), c)


@pytest.mark.parametrize("group", SMALL)
def test_normalizer_shortcut_agrees(group):
    E = tori(group)
    reps = E.normalizer_reduction()
    assert len(reps) == len(E.classes)
    assert {E.class_of(F, *p) for F, p in reps} == set(range(len(E.classes)))


def test_sp4_maximal_tori_distribution():
    E = tori("Sp4")
    maximal = [c for c in E.classes if not c.members]
    assert len(maximal) == 9
    per_facet = [sum(c.facet == F for c in maximal) for F in E.apt.facets]
    assert per_facet == [2, 2, 1, 1, 1, 1, 1]
    hits = {locate(E, "Sp4", lab) for lab in reference()["maximal_tori"]["Sp4"]}
    assert hits == {E.classes.index(c) for c in maximal}


@pytest.mark.parametrize("group", ["Sp4", "G2", "SU3q"])
def test_reference_triples_biject(group):
    E = tori(group)
    labels = reference()["tori"][group]
    hits = [locate(E, group, lab) for lab in labels]
    assert sorted(hits) == list(range(len(E.classes)))


def test_g2_hypotenuse_equivalent_to_horizontal_edge():
    E = tori("G2")
    facets = reference()["facets"]["G2"]
    hyp = E.apt.facet(facets["hypotenuse"])
    hor = E.apt.facet(facets["horizontal_edge"])
    assert E.facet_class_id[hyp.vanishing_nodes] == E.facet_class_id[hor.vanishing_nodes]
    c = E.classes[E.class_of(hyp, frozenset(), E.W.parse_word("b"))]
    assert {t.facet.vanishing_nodes for t in c.triples} == {hyp.vanishing_nodes, hor.vanishing_nodes}


def test_non_elliptic_example():
    E = tori("Sp4")
    F = E.apt.facet({1, 2})
    assert not E.is_elliptic(F, frozenset(), E.W.identity)
    assert not E.is_elliptic(F, frozenset(), E.W.parse_word("a"))
    assert E.is_elliptic(F, frozenset(), E.W.coxeter)
