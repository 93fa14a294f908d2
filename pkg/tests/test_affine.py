from fractions import Fraction

import pytest

from twisted_levis.affine import AffineElement
from twisted_levis.catalog import preset


@pytest.mark.parametrize("name,n", [("Sp4", 7), ("G2", 7), ("SL3", 7), ("SU3q", 3), ("SL1D(3)", 1)])
def test_fr_stable_facet_counts(name, n):
    assert len(preset(name).apartment.facets) == n


def test_vertices_lie_on_walls():
    apt = preset("G2").apartment
    for i, v in enumerate(apt.vertices):
        vals = [apt.psi(j, v) for j in apt.nodes]
        assert vals[i] > 0 and all(x == 0 for j, x in enumerate(vals) if j != i)


def test_su3_frobenius_is_reflection_through_a_line():
    apt = preset("SU3q").apartment
    assert apt.fr_order == 2
    assert [f.fr_fixed_dim for f in apt.facets] == [0, 0, 1]


def test_barycenters_are_fr_fixed():
    for name in ("SU3q", "SL1D(5)", "Sp4"):
        apt = preset(name).apartment
        for F in apt.facets:
            assert apt.fr_apply(F.barycenter) == F.barycenter


@pytest.mark.parametrize("name,sizes", [
    ("Sp4", [8, 8, 4, 2, 2, 2, 1]),
    ("G2", [12, 4, 6, 2, 2, 1]),
])
def test_facet_classes_and_weyl_groups(name, sizes):
    apt = preset(name).apartment
    classes = apt.facet_equivalence_classes()
    assert [len(apt.weyl_group_of(c[0])) for c in classes] == sizes


def test_g2_hypotenuse_and_horizontal_edge_equivalent():
    apt = preset("G2").apartment
    classes = [{f.vanishing_nodes for f in c} for c in apt.facet_equivalence_classes()]
    assert {frozenset({0}), frozenset({2})} in classes


def test_sp4_vertices_not_equivalent():
    apt = preset("Sp4").apartment
    assert all(len(c) == 1 for c in apt.facet_equivalence_classes())


def test_affine_element_composition():
    apt = preset("Sp4").apartment
    W = apt.W
    g = AffineElement(W.gens[0], (1, 0))
    h = AffineElement(W.gens[1], (0, -1))
    x = (Fraction(1, 3), Fraction(1, 7))
    assert apt.apply(apt.compose(g, h), x) == apt.apply(g, apt.apply(h, x))


def test_fr_fixed_elements_of_split_group_include_translations():
    apt = preset("Sp4").apartment
    els = apt.fr_fixed_elements(radius=1)
    assert AffineElement(apt.W.identity, (1, 0)) in els
    assert all(apt.is_fr_fixed(g) for g in els)


def test_facet_of_point():
    apt = preset("Sp4").apartment
    F = apt.facet({1, 2})
    assert apt.facet_of_point(F.barycenter).vanishing_nodes == F.vanishing_nodes
    assert apt.facet_of_point((Fraction(-1), Fraction(0))) is None
