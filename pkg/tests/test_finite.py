import pytest

from twisted_levis.catalog import preset
from twisted_levis.finite import (
    _pairs,
    enumerate_IG,
    enumerate_IGprime,
    finite_twist,
    positive_bases,
    simple_subsets,
)

from helpers import SMALL, finite_record, reference
from oracles import classes_from_relation, twisted_conjugate


@pytest.mark.parametrize("name,count", [("G2", 11), ("SU3q", 5), ("Sp4", 10), ("A1", 3), ("SL3", 5)])
def test_class_counts(name, count):
    assert len(enumerate_IG(preset(name))) == count


@pytest.mark.parametrize("group", ["G2", "SU3q"])
def test_reference_rows_biject(group):
    recs = enumerate_IG(preset(group))
    hits = [finite_record(recs, group, r["theta"], r["w"]) for r in reference()["finite"][group]]
    assert sorted(hits) == list(range(len(recs)))


def test_g2_descriptors():
    recs = enumerate_IG(preset("G2"))
    rows = reference()["finite"]["G2"]
    coxeter = recs[finite_record(recs, "G2", [], "c")].descriptor
    assert coxeter.twist_order == 6 and coxeter.charpoly == (1, -1, 1)
    u2 = recs[finite_record(recs, "G2", ["a"], rows[7]["w"])].descriptor
    assert u2.cartan_type == "A1s" and u2.twist_order_theta == 1


def test_su3_twist_preserves_positive_roots():
    apt = preset("SU3q").apartment
    fr = finite_twist(apt.W, apt.fr)
    assert fr.on_roots(apt.rs.simple) == frozenset(apt.rs.simple)


@pytest.mark.parametrize("group", [g for g in SMALL if g != "SL1D(4)"])
def test_union_find_matches_naive_partition(group):
    apt = preset(group).apartment
    W, fr = apt.W, finite_twist(apt.W, apt.fr)
    subsets = set(simple_subsets(W.rs))
    pairs = _pairs(W, fr, sorted(subsets, key=sorted))
    naive = classes_from_relation(pairs, lambda p, q: twisted_conjugate(W, fr, p, q))
    engine = {frozenset(r.members) for r in enumerate_IG(preset(group))}
    assert engine == naive


@pytest.mark.parametrize("char,extra", [(0, 3), (2, 3), (3, 5)])
def test_g2_generalized(char, extra):
    recs = enumerate_IGprime(preset("G2"), char)
    assert sum(r.generalized for r in recs) == extra
    assert len(recs) - extra == 11


def test_table_of_generalized_levis():
    recs = enumerate_IGprime(preset("G2"), 3)
    rows = reference()["finite_gen"]["G2"]
    hits = {finite_record(recs, "G2", r["theta"], r["w"]) for r in rows}
    assert hits == {k for k, r in enumerate(recs) if r.generalized}


def test_IG_embeds_in_IGprime():
    for group in ("Sp4", "G2", "SU3q"):
        small = enumerate_IG(preset(group))
        big = enumerate_IGprime(preset(group))
        for r in small:
            assert any(set(r.members) <= set(R.members) for R in big)


def test_positive_bases_char_dependence():
    rs = preset("Sp4").apartment.rs
    assert len(positive_bases(rs, 2)) > len(positive_bases(rs, 0))
