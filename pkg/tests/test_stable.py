import pytest

from twisted_levis.catalog import GroupSpec, preset
from twisted_levis.stable import NotSimplyConnected, StableEngine, embedding_table
from twisted_levis.weyl import act, inv, mul

from helpers import SMALL, locate, reference, stable, subsystem, tori, word
from oracles import classes_from_relation


def I_related(S, p, q) -> bool:
    (J, w), (K, v) = p, q
    return any(act(n, J) == K and mul(S.fr(n), mul(w, inv(n))) == v for n in S.W)


@pytest.mark.parametrize("group,count", [("Sp4", 10), ("G2", 11), ("SU3q", 5), ("SL3", 5)])
def test_stable_class_counts(group, count):
    assert len(stable(group).classes) == count


@pytest.mark.parametrize("group", SMALL)
def test_I_partition_matches_naive(group):
    S = stable(group)
    naive = classes_from_relation(S.pairs, lambda p, q: I_related(S, p, q))
    engine = {frozenset(c) for c in S._partition[0]}
    assert engine == naive


def test_sp4_stable_list():
    S = stable("Sp4")
    ids = {S.class_id(subsystem_simple("Sp4", r["theta"]), word("Sp4", r["w"])) for r in reference()["stable_pairs"]["Sp4"]}
    assert ids == set(range(10))


def subsystem_simple(group, names):
    rs = preset(group).apartment.rs
    return frozenset(rs.parse_root(n) for n in names)


@pytest.mark.parametrize("group", ["Sp4", "G2", "SU3q"])
def test_letters_match_stable_partition(group):
    E, S = tori(group), stable(group)
    letters = {}
    for lab in reference()["tori"][group]:
        c = E.classes[locate(E, group, lab)]
        sid = S.stable_class_of(c.members, c.w)
        letters.setdefault(lab["letter"], set()).add(sid)
    assert all(len(v) == 1 for v in letters.values())
    assert len({next(iter(v)) for v in letters.values()}) == len(letters)


@pytest.mark.parametrize("group", ["Sp4", "G2", "SU3q"])
def test_embedding_counts(group):
    E, S = tori(group), stable(group)
    for lab in reference()["tori"][group]:
        F = E.apt.facet(lab["facet"])
        got = S.embedding_count(F, subsystem(group, lab["theta"]), word(group, lab["w"])).count
        assert got == lab["count"], lab


@pytest.mark.parametrize("group", SMALL)
def test_reduction_on_every_triple(group):
    # reduce_to_I asserts y is unique; embedding_count asserts W_theta is normal
    E, S = tori(group), stable(group)
    for c in E.classes:
        sids = {S.stable_class_of(t.members, t.w) for t in c.triples}
        assert len(sids) == 1
        counts = {S.embedding_count(t.facet, t.members, t.w).count for t in c.triples}
        assert len(counts) == 1


def test_embedding_table_rows():
    rows = embedding_table(preset("SU3q"))
    assert [r.count.count for r in rows] == [1, 1, 3, 1, 1, 1, 1]


def test_reduce_rejects_non_pairs():
    S = stable("Sp4")
    rs = S.W.rs
    with pytest.raises(ValueError):
        S.reduce_to_I(frozenset({rs.parse_root("a"), rs.parse_root("-a")}), S.W.parse_word("b"))


def test_not_simply_connected_refused():
    spec = GroupSpec("PGL2", "A_1", (0, 1), simply_connected=False)
    S = StableEngine(spec)
    F = spec.apartment.facets[0]
    with pytest.raises(NotSimplyConnected):
        S.embedding_count(F, frozenset(), S.W.identity)
