"""Lookup helpers shared by the test modules."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from twisted_levis.catalog import resolve
from twisted_levis.genlevi import GenEngine
from twisted_levis.root_system import span_of
from twisted_levis.stable import StableEngine
from twisted_levis.tori import engine

SMALL = ["A1", "SL3", "SU3q", "Sp4", "G2", "SL1D(2)", "SL1D(3)", "SL1D(4)"]
TORI_PRESETS = SMALL + [f"SL1D({n})" for n in range(5, 9)]


@lru_cache(maxsize=None)
def reference() -> dict:
    text = resources.files("twisted_levis").joinpath("fixtures/reference_labels.json").read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def tori(group: str, radius: int = 4):
    return engine(resolve(group), radius)


@lru_cache(maxsize=None)
def stable(group: str):
    return StableEngine(resolve(group))


@lru_cache(maxsize=None)
def gen(group: str, char=0):
    return GenEngine(resolve(group), char)


def subsystem(group: str, names) -> frozenset:
    rs = resolve(group).apartment.rs
    return span_of(rs, [rs.parse_root(n) for n in names])


def word(group: str, text: str):
    return resolve(group).apartment.W.parse_word(text)


def locate(E, group: str, label: dict) -> int:
    """Class index of a labelled triple (facet nodes, theta names, word)."""
    F = E.apt.facet(label["facet"])
    return E.class_of(F, subsystem(group, label["theta"]), word(group, label["w"]))


def finite_record(records, group: str, theta, w: str) -> int:
    rs = resolve(group).apartment.rs
    xi = frozenset(rs.parse_root(n) for n in theta)
    target = (xi, word(group, w))
    hits = [k for k, r in enumerate(records) if target in r.members]
    assert len(hits) == 1, (theta, w, hits)
    return hits[0]
