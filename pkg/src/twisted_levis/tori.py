"""Rational classes of unramified tori: elliptic triples (F, theta, w) mod ≈.

Pairs are keyed by the subsystem ``Phi_theta`` (a frozenset of root indices):
every relation in play depends on ``theta`` only through ``Phi_theta``, and two
bases of one subsystem are always equivalent (take ``n = 1``).

Ellipticity uses the geometric meaning of a Fr-stable parabolic of ``W_F``:
the isotropy group of a nonzero Fr-fixed vector of ``span(Phi_F)``.  The
≈-relation is applied literally inside the closed alcove: two triples are
identified when a Fr-fixed affine Weyl element carries the Fr-fixed span of
one facet onto the other's and transports the pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from scipy.cluster.hierarchy import DisjointSet

from .affine import DEFAULT_RADIUS, Apartment, Facet
from .catalog import GroupSpec
from .root_system import base_of_subsystem, parabolic_subsystems
from .weyl import Perm, WeylGroup, act, generate, inv, mul, parabolic_subgroups

Pair = tuple[frozenset, Perm]


@dataclass(frozen=True)
class Triple:
    facet: Facet
    members: frozenset
    w: Perm


@dataclass
class TripleClass:
    """One ≈-class of elliptic triples, with every member inside the closed alcove."""

    facet: Facet
    facet_class: int
    members: frozenset
    theta: tuple[int, ...]
    w: Perm
    triples: list[Triple] = field(repr=False)

    @property
    def representative(self) -> Triple:
        return Triple(self.facet, self.members, self.w)


class TripleEngine:
    """Elliptic triples for one spec and one family of subsystems."""

    def __init__(self, spec: GroupSpec, subsystems: Iterable[frozenset], radius: int = DEFAULT_RADIUS):
        self.spec = spec
        self.apt: Apartment = spec.apartment
        self.W: WeylGroup = self.apt.W
        self.fr = self.apt.fr
        self.radius = radius
        self.subsystems = sorted(set(subsystems), key=lambda s: (len(s), sorted(s)))
        self._reflection_groups: dict[frozenset, frozenset] = {}

    # -- per-facet data ---------------------------------------------------

    @cached_property
    def facet_classes(self) -> list[list[Facet]]:
        return self.apt.facet_equivalence_classes(self.radius)

    @cached_property
    def facet_class_id(self) -> dict[frozenset, int]:
        return {f.vanishing_nodes: k for k, cls in enumerate(self.facet_classes) for f in cls}

    @cached_property
    def _wf(self) -> dict[frozenset, tuple[Perm, ...]]:
        return {F.vanishing_nodes: tuple(sorted(self.apt.weyl_group_of(F).elements)) for F in self.apt.facets}

    def W_F(self, F: Facet) -> tuple[Perm, ...]:
        return self._wf[F.vanishing_nodes]

    def W_of(self, members: frozenset) -> frozenset:
        g = self._reflection_groups.get(members)
        if g is None:
            g = generate(self.W, [self.W.reflection(r) for r in members if r in self.W.rs.positive])
            self._reflection_groups[members] = g
        return g

    def key(self, pair: Pair) -> tuple:
        members, w = pair
        base = base_of_subsystem(self.W.rs, members) if members else ()
        return (len(base), base, self.W.length(w), self.W.word(w))

    def pairs(self, F: Facet) -> list[Pair]:
        """İ(F): (Phi, w) with w in W_F and Fr(Phi) = w Phi."""
        out = []
        for s in self.subsystems:
            target = self.fr.on_roots(s)
            for w in self.W_F(F):
                if act(w, s) == target:
                    out.append((s, w))
        return out

    def f_class(self, F: Facet, pair: Pair) -> frozenset:
        """All (Phi', w') ∼_F (Phi, w)."""
        members, w = pair
        wf = self.W_F(F)
        out = set()
        for n in wf:
            m2 = act(n, members)
            base = mul(self.fr(n), mul(w, inv(n)))
            if len(wf) == 1:
                out.add((m2, base))
                continue
            wt = self.W_of(m2)
            for u in wf:
                if u in wt:
                    out.add((m2, mul(base, u)))
        return frozenset(out)

    def f_classes(self, F: Facet) -> list[list[Pair]]:
        seen: set = set()
        out = []
        for p in self.pairs(F):
            if p in seen:
                continue
            cls = self.f_class(F, p)
            seen |= cls
            out.append(sorted(cls, key=self.key))
        return sorted(out, key=lambda c: self.key(c[0]))

    def bad_elements(self, F: Facet) -> frozenset:
        """Union of the Fr-stable proper parabolic subgroups of W_F."""
        cache = self.__dict__.setdefault("_bad", {})
        k = F.vanishing_nodes
        if k not in cache:
            out: set = set()
            if len(self.W_F(F)) > 1:
                for P in parabolic_subgroups(self.W, F.phi, self.fr, frozenset(self.W_F(F))):
                    if P.fr_stable and P.proper:
                        out |= P.subgroup
            cache[k] = frozenset(out)
        return cache[k]

    def is_elliptic(self, F: Facet, members, w: Perm) -> bool:
        bad = self.bad_elements(F)
        if not bad:
            return True
        return not any(w2 in bad for _, w2 in self.f_class(F, (frozenset(members), w)))

    def elliptic_f_classes(self, F: Facet) -> list[list[Pair]]:
        bad = self.bad_elements(F)
        return [c for c in self.f_classes(F) if not any(w in bad for _, w in c)]

    # -- ≈ across the closed alcove ----------------------------------------

    @cached_property
    def span_maps(self) -> dict[tuple[frozenset, frozenset], list[Perm]]:
        out = {}
        facets = self.apt.facets
        for F in facets:
            for G in facets:
                if self.facet_class_id[F.vanishing_nodes] != self.facet_class_id[G.vanishing_nodes]:
                    continue
                out[(F.vanishing_nodes, G.vanishing_nodes)] = self.apt.span_maps(F, G, self.radius)
        return out

    @cached_property
    def classes(self) -> list[TripleClass]:
        facets = self.apt.facets
        nodes: list[tuple[Facet, Pair]] = []
        where: dict[tuple[frozenset, Pair], int] = {}
        groups = []
        for F in facets:
            for cls in self.elliptic_f_classes(F):
                first = len(nodes)
                for p in cls:
                    where[(F.vanishing_nodes, p)] = len(nodes)
                    nodes.append((F, p))
                groups.append(range(first, len(nodes)))
        ds = DisjointSet(range(len(nodes)))
        for g in groups:
            for i in g:
                ds.merge(g[0], i)
        for i, (F, (members, w)) in enumerate(nodes):
            for G in facets:
                for M in self.span_maps.get((F.vanishing_nodes, G.vanishing_nodes), ()):
                    image = (act(M, members), mul(M, mul(w, inv(M))))
                    j = where.get((G.vanishing_nodes, image))
                    if j is None:
                        raise AssertionError("≈ carried an elliptic triple to a non-elliptic one")
                    ds.merge(i, j)
        out = []
        for subset in ds.subsets():
            triples = [Triple(nodes[i][0], *nodes[i][1]) for i in subset]
            fc = min(self.facet_class_id[t.facet.vanishing_nodes] for t in triples)
            rep_facet = self.facet_classes[fc][0]
            at_rep = [(t.members, t.w) for t in triples if t.facet == rep_facet]
            members, w = min(at_rep, key=self.key)
            triples.sort(key=lambda t: (t.facet.key, self.key((t.members, t.w))))
            theta = base_of_subsystem(self.W.rs, members) if members else ()
            out.append(TripleClass(rep_facet, fc, members, theta, w, triples))
        out.sort(key=lambda c: (c.facet_class, self.key((c.members, c.w))))
        return out

    def class_of(self, F: Facet, members, w: Perm) -> int:
        """Index in :attr:`classes` of an elliptic triple in the closed alcove."""
        members = frozenset(members)
        for k, c in enumerate(self.classes):
            for t in c.triples:
                if t.facet.vanishing_nodes == F.vanishing_nodes and t.members == members and t.w == w:
                    return k
        raise KeyError("triple is not elliptic or not in the closed alcove")

    # -- the normalizer shortcut ------------------------------------------

    def normalizer_reduction(self) -> list[tuple[Facet, Pair]]:
        """Classes from representative facets reduced under N_{W^Fr}(W_F) W_F."""
        out = []
        for cls in self.facet_classes:
            F = cls[0]
            wf = frozenset(self.W_F(F))
            norm = [m for m in self.apt.fr_centralizer if all(mul(m, mul(u, inv(m))) in wf for u in wf)]
            seen: set = set()
            for c in self.elliptic_f_classes(F):
                if c[0] in seen:
                    continue
                orbit = set(c)
                for m in norm:
                    for members, w in c:
                        img = (act(m, members), mul(m, mul(w, inv(m))))
                        orbit |= self.f_class(F, img)
                seen |= orbit
                out.append((F, min(orbit, key=self.key)))
        return out


def theta_family(spec: GroupSpec) -> list[frozenset]:
    """Phi_theta for theta in Θ: the parabolic subsystems."""
    return parabolic_subsystems(spec.apartment.rs)


def engine(spec: GroupSpec, radius: int = DEFAULT_RADIUS) -> TripleEngine:
    return TripleEngine(spec, theta_family(spec), radius)


def enumerate_dotI_F(spec: GroupSpec, F: Facet) -> list[Pair]:
    return engine(spec).pairs(F)


def reduce_F(spec: GroupSpec, F: Facet) -> list[list[Pair]]:
    return engine(spec).f_classes(F)


def is_elliptic(spec: GroupSpec, F: Facet, members, w: Perm) -> bool:
    return engine(spec).is_elliptic(F, members, w)


def enumerate_elliptic_triples(spec: GroupSpec, radius: int = DEFAULT_RADIUS) -> list[TripleClass]:
    return engine(spec, radius).classes


def maximal_tori_classes(spec: GroupSpec, radius: int = DEFAULT_RADIUS) -> list[TripleClass]:
    return [c for c in enumerate_elliptic_triples(spec, radius) if not c.members]
