"""Stable conjugacy: the set I/∼, reduction of İ to I, and embedding counts."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from scipy.cluster.hierarchy import DisjointSet

from .affine import DEFAULT_RADIUS, Facet
from .catalog import GroupSpec
from .finite import simple_subsets
from .root_system import span_of
from .tori import Triple, TripleEngine, engine
from .weyl import Perm, act, generate, inv, mul, normalizer_of_subsystem, twisted_subgroup


@dataclass(frozen=True)
class StableClass:
    id: int
    theta: tuple[int, ...]
    w: Perm
    size: int


@dataclass(frozen=True)
class EmbeddingCount:
    triple: Triple
    count: int
    twisted: int
    w_f_theta_w: int
    w_theta: int
    product: int


class NotSimplyConnected(ValueError):
    pass


class StableEngine:
    def __init__(self, spec: GroupSpec, radius: int = DEFAULT_RADIUS):
        self.spec = spec
        self.apt = spec.apartment
        self.W = self.apt.W
        self.fr = self.apt.fr
        self.radius = radius

    def key(self, pair) -> tuple:
        J, w = pair
        return (len(J), tuple(sorted(J)), self.W.length(w), self.W.word(w))

    @cached_property
    def pairs(self) -> list[tuple[frozenset, Perm]]:
        """I: (theta ⊆ Δ, w) with Fr(theta) = w theta as sets of roots."""
        out = []
        for J in simple_subsets(self.W.rs):
            target = self.fr.on_roots(J)
            out.extend((J, w) for w in self.W if act(w, J) == target)
        return out

    @cached_property
    def _partition(self) -> tuple[list[list], dict]:
        W, fr, simple = self.W, self.fr, frozenset(self.W.rs.simple)
        pos = {p: i for i, p in enumerate(self.pairs)}
        ds = DisjointSet(range(len(self.pairs)))
        for i, (J, w) in enumerate(self.pairs):
            for n in W:
                J2 = act(n, J)
                if J2 <= simple:
                    ds.merge(i, pos[(J2, mul(fr(n), mul(w, inv(n))))])
        classes = sorted(
            (sorted((self.pairs[i] for i in s), key=self.key) for s in ds.subsets()),
            key=lambda c: self.key(c[0]),
        )
        lookup = {p: k for k, c in enumerate(classes) for p in c}
        return classes, lookup

    @cached_property
    def classes(self) -> list[StableClass]:
        classes, _ = self._partition
        return [StableClass(k, tuple(sorted(c[0][0])), c[0][1], len(c)) for k, c in enumerate(classes)]

    def class_id(self, J, w: Perm) -> int:
        return self._partition[1][(frozenset(J), w)]

    @cached_property
    def _standard(self) -> dict[frozenset, frozenset]:
        return {span_of(self.W.rs, J): J for J in simple_subsets(self.W.rs)}

    def reduce_to_I(self, members, w: Perm) -> tuple[frozenset, Perm]:
        """Move (Phi_theta, w) in İ to a pair (J, w0 y) in I with J standard."""
        W, fr = self.W, self.fr
        members = frozenset(members)
        if fr.on_roots(members) != act(w, members):
            raise ValueError("Fr(Phi_theta) != w Phi_theta")
        for n in W:
            std = act(inv(n), members)
            if std in self._standard:
                break
        else:
            raise ValueError("subsystem is not parabolic")
        J = self._standard[std]
        w0 = mul(inv(fr(n)), mul(w, n))
        target = fr.on_roots(J)
        ys = [y for y in generate(W, [W.gens[j] for j in J]) if act(mul(w0, y), J) == target]
        if len(ys) != 1:
            raise AssertionError(f"expected a unique y in W_theta, found {len(ys)}")
        return J, mul(w0, ys[0])

    def stable_class_of(self, members, w: Perm) -> int:
        return self.class_id(*self.reduce_to_I(members, w))

    # -- embedding counts -------------------------------------------------

    def W_of_F(self, F: Facet) -> frozenset:
        cache = self.__dict__.setdefault("_wf", {})
        if F.vanishing_nodes not in cache:
            cache[F.vanishing_nodes] = self.apt.span_stabilizer_linear_parts(F, self.radius).elements
        return cache[F.vanishing_nodes]

    def embedding_count(self, F: Facet, members, w: Perm) -> EmbeddingCount:
        if not self.spec.simply_connected:
            raise NotSimplyConnected(
                "embedding counts are only exact for simply connected groups; refusing"
            )
        W, fr = self.W, self.fr
        members = frozenset(members)
        w_theta = generate(W, [W.reflection(r) for r in members])
        tw = twisted_subgroup(W, members, w, fr, w_theta).elements
        for x in tw:
            for u in w_theta:
                assert mul(x, mul(u, inv(x))) in w_theta, "W_theta is not normal"
        assert w_theta <= tw
        centralizer = twisted_subgroup(W, frozenset(), w, fr, frozenset({W.identity})).elements
        wf = self.W_of_F(F) & normalizer_of_subsystem(W, members).elements & centralizer
        prod = {mul(a, b) for a in wf for b in w_theta}
        count, rem = divmod(len(tw), len(prod))
        assert rem == 0 and count >= 1
        return EmbeddingCount(Triple(F, members, w), count, len(tw), len(wf), len(w_theta), len(prod))


def enumerate_I_classes(spec: GroupSpec) -> list[StableClass]:
    return StableEngine(spec).classes


def reduce_to_I(spec: GroupSpec, members, w: Perm):
    return StableEngine(spec).reduce_to_I(members, w)


def embedding_count(spec: GroupSpec, F: Facet, members, w: Perm) -> EmbeddingCount:
    return StableEngine(spec).embedding_count(F, members, w)


@dataclass(frozen=True)
class EmbeddingRow:
    klass: int
    facet: Facet
    theta: tuple[int, ...]
    w: Perm
    stable_id: int
    count: EmbeddingCount


def embedding_table(spec: GroupSpec, radius: int = DEFAULT_RADIUS, tori: TripleEngine | None = None) -> list[EmbeddingRow]:
    tori = tori or engine(spec, radius)
    st = StableEngine(spec, radius)
    rows = []
    for k, c in enumerate(tori.classes):
        rows.append(
            EmbeddingRow(k, c.facet, c.theta, c.w, st.stable_class_of(c.members, c.w), st.embedding_count(c.facet, c.members, c.w))
        )
    return rows
