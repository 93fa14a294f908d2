"""Unramified twisted generalized Levis: elliptic triples (F, Xi, w) with Xi
a base of a quasi-closed subsystem, and the containment test between classes."""

from __future__ import annotations

from functools import cached_property

from .affine import DEFAULT_RADIUS
from .catalog import GroupSpec
from .root_system import enumerate_quasi_closed, normalize_char, parabolic_subsystems
from .tori import TripleClass, TripleEngine
from .weyl import act, inv, mul


class GenEngine(TripleEngine):
    def __init__(self, spec: GroupSpec, char=None, radius: int = DEFAULT_RADIUS):
        self.char = normalize_char(spec.residue_char if char is None else char)
        family = [s.members for s in enumerate_quasi_closed(spec.apartment.rs, self.char)]
        super().__init__(spec, family, radius)

    @cached_property
    def parabolic(self) -> frozenset:
        return frozenset(parabolic_subsystems(self.W.rs))

    def is_generalized(self, c: TripleClass) -> bool:
        return c.members not in self.parabolic

    def minus_tori(self) -> list[TripleClass]:
        return [c for c in self.classes if self.is_generalized(c)]

    def contains(self, a: int, b: int) -> bool:
        """Does a rational conjugate of class a sit inside class b?"""
        A, B = self.classes[a], self.classes[b]
        for ta in A.triples:
            F = ta.facet
            wf = self.W_F(F)
            for tb in B.triples:
                if not tb.facet.vanishing_nodes <= F.vanishing_nodes:
                    continue  # F must lie in the closure of tb.facet
                if ta.members <= tb.members and ta.w == tb.w:
                    return True  # Xi' = Xi~ already works
                for n in wf:
                    phi2 = act(n, tb.members)
                    if not ta.members <= phi2:
                        continue
                    x = mul(inv(ta.w), mul(self.fr(n), mul(tb.w, inv(n))))
                    if x in wf and x in self.W_of(phi2):
                        return True
        return False

    @cached_property
    def containment(self) -> list[tuple[int, int]]:
        n = len(self.classes)
        return [(a, b) for a in range(n) for b in range(n) if self.contains(a, b)]


def enumerate_gen_elliptic(spec: GroupSpec, char=None, radius: int = DEFAULT_RADIUS) -> list[TripleClass]:
    return GenEngine(spec, char, radius).classes


def gen_minus_tori(spec: GroupSpec, char=None, radius: int = DEFAULT_RADIUS) -> list[TripleClass]:
    return GenEngine(spec, char, radius).minus_tori()


def contains(spec: GroupSpec, a: int, b: int, char=None) -> bool:
    return GenEngine(spec, char).contains(a, b)
