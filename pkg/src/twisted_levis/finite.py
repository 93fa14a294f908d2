"""Twisted Levi and twisted generalized Levi classes for finite groups of Lie type.

Pairs ``(theta, w)`` with ``Fr(theta) = w theta`` (as sets of roots) are taken
up to ``theta = n theta'``, ``w = Fr(n) w' n^-1``.  Over a finite field the
Frobenius preserves a Borel subgroup, so its action on roots is first
normalized to stabilize the positive roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import sympy
from scipy.cluster.hierarchy import DisjointSet

from .catalog import GroupSpec
from .root_system import RootSystem, base_of_subsystem, enumerate_quasi_closed, span_of
from .weyl import Perm, Twist, WeylGroup, act, inv, mul


@dataclass(frozen=True)
class Descriptor:
    cartan_type: str
    twist_order_theta: int
    twist_order: int
    charpoly: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "type": self.cartan_type,
            "twist_order_theta": self.twist_order_theta,
            "twist_order": self.twist_order,
            "charpoly": list(self.charpoly),
        }


@dataclass
class ClassRecord:
    theta: tuple[int, ...]
    w: Perm
    orbit_size: int
    descriptor: Descriptor
    generalized: bool = False
    members: list = field(default_factory=list, repr=False)


def cartan_type(rs: RootSystem, members) -> str:
    """Type of a subsystem, e.g. 'A1s+A1l', 'A2', 'G2', 'T' for empty."""
    members = frozenset(members)
    if not members:
        return "T"
    base = list(base_of_subsystem(rs, members))
    comps: list[list[int]] = []
    left = set(base)
    while left:
        stack = [left.pop()]
        comp = []
        while stack:
            b = stack.pop()
            comp.append(b)
            for c in list(left):
                if rs.form(rs.roots[b], rs.roots[c]) != 0:
                    left.remove(c)
                    stack.append(c)
        comps.append(comp)
    names = []
    for comp in comps:
        r = len(comp)
        size = len(span_of(rs, comp))
        if size == r * (r + 1):
            name = f"A{r}"
            if not rs.is_simply_laced:
                name += "l" if rs.is_long(comp[0]) else "s"
        elif r == 2 and size == 8:
            name = "C2"
        elif r == 2 and size == 12:
            name = "G2"
        else:
            name = f"X{r}_{size}"
        names.append(name)
    return "+".join(sorted(names))


def describe(W: WeylGroup, fr: Twist, members, w: Perm) -> Descriptor:
    """Structural tag of a pair: type of Phi_theta and the twisted action
    w^-1 o Fr (the map that preserves Phi_theta)."""
    rs = W.rs
    sigma = mul(inv(w), fr.lperm)
    members = frozenset(members)
    k, x = 1, sigma
    while any(x[i] != i for i in members):
        x = mul(x, sigma)
        k += 1
    m = sympy.Matrix(W.matrix(sigma))
    poly = m.charpoly().all_coeffs()
    return Descriptor(cartan_type(rs, members), k, W.order(sigma), tuple(int(c) for c in poly))


def finite_twist(W: WeylGroup, fr: Twist) -> Twist:
    """The element of W.Fr stabilizing the positive roots."""
    rs = W.rs
    for u in W:
        lp = mul(u, fr.lperm)
        if all(lp[i] in rs.positive for i in rs.simple):
            return Twist(W, lp)
    raise AssertionError("no Borel-preserving twist")


def _classes(W: WeylGroup, fr: Twist, pairs: list[tuple[frozenset, Perm]], admissible) -> list[list]:
    """Partition pairs (Xi, w) under Xi' = n Xi, w' = Fr(n) w n^-1."""
    pos = {p: i for i, p in enumerate(pairs)}
    ds = DisjointSet(range(len(pairs)))
    for i, (xi, w) in enumerate(pairs):
        for n in W:
            xi2 = act(n, xi)
            if not admissible(xi2):
                continue
            j = pos[(xi2, mul(fr(n), mul(w, inv(n))))]
            ds.merge(i, j)
    return [sorted((pairs[i] for i in s), key=lambda p: pair_key(W, p)) for s in ds.subsets()]


def pair_key(W: WeylGroup, pair) -> tuple:
    xi, w = pair
    return (len(xi), tuple(sorted(xi)), W.length(w), W.word(w))


def _pairs(W: WeylGroup, fr: Twist, bases) -> list[tuple[frozenset, Perm]]:
    out = []
    for xi in bases:
        target = fr.on_roots(xi)
        for w in W:
            if act(w, xi) == target:
                out.append((xi, w))
    return out


def _records(W, fr, classes, generalized=lambda xi: False) -> list[ClassRecord]:
    recs = []
    for cls in classes:
        xi, w = cls[0]
        recs.append(
            ClassRecord(
                tuple(sorted(xi)),
                w,
                len(cls),
                describe(W, fr, span_of(W.rs, xi), w),
                generalized(xi),
                cls,
            )
        )
    return sorted(recs, key=lambda r: pair_key(W, (r.theta, r.w)))


def simple_subsets(rs: RootSystem) -> list[frozenset[int]]:
    return [frozenset(J) for k in range(rs.rank + 1) for J in combinations(rs.simple, k)]


def enumerate_IG(spec: GroupSpec) -> list[ClassRecord]:
    apt = spec.apartment
    W, fr = apt.W, finite_twist(apt.W, apt.fr)
    subsets = set(simple_subsets(W.rs))
    pairs = _pairs(W, fr, sorted(subsets, key=lambda s: (len(s), sorted(s))))
    return _records(W, fr, _classes(W, fr, pairs, subsets.__contains__))


def positive_bases(rs: RootSystem, char) -> list[frozenset[int]]:
    """Bases (inside the positive roots) of the quasi-closed subsystems."""
    return [frozenset(s.base) for s in enumerate_quasi_closed(rs, char)]


def enumerate_IGprime(spec: GroupSpec, char=None) -> list[ClassRecord]:
    apt = spec.apartment
    W, fr = apt.W, finite_twist(apt.W, apt.fr)
    rs = W.rs
    bases = positive_bases(rs, spec.residue_char if char is None else char)
    admissible = set(bases).__contains__
    pairs = _pairs(W, fr, bases)
    parabolic = {span_of(rs, J) for J in simple_subsets(rs)}

    def generalized(xi):
        # not W-conjugate to a standard Levi subsystem
        s = span_of(rs, xi)
        return not any(act(n, s) in parabolic for n in W)

    return _records(W, fr, _classes(W, fr, pairs, admissible), generalized)


def describe_class(spec: GroupSpec, rec: ClassRecord) -> Descriptor:
    apt = spec.apartment
    fr = finite_twist(apt.W, apt.fr)
    return describe(apt.W, fr, span_of(apt.rs, rec.theta), rec.w)
