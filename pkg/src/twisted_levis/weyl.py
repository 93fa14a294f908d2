"""Weyl groups as permutation groups on root indices.

An element is a tuple ``p`` with ``p[i]`` the index of ``w(root i)``.  Its
integer matrix on simple-root coordinates is recovered from the images of the
simple roots.  Products compose right to left: ``mul(a, b)`` applies ``b``
first, so the word ``w_a w_b`` is ``mul(s_a, s_b)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import _linalg as la
from .root_system import RootSystem, base_of_subsystem, span_of

Perm = tuple[int, ...]


def mul(a: Perm, b: Perm) -> Perm:
    return tuple(a[i] for i in b)


def inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def act(w: Perm, members: Iterable[int]) -> frozenset[int]:
    return frozenset(w[i] for i in members)


class WeylGroup:
    """The full Weyl group of a root system, enumerated once."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        n = len(rs.roots)
        self.identity: Perm = tuple(range(n))
        self.gens: tuple[Perm, ...] = tuple(
            tuple(rs.reflect(s, i) for i in range(n)) for s in rs.simple
        )
        words = {self.identity: ()}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for k, g in enumerate(self.gens):
                    x = mul(w, g)
                    if x not in words:
                        words[x] = words[w] + (k,)
                        nxt.append(x)
            frontier = nxt
        self._words = words
        self.elements: tuple[Perm, ...] = tuple(sorted(words))
        self.index = {w: i for i, w in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def reflections(self) -> dict[int, Perm]:
        rs = self.rs
        return {r: tuple(rs.reflect(r, i) for i in range(len(rs.roots))) for r in rs.positive}

    def reflection(self, root: int) -> Perm:
        r = root if root in self.rs.positive else self.rs.neg[root]
        return self.reflections[r]

    def length(self, w: Perm) -> int:
        return len(self._words[w])

    def word(self, w: Perm) -> tuple[int, ...]:
        """Shortlex-first reduced word, as indices of simple reflections."""
        return self._words[w]

    def word_str(self, w: Perm) -> str:
        rs = self.rs
        letters = "ab" if rs.rank == 2 else None
        word = self.word(w)
        if not word:
            return "1"
        return " ".join(f"w_{letters[k]}" if letters else f"w_{k + 1}" for k in word)

    def parse_word(self, text: str) -> Perm:
        """Accepts 'w_a w_b', 'ab', 'c^2', 'r(2a+b)' tokens, '1'."""
        t = text.replace("w_", "").replace(" ", "")
        w = self.identity
        if t in ("", "1"):
            return w
        letters = "ab" if self.rs.rank == 2 else None
        for tok, power in self._tokens(t):
            if tok == "c":
                g = self.coxeter
            elif tok.startswith("r("):
                g = self.reflection(self.rs.parse_root(tok[2:-1]))
            elif letters and tok in letters:
                g = self.gens[letters.index(tok)]
            else:
                g = self.gens[int(tok) - 1]
            for _ in range(power):
                w = mul(w, g)
        return w

    @staticmethod
    def _tokens(t: str):
        import re

        for tok, power in re.findall(r"(c|r\([^)]*\)|[a-z]|\d)(?:\^(\d+))?", t):
            yield tok, int(power) if power else 1

    @cached_property
    def coxeter(self) -> Perm:
        w = self.identity
        for g in self.gens:
            w = mul(w, g)
        return w

    def matrix(self, w: Perm) -> list[list[int]]:
        """Integer matrix on simple-root coordinates (columns = images)."""
        rs = self.rs
        cols = [rs.roots[w[j]] for j in rs.simple]
        return [[cols[j][i] for j in range(rs.rank)] for i in range(rs.rank)]

    def from_matrix(self, m: Sequence[Sequence]) -> Perm:
        rs = self.rs
        out = []
        for r in rs.roots:
            img = tuple(int(x) for x in la.matvec(m, r))
            out.append(rs.index[img])
        return tuple(out)

    def fixed_space(self, w: Perm) -> list[la.Vec]:
        m = self.matrix(w)
        n = self.rs.rank
        return la.nullspace([[m[i][j] - (i == j) for j in range(n)] for i in range(n)], n)

    def order(self, w: Perm) -> int:
        k, x = 1, w
        while x != self.identity:
            x = mul(x, w)
            k += 1
        return k


@dataclass(frozen=True)
class WeylSubgroup:
    elements: frozenset
    generators: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, w) -> bool:
        return w in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))


def generate(W: WeylGroup, gens: Iterable[Perm]) -> frozenset:
    gens = list(gens)
    seen = {W.identity}
    frontier = [W.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def enumerate_weyl(rs: RootSystem) -> WeylGroup:
    return WeylGroup(rs)


def reflection_subgroup(W: WeylGroup, roots: Iterable[int]) -> WeylSubgroup:
    roots = sorted(set(r if r in W.rs.positive else W.rs.neg[r] for r in roots))
    return WeylSubgroup(generate(W, [W.reflection(r) for r in roots]), tuple(roots))


def normalizer_of_subsystem(W: WeylGroup, members: Iterable[int]) -> WeylSubgroup:
    s = frozenset(members)
    return WeylSubgroup(frozenset(w for w in W if act(w, s) == s))


class Twist:
    """The Frobenius acting on W through a root permutation ``lperm``."""

    def __init__(self, W: WeylGroup, lperm: Perm):
        self.W = W
        self.lperm = lperm
        self.linv = inv(lperm)
        if W.from_matrix(self.matrix) != lperm:
            raise ValueError("root permutation is not linear")

    @cached_property
    def matrix(self) -> list[list[int]]:
        rs = self.W.rs
        cols = [rs.roots[self.lperm[j]] for j in rs.simple]
        return [[cols[j][i] for j in range(rs.rank)] for i in range(rs.rank)]

    def __call__(self, w: Perm) -> Perm:
        return mul(self.lperm, mul(w, self.linv))

    def on_roots(self, members: Iterable[int]) -> frozenset[int]:
        return act(self.lperm, members)

    @cached_property
    def is_trivial(self) -> bool:
        return self.lperm == self.W.identity

    @cached_property
    def fixed_space(self) -> list[la.Vec]:
        m = self.matrix
        n = self.W.rs.rank
        return la.nullspace([[m[i][j] - (i == j) for j in range(n)] for i in range(n)], n)


def twisted_subgroup(W: WeylGroup, members, w: Perm, fr: Twist, W_theta=None) -> WeylSubgroup:
    """W_{w o Fr, theta} = {x in N_W(W_theta) : w^-1 Fr(x)^-1 w x in W_theta}."""
    s = frozenset(members)
    if fr.on_roots(s) != act(w, s):
        raise ValueError("Fr(Phi_theta) != w Phi_theta")
    if W_theta is None:
        W_theta = reflection_subgroup(W, s).elements
    wi = inv(w)
    out = frozenset(
        x
        for x in W
        if act(x, s) == s and mul(wi, mul(inv(fr(x)), mul(w, x))) in W_theta
    )
    return WeylSubgroup(out)


def twisted_classes(W: WeylGroup, fr: Twist, elements=None) -> list[list[Perm]]:
    """Orbits of w -> Fr(n) w n^-1, n in the group generated by ``elements``
    (default: all of W); each orbit sorted, orbits ordered by minimum."""
    pool = W.elements if elements is None else sorted(elements)
    actors = W.gens if elements is None else pool
    seen: set = set()
    out = []
    for w in pool:
        if w in seen:
            continue
        orbit = {w}
        frontier = [w]
        while frontier:
            nxt = []
            for x in frontier:
                for n in actors:
                    y = mul(fr(n), mul(x, inv(n)))
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        seen |= orbit
        out.append(sorted(orbit))
    return out


@dataclass(frozen=True)
class Parabolic:
    roots: frozenset[int]
    subgroup: frozenset
    fr_stable: bool
    proper: bool


def parabolic_subgroups(W: WeylGroup, phi_F: Iterable[int], fr: Twist, W_F=None) -> list[Parabolic]:
    """Parabolic subgroups of W_F (conjugates of standard ones for a base of
    Phi_F).  A parabolic P is tagged Fr-stable when it is the isotropy group in
    W_F of some nonzero Fr-fixed vector of span(Phi_F); this is the stabilizer
    of a Fr-stable facet of the local Coxeter complex."""
    rs = W.rs
    phi = frozenset(phi_F)
    if fr.on_roots(phi) != phi:
        raise ValueError("Fr does not normalize W_F")
    if W_F is None:
        W_F = reflection_subgroup(W, phi).elements
    base = base_of_subsystem(rs, phi) if phi else ()
    found: dict[frozenset, frozenset] = {}
    for k in range(len(base) + 1):
        for J in combinations(base, k):
            std = span_of(rs, J)
            for u in W_F:
                sub = act(u, std)
                if sub not in found:
                    found[sub] = reflection_subgroup(W, sub).elements
    vf = la.span_basis([rs.roots[i] for i in phi])
    fixed = la.intersect(vf, fr.fixed_space, rs.rank) if vf else []
    out = []
    for sub, grp in sorted(found.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
        # U = Fr-fixed vectors of V_F orthogonal to the roots of P
        u = _perp_within(rs, fixed, sub)
        stable = bool(u) and all(
            any(rs.evaluate(g, x) != 0 for x in u) for g in phi - sub
        )
        out.append(Parabolic(sub, grp, stable, len(grp) != len(W_F)))
    return out


def _perp_within(rs: RootSystem, space: list, roots: Iterable[int]) -> list[la.Vec]:
    """Vectors of span(space) orthogonal (for the form) to the given roots."""
    roots = list(roots)
    if not space:
        return []
    if not roots:
        return list(space)
    # x = sum c_k space_k ; require (root, x) = 0
    rows = [[rs.evaluate(r, v) for v in space] for r in roots]
    coeffs = la.nullspace(rows, len(space))
    return [tuple(sum(c * v[i] for c, v in zip(cs, space)) for i in range(rs.rank)) for cs in coeffs]


def fixes_fr_vector(W: WeylGroup, w: Perm, phi_F: Iterable[int], fr: Twist) -> bool:
    """Does w fix a nonzero Fr-fixed vector of span(Phi_F)?"""
    rs = W.rs
    vf = la.span_basis([rs.roots[i] for i in phi_F])
    if not vf:
        return False
    space = la.intersect(vf, fr.fixed_space, rs.rank)
    space = la.intersect(space, W.fixed_space(w), rs.rank) if space else []
    return bool(space)
