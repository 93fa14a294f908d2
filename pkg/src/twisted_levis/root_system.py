"""Finite root systems in simple-root coordinates, and their subsystems.

Roots are integer vectors in the basis of simple roots.  The ambient
symmetric form is rational, so coroots, reflections and pairings stay exact.
Root indices follow a fixed global order: positive roots by height, then
negative roots by height, each block ordered so that simple roots come first
in the order of the Dynkin labelling.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable

SCHEMA_VERSION = 1


def _cartan(label: str) -> tuple[str, int, list[list[int]], list[int]]:
    """Cartan matrix a[i][j] = <alpha_j, alpha_i^vee> and squared lengths."""
    m = re.fullmatch(r"([ABCDG])_?(\d+)", label.strip())
    if not m:
        raise ValueError(f"unsupported root system label: {label!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "A" and 1 <= n <= 8:
        a = [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]
        return f"A_{n}", n, a, [2] * n
    if kind == "C" and n == 2:
        # alpha short, beta long, <beta, alpha^vee> = -2
        return "C_2", 2, [[2, -2], [-1, 2]], [1, 2]
    if kind == "G" and n == 2:
        # alpha short, beta long, <beta, alpha^vee> = -3
        return "G_2", 2, [[2, -3], [-1, 2]], [1, 3]
    raise ValueError(f"unsupported root system label: {label!r}")


@dataclass(frozen=True)
class RootSystem:
    cartan_label: str
    cartan_matrix: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...]
    roots: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    @property
    def positive_root_count(self) -> int:
        return len(self.roots) // 2

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        n = self.rank
        return tuple(
            tuple(Fraction(self.cartan_matrix[i][j] * self.lengths[i], 2) for j in range(n))
            for i in range(n)
        )

    def form(self, x, y) -> Fraction:
        g = self.gram
        gy = [sum((g[i][j] * y[j] for j in range(self.rank)), Fraction(0)) for i in range(self.rank)]
        return sum((a * b for a, b in zip(x, gy)), Fraction(0))

    @cached_property
    def covectors(self) -> tuple[tuple[Fraction, ...], ...]:
        """G.root for each root, so that (root, x) = covector . x."""
        g = self.gram
        return tuple(
            tuple(sum((g[i][j] * r[j] for j in range(self.rank)), Fraction(0)) for i in range(self.rank))
            for r in self.roots
        )

    def evaluate(self, i: int, x) -> Fraction:
        """(root i, x): the value of root i at an apartment point."""
        return sum((a * b for a, b in zip(self.covectors[i], x)), Fraction(0))

    @cached_property
    def simple(self) -> tuple[int, ...]:
        return tuple(range(self.rank))

    @cached_property
    def positive(self) -> frozenset[int]:
        return frozenset(range(self.positive_root_count))

    @cached_property
    def neg(self) -> tuple[int, ...]:
        return tuple(self.index[tuple(-c for c in r)] for r in self.roots)

    @cached_property
    def highest_root(self) -> int:
        return max(self.positive, key=lambda i: (sum(self.roots[i]), self.roots[i]))

    @cached_property
    def norms(self) -> tuple[Fraction, ...]:
        return tuple(self.form(r, r) for r in self.roots)

    @cached_property
    def is_simply_laced(self) -> bool:
        return len(set(self.norms)) == 1

    def is_long(self, i: int) -> bool:
        return self.norms[i] == max(self.norms)

    def pairing(self, i: int, j: int) -> Fraction:
        """<root i, (root j)^vee>."""
        return 2 * self.evaluate(j, self.roots[i]) / self.norms[j]

    def add(self, i: int, j: int) -> int | None:
        s = tuple(a + b for a, b in zip(self.roots[i], self.roots[j]))
        return self.index.get(s)

    @cached_property
    def _reflection_table(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for j, rj in enumerate(self.roots):
            row = []
            for i, ri in enumerate(self.roots):
                c = self.pairing(i, j)
                row.append(self.index[tuple(int(a - c * b) for a, b in zip(ri, rj))])
            out.append(tuple(row))
        return tuple(out)

    def reflect(self, j: int, i: int) -> int:
        """Index of w_{root j}(root i)."""
        return self._reflection_table[j][i]

    def name(self, i: int, letters: str | None = None) -> str:
        """Human form such as '2a+b' (rank 2) or 'a1+a2'."""
        if letters is None:
            letters = "ab" if self.rank == 2 else None
        parts = []
        for k, c in enumerate(self.roots[i]):
            if c == 0:
                continue
            sym = letters[k] if letters else f"a{k + 1}"
            coef = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, coef + sym))
        out = "".join(s + t for s, t in parts)
        return out[1:] if out.startswith("+") else out

    def parse_root(self, text: str) -> int:
        """Inverse of :meth:`name`."""
        t = text.replace(" ", "")
        coords = [0] * self.rank
        symbols = ["a", "b"] if self.rank == 2 else [f"a{k + 1}" for k in range(self.rank)]
        for sign, coef, sym in re.findall(r"([+-]?)(\d*)([a-z]\d*)", t):
            k = symbols.index(sym)
            coords[k] += (-1 if sign == "-" else 1) * (int(coef) if coef else 1)
        try:
            return self.index[tuple(coords)]
        except KeyError:
            raise ValueError(f"{text!r} is not a root of {self.cartan_label}") from None

    @cached_property
    def marks(self) -> tuple[int, ...]:
        return self.roots[self.highest_root]

    def to_json(self) -> str:
        doc = {
            "schema": SCHEMA_VERSION,
            "cartan_label": self.cartan_label,
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
            "roots": [list(r) for r in self.roots],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "RootSystem":
        doc = json.loads(text)
        if doc.get("schema") != SCHEMA_VERSION:
            raise ValueError("unknown root system schema")
        rs = build_root_system(doc["cartan_label"])
        if [list(r) for r in rs.roots] != doc["roots"]:
            raise ValueError("root list does not match label")
        return rs


def _root_key(r: tuple[int, ...]):
    h = sum(r)
    return (h < 0, abs(h), tuple(-abs(c) for c in r))


def build_root_system(cartan_label: str) -> RootSystem:
    label, n, a, lengths = _cartan(cartan_label)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                c = sum(r[j] * a[i][j] for j in range(n))
                s = tuple(r[k] - c * (k == i) for k in range(n))
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    roots = tuple(sorted(seen, key=_root_key))
    return RootSystem(label, tuple(map(tuple, a)), tuple(lengths), roots)


# ---------------------------------------------------------------- subsystems


def span_of(rs: RootSystem, base: Iterable[int]) -> frozenset[int]:
    """Phi_theta: the closure of a base under its own reflections."""
    base = list(base)
    members = set(base) | {rs.neg[b] for b in base}
    frontier = list(members)
    while frontier:
        nxt = []
        for i in frontier:
            for b in base:
                j = rs.reflect(b, i)
                if j not in members:
                    members.add(j)
                    nxt.append(j)
        frontier = nxt
    return frozenset(members)


def is_symmetric(rs: RootSystem, members: Iterable[int]) -> bool:
    s = set(members)
    return all(rs.neg[i] in s for i in s)


def is_closed(rs: RootSystem, members: Iterable[int]) -> bool:
    s = set(members)
    for i in s:
        for j in s:
            k = rs.add(i, j)
            if k is not None and k not in s:
                return False
    return True


def closure(rs: RootSystem, members: Iterable[int]) -> frozenset[int]:
    s = set(members)
    changed = True
    while changed:
        changed = False
        for i, j in combinations(sorted(s), 2):
            k = rs.add(i, j)
            if k is not None and k not in s:
                s.add(k)
                changed = True
    return frozenset(s)


def base_of_subsystem(rs: RootSystem, members: Iterable[int]) -> tuple[int, ...]:
    """Simple system of a subsystem, positive for the ambient ordering."""
    s = frozenset(members)
    if not is_symmetric(rs, s):
        raise ValueError("members are not symmetric under negation")
    pos = [i for i in s if i in rs.positive]
    decomposable = set()
    for i, j in combinations(pos, 2):
        k = rs.add(i, j)
        if k is not None and k in s:
            decomposable.add(k)
    base = [i for i in pos if i not in decomposable]
    if span_of(rs, base) != s:
        raise ValueError("members do not form a root subsystem")
    return tuple(sorted(base))


@dataclass(frozen=True)
class RootSubsystem:
    members: frozenset[int]
    base: tuple[int, ...]
    closed: bool
    quasi_closed_chars: str | frozenset[int] = "all"

    @property
    def rank(self) -> int:
        return len(self.base)

    def quasi_closed_in(self, char) -> bool:
        if self.quasi_closed_chars == "all":
            return True
        return char in self.quasi_closed_chars


def make_subsystem(rs: RootSystem, members: Iterable[int], chars="all") -> RootSubsystem:
    m = frozenset(members)
    return RootSubsystem(m, base_of_subsystem(rs, m), is_closed(rs, m), chars)


def enumerate_theta(rs: RootSystem, W) -> frozenset[frozenset[int]]:
    """All bases w(rho), w in W, rho a subset of the simple roots."""
    out = set()
    for k in range(rs.rank + 1):
        for rho in combinations(rs.simple, k):
            for w in W.elements:
                out.add(frozenset(w[i] for i in rho))
    return frozenset(out)


def parabolic_subsystems(rs: RootSystem) -> list[frozenset[int]]:
    """W-orbits of the standard Levi subsystems, via orbit search on generators."""
    seen: set[frozenset[int]] = set()
    for k in range(rs.rank + 1):
        for rho in combinations(rs.simple, k):
            start = span_of(rs, rho)
            if start in seen:
                continue
            seen.add(start)
            frontier = [start]
            while frontier:
                nxt = []
                for s in frontier:
                    for g in rs.simple:
                        t = frozenset(rs.reflect(g, i) for i in s)
                        if t not in seen:
                            seen.add(t)
                            nxt.append(t)
                frontier = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def closed_symmetric_subsets(rs: RootSystem) -> list[frozenset[int]]:
    """All closed negation-symmetric subsets, grown pair by pair."""
    pairs = sorted(rs.positive)
    empty = frozenset()
    seen = {empty}
    frontier = [empty]
    while frontier:
        nxt = []
        for s in frontier:
            for p in pairs:
                if p in s:
                    continue
                t = closure(rs, s | {p, rs.neg[p]})
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


# Quasi-closed but not closed: the short roots of C_2 in characteristic 2 and
# the short roots of G_2 in characteristic 3.
EXCEPTIONAL_QUASI_CLOSED = {("C_2", 2): "short", ("G_2", 3): "short"}


def normalize_char(char) -> int:
    """Characteristic tag -> int, with 0 for 'zero'/'generic'."""
    if char is None:
        return 0
    if isinstance(char, int):
        return char
    t = str(char).strip().lower()
    if t in ("zero", "0", "generic", "p", "none", ""):
        return 0
    return int(t)


def enumerate_quasi_closed(rs: RootSystem, char="zero") -> list[RootSubsystem]:
    p = normalize_char(char)
    if rs.rank > 8:
        raise ValueError("rank too large for closed-subset enumeration")
    out = [make_subsystem(rs, s) for s in closed_symmetric_subsets(rs)]
    for (label, q), kind in EXCEPTIONAL_QUASI_CLOSED.items():
        if label == rs.cartan_label and q == p:
            short = frozenset(i for i in range(len(rs.roots)) if not rs.is_long(i))
            assert kind == "short" and not is_closed(rs, short)
            out.append(make_subsystem(rs, short, frozenset({q})))
    return sorted(out, key=lambda s: (len(s.members), sorted(s.members)))
