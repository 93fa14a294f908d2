"""Affine root system, fundamental alcove, facets and Frobenius-fixed spans.

Points of the apartment are written in simple-root coordinates, using the
invariant form to identify the apartment with the root space.  A root
``gamma`` evaluates on a point ``x`` as ``(gamma, x)``.  Extended-diagram node
0 carries the affine simple root ``1 - (highest root)``; node ``i >= 1`` is the
simple root ``alpha_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from scipy.cluster.hierarchy import DisjointSet

from . import _linalg as la
from .root_system import RootSystem
from .weyl import Perm, Twist, WeylGroup, WeylSubgroup, act, inv, mul, reflection_subgroup

DEFAULT_RADIUS = 4


@dataclass(frozen=True)
class AffineRoot:
    gradient: int
    level: int

    def __call__(self, rs: RootSystem, x: Sequence) -> Fraction:
        return rs.evaluate(self.gradient, x) + self.level


@dataclass(frozen=True)
class AffineElement:
    """x -> linear(x) + translation, translation in coroot coordinates."""

    linear: Perm
    translation: tuple[int, ...]


@dataclass(frozen=True)
class Facet:
    vanishing_nodes: frozenset[int]
    barycenter: tuple[Fraction, ...]
    dim: int
    fr_fixed_dim: int
    phi: frozenset[int]
    span_dir: tuple[tuple[Fraction, ...], ...]

    @property
    def key(self) -> tuple:
        """Sort key: lower dimension first, then avoid node 0, then nodes."""
        return (self.dim, 0 in self.vanishing_nodes, tuple(sorted(self.vanishing_nodes)))

    def label(self) -> str:
        return "{" + ",".join(str(i) for i in sorted(self.vanishing_nodes)) + "}"


class Apartment:
    """Everything about one root system with one Frobenius node permutation."""

    def __init__(self, rs: RootSystem, node_perm: Sequence[int], W: WeylGroup | None = None):
        self.rs = rs
        self.W = W or WeylGroup(rs)
        ell = rs.rank
        self.nodes = tuple(range(ell + 1))
        self.node_perm = tuple(node_perm)
        if sorted(self.node_perm) != list(self.nodes):
            raise ValueError("node_perm is not a permutation of the extended nodes")
        if not self._preserves_affine_cartan():
            raise ValueError("node_perm does not preserve the affine Cartan matrix")
        self.vertices = self._vertices()
        self.L, self.displacement = self._fr_affine()
        self.fr = Twist(self.W, self.W.from_matrix(self.L))
        self._check_walls()

    # -- extended diagram -------------------------------------------------

    @cached_property
    def gradients(self) -> tuple[int, ...]:
        rs = self.rs
        return (rs.neg[rs.highest_root],) + rs.simple

    @cached_property
    def affine_simple_roots(self) -> tuple[AffineRoot, ...]:
        return (AffineRoot(self.gradients[0], 1),) + tuple(AffineRoot(i, 0) for i in self.rs.simple)

    @cached_property
    def affine_cartan(self) -> tuple[tuple[Fraction, ...], ...]:
        g = self.gradients
        return tuple(tuple(self.rs.pairing(g[j], g[i]) for j in self.nodes) for i in self.nodes)

    def _preserves_affine_cartan(self) -> bool:
        a, p = self.affine_cartan, self.node_perm
        return all(a[p[i]][p[j]] == a[i][j] for i in self.nodes for j in self.nodes)

    def psi(self, i: int, x: Sequence) -> Fraction:
        return self.affine_simple_roots[i](self.rs, x)

    def _vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        rs = self.rs
        ginv = la.inverse(rs.gram)
        out = [tuple(Fraction(0) for _ in rs.simple)]
        for i in rs.simple:
            e = [Fraction(int(j == i), rs.marks[i]) for j in rs.simple]
            out.append(la.matvec(ginv, e))
        return tuple(out)

    def _fr_affine(self):
        # Fr(v_i) = v_{perm(i)} determines the affine map
        v, p = self.vertices, self.node_perm
        origin = v[p[0]]
        src = [v[i] for i in self.nodes[1:]]
        dst = [la.sub(v[p[i]], origin) for i in self.nodes[1:]]
        n = self.rs.rank
        src_m = [[src[j][i] for j in range(n)] for i in range(n)]
        dst_m = [[dst[j][i] for j in range(n)] for i in range(n)]
        L = [[x for x in row] for row in _matmul(dst_m, la.inverse(src_m))]
        if any(x.denominator != 1 for row in L for x in row):
            raise ValueError("node_perm does not induce a lattice automorphism")
        return [[int(x) for x in row] for row in L], origin

    def _check_walls(self):
        for i in self.nodes:
            for vtx in self.nodes:
                x = self.fr_apply(self.vertices[vtx])
                if self.psi(self.node_perm[i], x) != self.psi(i, self.vertices[vtx]):
                    raise ValueError("Frobenius does not permute alcove walls as declared")

    @cached_property
    def fr_order(self) -> int:
        p, k, q = self.node_perm, 1, self.node_perm
        while q != self.nodes:
            q = tuple(p[i] for i in q)
            k += 1
        return k

    def fr_apply(self, x: Sequence) -> tuple[Fraction, ...]:
        return la.add(la.matvec(self.L, x), self.displacement)

    # -- coroot lattice ---------------------------------------------------

    @cached_property
    def coroot_scale(self) -> tuple[Fraction, ...]:
        """alpha_i^vee = scale_i * alpha_i in root coordinates."""
        return tuple(Fraction(2, d) for d in self.rs.lengths)

    def translation_vector(self, n: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(s * k for s, k in zip(self.coroot_scale, n))

    def apply(self, g: AffineElement, x: Sequence) -> tuple[Fraction, ...]:
        m = self.W.matrix(g.linear)
        return la.add(la.matvec(m, x), self.translation_vector(g.translation))

    def compose(self, g: AffineElement, h: AffineElement) -> AffineElement:
        m = self.W.matrix(g.linear)
        t = la.add(self.translation_vector(g.translation), la.matvec(m, self.translation_vector(h.translation)))
        n = tuple(int(x / s) for x, s in zip(t, self.coroot_scale))
        return AffineElement(mul(g.linear, h.linear), n)

    def is_fr_fixed(self, g: AffineElement) -> bool:
        if self.fr(g.linear) != g.linear:
            return False
        t = self.translation_vector(g.translation)
        m = self.W.matrix(g.linear)
        lhs = la.sub(la.matvec(self.L, t), t)
        rhs = la.sub(la.matvec(m, self.displacement), self.displacement)
        return lhs == rhs

    # -- facets -----------------------------------------------------------

    def _make_facet(self, S: frozenset[int]) -> Facet:
        rs = self.rs
        rest = [i for i in self.nodes if i not in S]
        bary = tuple(sum((self.vertices[i][k] for i in rest), Fraction(0)) / len(rest) for k in range(rs.rank))
        direction = la.span_basis([la.sub(self.vertices[i], self.vertices[rest[0]]) for i in rest[1:]])
        fixed = la.intersect(direction, self.fr.fixed_space, rs.rank) if direction else []
        phi = frozenset(i for i in range(len(rs.roots)) if rs.evaluate(i, bary).denominator == 1)
        return Facet(S, bary, rs.rank - len(S), len(fixed), phi, tuple(fixed))

    @cached_property
    def facets(self) -> tuple[Facet, ...]:
        """Fr-stable faces of the closed alcove; their barycenters are Fr-fixed."""
        p = self.node_perm
        out = []
        for k in range(len(self.nodes)):
            for S in map(frozenset, combinations(self.nodes, k)):
                if frozenset(p[i] for i in S) == S:
                    out.append(self._make_facet(S))
        return tuple(sorted(out, key=lambda f: f.key))

    def facet(self, nodes: Iterable[int]) -> Facet:
        S = frozenset(nodes)
        for f in self.facets:
            if f.vanishing_nodes == S:
                return f
        raise KeyError(f"no Fr-stable facet with nodes {sorted(S)}")

    def facet_of_point(self, x: Sequence) -> Facet | None:
        vals = [self.psi(i, x) for i in self.nodes]
        if any(v < 0 for v in vals):
            return None
        return self._make_facet(frozenset(i for i, v in enumerate(vals) if v == 0))

    def weyl_group_of(self, F: Facet) -> WeylSubgroup:
        return reflection_subgroup(self.W, F.phi)

    # -- affine searches --------------------------------------------------

    def _translations(self, M: Perm, p, dir_src, p2, dir_dst, fr_fixed: bool, radius: int, first: bool):
        """Coroot vectors n (|n_i| <= radius) with (M, n) mapping the affine
        space p + dir_src onto p2 + dir_dst; optionally Fr-fixed."""
        rs = self.rs
        n = rs.rank
        m = self.W.matrix(M)
        image = la.span_basis([la.matvec(m, v) for v in dir_src])
        if image != la.span_basis(dir_dst):
            return []
        rows, rhs = [], []
        scale = self.coroot_scale
        target = la.sub(p2, la.matvec(m, p))
        ann = la.nullspace([list(v) for v in dir_dst], n) if dir_dst else [
            tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
        ]
        for a in ann:
            rows.append([a[i] * scale[i] for i in range(n)])
            rhs.append(la.dot(a, target))
        if fr_fixed:
            if self.fr(M) != M:
                return []
            lmi = [[self.L[i][j] - (i == j) for j in range(n)] for i in range(n)]
            d = self.displacement
            want = la.sub(la.matvec(m, d), d)
            for i in range(n):
                rows.append([lmi[i][j] * scale[j] for j in range(n)])
                rhs.append(want[i])
        return _lattice_points(rows, rhs, n, radius, first)

    def maps_span(self, M: Perm, F: Facet, G: Facet, fr_fixed=True, radius=DEFAULT_RADIUS) -> bool:
        return bool(self._translations(M, F.barycenter, F.span_dir, G.barycenter, G.span_dir, fr_fixed, radius, True))

    def facet_equivalence_classes(self, radius: int = DEFAULT_RADIUS) -> list[list[Facet]]:
        ds = DisjointSet(range(len(self.facets)))
        for a, b in combinations(range(len(self.facets)), 2):
            F, G = self.facets[a], self.facets[b]
            if F.fr_fixed_dim != G.fr_fixed_dim or len(F.phi) != len(G.phi):
                continue
            if any(self.maps_span(M, F, G, True, radius) for M in self.fr_centralizer):
                ds.merge(a, b)
        classes = [sorted((self.facets[i] for i in s), key=lambda f: f.key) for s in ds.subsets()]
        return sorted(classes, key=lambda c: c[0].key)

    @cached_property
    def fr_centralizer(self) -> tuple[Perm, ...]:
        lp, simple = self.fr.lperm, self.rs.simple
        # linear maps agree once they agree on a basis
        return tuple(w for w in self.W if all(lp[w[i]] == w[lp[i]] for i in simple))

    def span_stabilizer_linear_parts(self, F: Facet, radius: int = DEFAULT_RADIUS, fr_fixed=False) -> WeylSubgroup:
        pool = self.fr_centralizer if fr_fixed else self.W.elements
        out = frozenset(M for M in pool if self.maps_span(M, F, F, fr_fixed, radius))
        for a in out:
            for b in out:
                assert mul(a, b) in out, "span stabilizer is not a group"
        return WeylSubgroup(out)

    def span_maps(self, F: Facet, G: Facet, radius: int = DEFAULT_RADIUS) -> list[Perm]:
        """Linear parts of Fr-fixed affine elements carrying A(F) onto A(G)."""
        return [M for M in self.fr_centralizer if self.maps_span(M, F, G, True, radius)]

    def fr_fixed_elements(self, radius: int = DEFAULT_RADIUS) -> list[AffineElement]:
        n = self.rs.rank
        zero = tuple(Fraction(0) for _ in range(n))
        full = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
        out = []
        for M in self.fr_centralizer:
            for t in self._translations(M, zero, full, zero, full, True, radius, False):
                out.append(AffineElement(M, t))
        return out


def _matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))] for i in range(len(a))]


def _lattice_points(rows, rhs, n, radius, first):
    """Integer solutions of rows.x = rhs with |x_i| <= radius."""
    if not rows:
        pts = product(range(-radius, radius + 1), repeat=n)
        if first:
            return [tuple([0] * n)]
        return [tuple(p) for p in pts]
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = la.rref(aug)
    if n in piv:
        return []
    free = [c for c in range(n) if c not in piv]
    out = []
    for vals in product(range(-radius, radius + 1), repeat=len(free)):
        x = [Fraction(0)] * n
        for c, v in zip(free, vals):
            x[c] = Fraction(v)
        ok = True
        for row, p in zip(red, piv):
            val = row[n] - sum(row[c] * x[c] for c in free)
            if val.denominator != 1 or abs(val) > radius:
                ok = False
                break
            x[p] = val
        if ok:
            out.append(tuple(int(v) for v in x))
            if first:
                return out
    return out
