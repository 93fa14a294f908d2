"""Small exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction``; vectors are tuples.  Everything
here is dimension <= 8, so clarity wins over speed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]


def vec(xs: Iterable) -> Vec:
    return tuple(Fraction(x) for x in xs)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence, b: Sequence) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> Vec:
    return tuple(c * x for x in a)


def matvec(m: Sequence[Sequence], v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in m)


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vec]:
    """Basis of {x : rows . x = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, piv):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def span_basis(vectors: Sequence[Sequence]) -> list[Vec]:
    """A canonical (reduced echelon) basis of the span."""
    if not vectors:
        return []
    red, _ = rref(vectors)
    return [tuple(r) for r in red]


def same_span(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    return span_basis(a) == span_basis(b)


def in_span(v: Sequence, basis: Sequence[Sequence]) -> bool:
    if all(x == 0 for x in v):
        return True
    return rank(list(basis) + [list(v)]) == rank(basis)


def intersect(a: Sequence[Sequence], b: Sequence[Sequence], n: int) -> list[Vec]:
    """Basis of span(a) ∩ span(b) inside Q^n."""
    if not a or not b:
        return []
    # x = sum s_i a_i = sum t_j b_j
    cols = [list(v) for v in a] + [[-x for x in v] for v in b]
    sol = nullspace(transpose(cols), len(cols))
    out = []
    for s in sol:
        x = [Fraction(0)] * n
        for coef, v in zip(s[: len(a)], a):
            for k in range(n):
                x[k] += coef * v[k]
        out.append(tuple(x))
    return span_basis(out)


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in red]


def solve_affine(rows: Sequence[Sequence], rhs: Sequence) -> tuple[Vec, list[Vec]] | None:
    """Particular solution and nullspace basis of rows.x = rhs, or None."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, piv):
        x[p] = row[ncols]
    return tuple(x), nullspace(rows, ncols)
