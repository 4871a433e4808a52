"""Exact determinant and rank over the integers and rationals.

Integer matrices go through fraction-free (Bareiss) elimination; anything with
a non-integral entry goes through Gaussian elimination on ``Fraction``. Both
pick the first nonzero entry of the current column as pivot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotSquare
from .graph import LoopWeightedGraph


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(Fraction(x) for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(f"{len(entries)} entries for a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RationalMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> RationalMatrix:
        cols = rows if cols is None else cols
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[Fraction]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(
            self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows))
        )

    def permuted(self, perm: Sequence[int]) -> RationalMatrix:
        """P A P^T, i.e. row and column ``perm[i]`` of the result is ``i`` of ``self``."""
        inv = [0] * len(perm)
        for i, p in enumerate(perm):
            inv[p] = i
        return RationalMatrix.from_rows(
            [[self[inv[i], inv[j]] for j in range(self.cols)] for i in range(self.rows)], self.cols
        )


def adjacency_matrix(g: LoopWeightedGraph) -> RationalMatrix:
    rows = [[Fraction(0)] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        rows[u][v] = rows[v][u] = Fraction(1)
    for v, w in g.loops:
        rows[v][v] = w
    return RationalMatrix.from_rows(rows, g.n)


def det_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free determinant of a square integer matrix (consumed in place)."""
    a = rows
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                # exact division is the Bareiss invariant
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1] if n else 1


def det_gauss(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by Gaussian elimination over the rationals (consumed in place)."""
    a = rows
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        akk = a[k][k]
        det *= akk
        rk = a[k]
        for i in range(k + 1, n):
            f = a[i][k] / akk
            if f:
                ri = a[i]
                for j in range(k + 1, n):
                    ri[j] -= f * rk[j]
    return det


def rank_fraction_free(rows: list[list[int]]) -> int:
    """Rank of an integer matrix using only integer row operations."""
    a = rows
    m = len(a)
    ncols = len(a[0]) if m else 0
    r, prev = 0, 1
    for c in range(ncols):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        rr = a[r]
        for i in range(r + 1, m):
            ri = a[i]
            f = ri[c]
            for j in range(c + 1, ncols):
                ri[j] = (p * ri[j] - f * rr[j]) // prev
            ri[c] = 0
        prev = p
        r += 1
        if r == m:
            break
    return r


def rank_gauss(rows: list[list[Fraction]]) -> int:
    a = rows
    m = len(a)
    ncols = len(a[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        rr = a[r]
        p = rr[c]
        for i in range(r + 1, m):
            f = a[i][c] / p
            if f:
                ri = a[i]
                for j in range(c, ncols):
                    ri[j] -= f * rr[j]
        r += 1
        if r == m:
            break
    return r


def det_exact(m: RationalMatrix) -> Fraction:
    if not m.is_square:
        raise NotSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    if m.is_integral:
        return Fraction(det_bareiss([[int(x) for x in r] for r in m.to_rows()]))
    return det_gauss(m.to_rows())


def rank_exact(m: RationalMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.is_integral:
        return rank_fraction_free([[int(x) for x in r] for r in m.to_rows()])
    return rank_gauss(m.to_rows())


def det_graph(g: LoopWeightedGraph) -> Fraction:
    return det_exact(adjacency_matrix(g))


def rank_graph(g: LoopWeightedGraph) -> int:
    return rank_exact(adjacency_matrix(g))


def nullity(g: LoopWeightedGraph) -> int:
    return g.n - rank_graph(g)


def is_singular(g: LoopWeightedGraph) -> bool:
    return det_graph(g) == 0
