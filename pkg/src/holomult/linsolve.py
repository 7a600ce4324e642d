"""Exact linear algebra over the Gaussian rationals.

Gauss-Jordan elimination with exact field arithmetic: no pivoting heuristics
are needed for correctness, so pivots are chosen deterministically (first
nonzero entry scanning down each column).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .scalars import GaussianRational


@dataclass
class LinearSolution:
    """Outcome of solving A*m = b over Q(i).

    status is one of "unique", "family", "inconsistent".  For solvable
    systems, `particular` has the free variables set to zero (the minimal
    support representative) and `nullspace` is a basis for the homogeneous
    solutions, one vector per free column in column order.
    """

    status: str
    particular: Optional[List[GaussianRational]] = None
    nullspace: List[List[GaussianRational]] = field(default_factory=list)
    rank: int = 0

    @property
    def is_unique(self) -> bool:
        return self.status == "unique"

    @property
    def is_consistent(self) -> bool:
        return self.status != "inconsistent"


def _coerce_matrix(rows):
    return [[GaussianRational.coerce(x) for x in row] for row in rows]


def solve_linear(matrix, rhs) -> LinearSolution:
    """Solve A*m = b exactly; report uniqueness, a parametrized family, or inconsistency."""
    a = _coerce_matrix(matrix)
    b = [GaussianRational.coerce(x) for x in rhs]
    nrows = len(a)
    if len(b) != nrows:
        raise ValueError(f"rhs length {len(b)} != row count {nrows}")
    ncols = len(a[0]) if nrows else 0
    for row in a:
        if len(row) != ncols:
            raise ValueError("matrix rows have unequal lengths")

    zero = GaussianRational(0)
    one = GaussianRational(1)

    pivot_cols: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for rr in range(r, nrows):
            if a[rr][c]:
                pivot_row = rr
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        b[r], b[pivot_row] = b[pivot_row], b[r]
        inv = one / a[r][c]
        a[r] = [x * inv for x in a[r]]
        b[r] = b[r] * inv
        for rr in range(nrows):
            if rr != r and a[rr][c]:
                factor = a[rr][c]
                a[rr] = [x - factor * y for x, y in zip(a[rr], a[r])]
                b[rr] = b[rr] - factor * b[r]
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break

    rank = len(pivot_cols)
    for rr in range(rank, nrows):
        if b[rr]:
            return LinearSolution(status="inconsistent", rank=rank)

    particular = [zero] * ncols
    for i, c in enumerate(pivot_cols):
        particular[c] = b[i]

    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    nullspace: List[List[GaussianRational]] = []
    for fc in free_cols:
        vec = [zero] * ncols
        vec[fc] = one
        for i, c in enumerate(pivot_cols):
            vec[c] = -a[i][fc]
        nullspace.append(vec)

    status = "unique" if not free_cols else "family"
    return LinearSolution(status=status, particular=particular, nullspace=nullspace, rank=rank)


def matrix_mult(a, b):
    a = _coerce_matrix(a)
    b = _coerce_matrix(b)
    zero = GaussianRational(0)
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), zero) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def invert_matrix(matrix) -> List[List[GaussianRational]]:
    """Exact inverse of a square Gaussian-rational matrix; raises if singular."""
    a = _coerce_matrix(matrix)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    zero = GaussianRational(0)
    one = GaussianRational(1)
    aug = [row[:] + [one if i == j else zero for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        pivot_row = next((r for r in range(c, n) if aug[r][c]), None)
        if pivot_row is None:
            raise ValueError("matrix is singular")
        aug[c], aug[pivot_row] = aug[pivot_row], aug[c]
        inv = one / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                factor = aug[r][c]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def determinant(matrix) -> GaussianRational:
    """Exact determinant via fraction-friendly elimination."""
    a = _coerce_matrix(matrix)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    det = GaussianRational(1)
    for c in range(n):
        pivot_row = next((r for r in range(c, n) if a[r][c]), None)
        if pivot_row is None:
            return GaussianRational(0)
        if pivot_row != c:
            a[c], a[pivot_row] = a[pivot_row], a[c]
            det = -det
        det = det * a[c][c]
        inv = GaussianRational(1) / a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                factor = a[r][c] * inv
                a[r] = [x - factor * y for x, y in zip(a[r], a[c])]
    return det
