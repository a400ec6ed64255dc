"""
Exact linear algebra over Q with Fraction entries.

Matrices are lists of rows.  Only what the rank and preimage computations
need: row echelon form, rank, and solving A x = b.

>>> rank([[1, 2], [2, 4]])
1
>>> solve([[1, 1], [1, -1]], [3, 1])
[Fraction(2, 1), Fraction(1, 1)]
"""

from fractions import Fraction

__all__ = ["echelon", "rank", "solve", "kernel_dim"]


def echelon(rows, ncols=None):
    """Reduced row echelon form.  Returns (matrix, pivot columns)."""
    A = [[Fraction(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank(rows):
    if not rows or not rows[0]:
        return 0
    return len(echelon(rows)[1])


def kernel_dim(rows, ncols):
    """Dimension of the kernel of a matrix with ``ncols`` columns."""
    if not rows:
        return ncols
    return ncols - rank(rows)


def solve(A, b):
    """One solution x of A x = b, or None if the system is inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = echelon(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(R, pivots):
        x[c] = row[ncols]
    return x
