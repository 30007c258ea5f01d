"""Exact integer linear algebra on lists of Python ints.

Row-style Hermite normal form, integer kernels and Smith invariant factors.
Everything stays in ``int`` so torsion is never hidden by a rational shortcut.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def _echelon(rows: Matrix, ncols: int) -> tuple[Matrix, list[int]]:
    """In-place row echelon form over the first ``ncols`` columns.

    Only unimodular row operations are used, so any extra columns carried
    along record the transformation. Returns the rows and the pivot columns.
    """
    m = len(rows)
    r = 0
    pivots = []
    for j in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if rows[i][j]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(rows[i][j]))
            rows[r], rows[k] = rows[k], rows[r]
            piv = rows[r][j]
            done = True
            for i in range(r + 1, m):
                a = rows[i][j]
                if a:
                    q = a // piv
                    if q:
                        ri, rr = rows[i], rows[r]
                        rows[i] = [x - q * y for x, y in zip(ri, rr)]
                    if rows[i][j]:
                        done = False
            if done:
                break
        if any(rows[i][j] for i in range(r, m)):
            if rows[r][j] < 0:
                rows[r] = [-x for x in rows[r]]
            piv = rows[r][j]
            for i in range(r):
                q = rows[i][j] // piv
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
            pivots.append(j)
            r += 1
    return rows, pivots


def hnf(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Hermite normal form basis of the row lattice (zero rows dropped)."""
    rows = [list(map(int, r)) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    out, pivots = _echelon(rows, ncols)
    return out[: len(pivots)]


def rank(rows: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    return len(hnf(rows, ncols))


def left_kernel(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """A lattice basis of ``{c in Z^m : c . M = 0}``, in Hermite normal form."""
    m = len(rows)
    if m == 0:
        return []
    aug = [list(map(int, r)) + [1 if i == k else 0 for k in range(m)] for i, r in enumerate(rows)]
    aug, pivots = _echelon(aug, ncols)
    kernel = [row[ncols:] for row in aug[len(pivots):]]
    return hnf(kernel, m)


def right_kernel(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """A lattice basis of ``{v in Z^n : M v = 0}``."""
    transposed = [[int(rows[i][j]) for i in range(len(rows))] for j in range(ncols)]
    if not rows:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    return left_kernel(transposed, len(rows))


def reduce_vector(basis: Matrix, v: Sequence[int]) -> list[int]:
    """Reduce ``v`` against an HNF basis; the result is zero iff ``v`` is in the lattice."""
    v = list(v)
    for row in basis:
        j = next(k for k, x in enumerate(row) if x)
        q = v[j] // row[j]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def coordinates(basis: Matrix, v: Sequence[int]) -> list[int]:
    """Integer coordinates of ``v`` in an HNF basis; ValueError if ``v`` is outside the lattice."""
    v = list(v)
    out = []
    for row in basis:
        j = next(k for k, x in enumerate(row) if x)
        q, rem = divmod(v[j], row[j])
        if rem:
            raise ValueError("vector is not in the lattice")
        out.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        raise ValueError("vector is not in the lattice")
    return out


def lattice_contains(basis: Matrix, v: Sequence[int]) -> bool:
    return not any(reduce_vector(basis, v))


def _smith(rows: Sequence[Sequence[int]], ncols: int | None, track: bool):
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    # w holds the inverse of the accumulated column transform
    w = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if track else None

    def swap_cols(j1, j2):
        if j1 == j2:
            return
        for row in a:
            row[j1], row[j2] = row[j2], row[j1]
        if w is not None:
            w[j1], w[j2] = w[j2], w[j1]

    def sub_col(j, t, q):
        for row in a:
            row[j] -= q * row[t]
        if w is not None:
            w[t] = [x + q * y for x, y in zip(w[t], w[j])]

    out = []
    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        a[t], a[i0] = a[i0], a[t]
        swap_cols(t, j0)
        while True:
            piv = a[t][t]
            changed = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // piv
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if a[t][j]:
                    sub_col(j, t, a[t][j] // piv)
                    if a[t][j]:
                        changed = True
            if changed:
                entries = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
                entries += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
                _, i0, j0 = min(entries)
                a[t], a[i0] = a[i0], a[t]
                swap_cols(t, j0)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % piv), None
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        out.append(abs(a[t][t]))
        t += 1
    return out, w


def smith_invariants(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of the matrix."""
    return _smith(rows, ncols, False)[0]


def cokernel_generators(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Fewest vectors that, together with the row lattice, span ``Z^ncols``.

    With ``A V = U D`` in Smith form, the row lattice is spanned by
    ``d_i * (row i of V^-1)``; the rows with ``d_i != 1`` are what is missing.
    """
    inv, w = _smith(rows, ncols, True)
    return [w[i] for i in range(ncols) if i >= len(inv) or inv[i] != 1]


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
