"""Exact Gaussian elimination over a field (raw values, see :mod:`nilfit.fields`)."""

from __future__ import annotations

from typing import List, Sequence


def row_echelon(rows: Sequence[Sequence], F) -> tuple:
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    M: List[list] = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(v, inv) for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence], F) -> int:
    return len(row_echelon(rows, F)[1])


def nullspace(rows: Sequence[Sequence], F, ncols: int | None = None) -> list:
    """Basis of ``{v : rows · v = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    R, pivots = row_echelon(rows, F) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for row, pc in zip(R, pivots):
            v[pc] = F.neg(row[fc])
        basis.append(tuple(v))
    return basis


def normalize_projective(v: Sequence, F) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    for c in v:
        if c:
            inv = F.inv(c)
            return tuple(F.mul(x, inv) for x in v)
    raise ValueError("the zero vector is not a projective point")


def dot(u: Sequence, v: Sequence, F):
    total = F.zero
    for a, b in zip(u, v):
        if a and b:
            total = F.add(total, F.mul(a, b))
    return total
