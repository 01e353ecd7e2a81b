"""Dense linear algebra mod p on small matrices (lists of int rows).

Everything here operates on plain Python lists; dimensions stay in the dozens,
so clarity beats vectorization. Matrices act on column vectors: (A @ v)[i] =
sum_j A[i][j] * v[j].
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]
Vector = list[int]


def identity(d: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(d)] for i in range(d)]


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int], p: int) -> Vector:
    return [sum(ai * vi for ai, vi in zip(row, v)) % p for row in a]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int) -> Matrix:
    cols = len(b[0]) if b else 0
    return [
        [sum(row[k] * b[k][j] for k in range(len(b))) % p for j in range(cols)]
        for row in a
    ]


def mat_pow(a: Sequence[Sequence[int]], k: int, p: int) -> Matrix:
    d = len(a)
    out = identity(d)
    base = [list(r) for r in a]
    while k:
        if k & 1:
            out = mat_mul(out, base, p)
        base = mat_mul(base, base, p)
        k >>= 1
    return out


def mat_add_scaled_identity(a: Sequence[Sequence[int]], c: int, p: int) -> Matrix:
    return [
        [(e + (c if i == j else 0)) % p for j, e in enumerate(row)]
        for i, row in enumerate(a)
    ]


def poly_of_matrix(coeffs: Sequence[int], a: Sequence[Sequence[int]], p: int) -> Matrix:
    """Evaluate sum_i coeffs[i] * a^i (Horner)."""
    d = len(a)
    out = [[0] * d for _ in range(d)]
    for c in reversed(coeffs):
        out = mat_mul(out, a, p)
        out = mat_add_scaled_identity(out, c, p)
    return out


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot column indices)."""
    work = [list(r) for r in rows]
    if not work:
        return [], []
    cols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][c] % p:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = pow(work[r][c], -1, p)
        work[r] = [(e * inv) % p for e in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] % p:
                f = work[i][c]
                work[i] = [(e - f * g) % p for e, g in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(rows, p)[0])


def reduce_vector(basis: Sequence[Sequence[int]], pivots: Sequence[int],
                  v: Sequence[int], p: int) -> Vector:
    """Reduce v against an rref basis; the result is zero iff v is in the span."""
    out = [e % p for e in v]
    for row, c in zip(basis, pivots):
        f = out[c]
        if f:
            out = [(e - f * g) % p for e, g in zip(out, row)]
    return out


def in_span(basis: Sequence[Sequence[int]], pivots: Sequence[int],
            v: Sequence[int], p: int) -> bool:
    return not any(reduce_vector(basis, pivots, v, p))


def kernel_basis(a: Sequence[Sequence[int]], cols: int, p: int) -> Matrix:
    """Basis of {v : A v = 0} for an (anything x cols) matrix A."""
    red, pivots = rref(a, p)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for row, c in zip(red, pivots):
            v[c] = (-row[f]) % p
        basis.append(v)
    return basis


def cyclic_span(a: Sequence[Sequence[int]], v: Sequence[int], p: int) -> Matrix:
    """rref basis of span{v, Av, A^2 v, ...}."""
    basis: Matrix = []
    pivots: list[int] = []
    cur = [e % p for e in v]
    while True:
        red = reduce_vector(basis, pivots, cur, p)
        if not any(red):
            return basis
        basis.append(red)
        basis, pivots = rref(basis, p)
        cur = mat_vec(a, cur, p)


def span_join(b1: Sequence[Sequence[int]], b2: Sequence[Sequence[int]], p: int) -> Matrix:
    joined, _ = rref(list(b1) + list(b2), p)
    return joined


def transpose(a: Sequence[Sequence[int]], cols: int) -> Matrix:
    return [[row[j] for row in a] for j in range(cols)]


def quotient_projection(w_basis: Sequence[Sequence[int]], d: int, p: int):
    """Coordinates on F_p^d / span(w_basis).

    Returns (q, project) where q is the quotient dimension and project maps a
    length-d vector to its length-q coordinate vector.
    """
    red, pivots = rref(w_basis, p)
    pivot_set = set(pivots)
    free = [c for c in range(d) if c not in pivot_set]

    def project(v: Sequence[int]) -> Vector:
        r = reduce_vector(red, pivots, v, p)
        return [r[c] for c in free]

    return len(free), project, free
