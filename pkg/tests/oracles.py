"""Independent brute-force oracles used to cross-check the library.

Everything here deliberately avoids the code paths it checks: divisor searches
are exhaustive coefficient enumerations, invariant factors come from gcds of
explicitly enumerated minors, residue counting walks the actual quotient
module, and the small-group catalog is built from first-principles tables.
"""

from __future__ import annotations

import random
from itertools import combinations, product

import numpy as np

from lamprigid import (
    FieldSpec,
    FiniteGroupTable,
    FpPoly,
    PolyMatrix,
    determinant,
    poly_divmod,
)
from lamprigid.quotients import cyclic_table, direct_product_table, semidirect_table


def all_polys(field: FieldSpec, max_deg: int):
    """Every polynomial of degree <= max_deg (including zero)."""
    p = field.p
    for coeffs in product(range(p), repeat=max_deg + 1):
        yield FpPoly(field, coeffs)


def monic_polys(field: FieldSpec, deg: int):
    for tail in product(range(field.p), repeat=deg):
        yield FpPoly(field, tuple(tail) + (1,))


def brute_monic_divisors(f: FpPoly) -> list[FpPoly]:
    """All monic divisors of f, by trying every monic polynomial up to deg f."""
    assert not f.is_zero
    out = []
    for d in range(int(f.degree) + 1):
        for g in monic_polys(f.field, d):
            if g.divides(f):
                out.append(g)
    return out


def random_poly(rng: random.Random, field: FieldSpec, max_deg: int) -> FpPoly:
    deg = rng.randint(-1, max_deg)
    if deg < 0:
        return FpPoly.zero(field)
    coeffs = [rng.randrange(field.p) for _ in range(deg)] + [rng.randrange(1, field.p)]
    return FpPoly(field, tuple(coeffs))


def random_matrix(rng: random.Random, field: FieldSpec, rows: int, cols: int,
                  max_deg: int) -> PolyMatrix:
    return PolyMatrix(
        field, rows, cols,
        tuple(random_poly(rng, field, max_deg) for _ in range(rows * cols)),
    )


def determinantal_divisor_diag(m: PolyMatrix) -> list[FpPoly]:
    """Invariant factors from gcds of k x k minors, enumerated exhaustively."""
    k_max = min(m.rows, m.cols)
    field = m.field
    out: list[FpPoly] = []
    prev = FpPoly.one(field)
    for k in range(1, k_max + 1):
        gcd_k = FpPoly.zero(field)
        for rows in combinations(range(m.rows), k):
            for cols in combinations(range(m.cols), k):
                sub = PolyMatrix.from_rows(
                    field, [[m.entry(i, j) for j in cols] for i in rows])
                minor = determinant(sub)
                if minor.is_zero:
                    continue
                if gcd_k.is_zero:
                    gcd_k = minor.monic()
                else:
                    from lamprigid import poly_gcd
                    gcd_k = poly_gcd(gcd_k, minor)
        if gcd_k.is_zero:
            out.extend(FpPoly.zero(field) for _ in range(k_max - len(out)))
            break
        q, r = poly_divmod(gcd_k, prev)
        assert r.is_zero, "determinantal divisors do not divide each other"
        out.append(q.monic())
        prev = gcd_k
    return out


_RESIDUE_GRIDS: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}


def _residue_grid(p: int, d: int) -> tuple[np.ndarray, np.ndarray]:
    got = _RESIDUE_GRIDS.get((p, d))
    if got is None:
        count = p ** d
        vecs = np.zeros((count, d), dtype=np.int64)
        for j in range(d):
            vecs[:, j] = (np.arange(count) // (p ** j)) % p
        radix = p ** np.arange(d, dtype=np.int64)
        got = (vecs, radix)
        _RESIDUE_GRIDS[(p, d)] = got
    return got


def verified_residue_count(f: FpPoly) -> int:
    """Count the residues of the Laurent ring mod f by explicit enumeration.

    Representatives are all polynomials of degree < deg f. The x-action
    (companion matrix) is checked to be a bijection on them, which also
    certifies closure under x^(-1); positive powers of x computed by repeated
    action are cross-checked against direct division.
    """
    assert not f.is_zero and f.constant_term != 0
    p = f.field.p
    d = int(f.degree)
    if d == 0:
        return 1
    comp = np.zeros((d, d), dtype=np.int64)
    for j in range(d - 1):
        comp[j + 1, j] = 1
    for i in range(d):
        comp[i, d - 1] = (-f.coefficient(i)) % p
    count = p ** d
    vecs, radix = _residue_grid(p, d)
    images = (vecs @ comp.T % p) @ radix
    assert len(np.unique(images)) == count, "x-action is not a bijection on residues"
    vec = np.zeros(d, dtype=np.int64)
    vec[0] = 1
    for i in range(1, 2 * d + 1):
        vec = comp @ vec % p
        direct = poly_divmod(FpPoly.x_power(f.field, i), f)[1]
        assert list(vec) == [direct.coefficient(j) for j in range(d)], \
            "iterated x-action disagrees with direct reduction"
    return count


# --- small-group catalog (orders 1..8, complete up to isomorphism) ------------

def _s3_table() -> FiniteGroupTable:
    perms = sorted(product(range(3), repeat=3))
    perms = [p for p in perms if sorted(p) == [0, 1, 2]]
    index = {p: i for i, p in enumerate(perms)}
    mul = np.zeros((6, 6), dtype=np.int32)
    for a in perms:
        for b in perms:
            composed = tuple(a[b[i]] for i in range(3))
            mul[index[a], index[b]] = index[composed]
    return FiniteGroupTable.build(mul)


def _q8_table() -> FiniteGroupTable:
    # basis symbols e, i, j, k with sign; index = symbol * 2 + (sign < 0)
    rules = {
        ("e", "e"): (1, "e"), ("e", "i"): (1, "i"), ("e", "j"): (1, "j"), ("e", "k"): (1, "k"),
        ("i", "e"): (1, "i"), ("j", "e"): (1, "j"), ("k", "e"): (1, "k"),
        ("i", "i"): (-1, "e"), ("j", "j"): (-1, "e"), ("k", "k"): (-1, "e"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    symbols = ["e", "i", "j", "k"]
    mul = np.zeros((8, 8), dtype=np.int32)
    for si, a in enumerate(symbols):
        for sa in (1, -1):
            for sj, b in enumerate(symbols):
                for sb in (1, -1):
                    sign, sym = rules[(a, b)]
                    sign *= sa * sb
                    ia = si * 2 + (sa < 0)
                    ib = sj * 2 + (sb < 0)
                    mul[ia, ib] = symbols.index(sym) * 2 + (sign < 0)
    return FiniteGroupTable.build(mul)


def _d4_table() -> FiniteGroupTable:
    return semidirect_table(FieldSpec(2), [[0, 1], [1, 0]], 2)


def small_group_catalog() -> list[tuple[str, FiniteGroupTable]]:
    """All groups of order <= 8 up to isomorphism (14 classes)."""
    c = cyclic_table
    return [
        ("C1", c(1)),
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C2xC2", direct_product_table(c(2), c(2))),
        ("C5", c(5)),
        ("C6", c(6)),
        ("S3", _s3_table()),
        ("C7", c(7)),
        ("C8", c(8)),
        ("C4xC2", direct_product_table(c(4), c(2))),
        ("C2xC2xC2", direct_product_table(direct_product_table(c(2), c(2)), c(2))),
        ("D4", _d4_table()),
        ("Q8", _q8_table()),
    ]


def all_subgroups(table: FiniteGroupTable) -> list[frozenset[int]]:
    """Exhaustive subgroup enumeration by closing extensions one element at a time."""
    from lamprigid.quotients import subgroup_closure

    trivial = frozenset({table.identity})
    found = {trivial}
    frontier = [trivial]
    while frontier:
        sub = frontier.pop()
        for g in range(table.order):
            if g in sub:
                continue
            bigger = frozenset(int(x) for x in subgroup_closure(table, sorted(sub | {g})))
            if bigger not in found:
                found.add(bigger)
                frontier.append(bigger)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def brute_normal_subgroups(table: FiniteGroupTable) -> list[frozenset[int]]:
    out = []
    for sub in all_subgroups(table):
        members = np.array(sorted(sub), dtype=np.int64)
        conj_ok = True
        for h in range(table.order):
            conj = table.mul[table.mul[h, members], table.inverse[h]]
            if not set(int(x) for x in conj) <= sub:
                conj_ok = False
                break
        if conj_ok:
            out.append(sub)
    return out
