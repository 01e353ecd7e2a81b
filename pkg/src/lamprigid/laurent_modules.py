"""Finitely generated modules over the Laurent ring F_p[x^(+-1)].

A module is presented by a relation matrix: N = R^g / column-span(relations),
where R is the Laurent ring. Since x is a unit of R, Laurent entries can be
cleared to plain polynomials by scaling rows with powers of x, which is an
automorphism of R^g; presentations are canonicalized this way at construction.

The structure theory runs through the Smith normal form of the relation
matrix: the diagonal gives the invariant factors once x-powers (units) are
stripped, and the change-of-basis transform U materializes the abstract
isomorphism onto a product of a free module and cyclic torsion quotients.
That explicit transform is what makes the projection onto free coordinates
constructive rather than an existence statement.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg_fp as la
from .errors import InvalidM, NotNormalized, RankDeficient, ZeroDivisor
from .fppoly import FieldSpec, FpPoly, LaurentPoly, poly_gcd, x_pow_minus_one
from .polymatrix import PolyMatrix, matrix_mul, smith_normal_form, stack_columns


@dataclass(frozen=True)
class ModulePresentation:
    """N = R^g / column-span(relations); columns of the relation matrix are relators."""

    field: FieldSpec
    generators: int
    relations: PolyMatrix

    def __post_init__(self):
        if self.generators < 1:
            raise ValueError("at least one generator required")
        if self.relations.rows != self.generators:
            raise ValueError("relation matrix must have one row per generator")
        if self.relations.field != self.field:
            raise ValueError("relation matrix over a different field")

    @classmethod
    def make(cls, field: FieldSpec, generators: int,
             rows: list[list[FpPoly | LaurentPoly]] | None) -> "ModulePresentation":
        """Build from possibly-Laurent rows, clearing denominators by unit row scaling."""
        if not rows or not rows[0]:
            return cls(field, generators, PolyMatrix.zeros(field, generators, 0))
        cleared: list[list[FpPoly]] = []
        for row in rows:
            laurents = [e if isinstance(e, LaurentPoly) else LaurentPoly.from_poly(e)
                        for e in row]
            lift = -min((e.shift for e in laurents if not e.is_zero), default=0)
            lift = max(lift, 0)
            cleared.append([
                FpPoly.from_pairs(field, [(e + lift, c) for e, c in lp.terms()])
                for lp in laurents
            ])
        return cls(field, generators, PolyMatrix.from_rows(field, cleared))

    @classmethod
    def free(cls, field: FieldSpec, rank: int) -> "ModulePresentation":
        return cls(field, rank, PolyMatrix.zeros(field, rank, 0))


@dataclass(frozen=True)
class ModuleDecomposition:
    """Free rank plus the invariant-factor chain f_1 | ... | f_s.

    Each factor is monic, nonconstant, satisfies f(0) != 0 (x-powers are units
    and have been stripped), and divides the next one.
    """

    field: FieldSpec
    free_rank: int
    invariant_factors: tuple[FpPoly, ...]

    def __post_init__(self):
        assert self.free_rank >= 0
        for f in self.invariant_factors:
            assert f.is_monic and f.degree >= 1, "unit or zero invariant factor"
            assert f.constant_term != 0, "invariant factor divisible by x"
        for f, g in zip(self.invariant_factors, self.invariant_factors[1:]):
            assert f.divides(g), "invariant factor chain broken"

    @property
    def torsion_degree_sum(self) -> int:
        return sum(int(f.degree) for f in self.invariant_factors)


def decompose(pres: ModulePresentation) -> ModuleDecomposition:
    """Invariant-factor decomposition via the Smith normal form of the relations."""
    snf = smith_normal_form(pres.relations)
    nonzero = [d for d in snf.diag if not d.is_zero]
    factors = []
    for d in nonzero:
        f = d.strip_x().monic()
        if f.degree >= 1:
            factors.append(f)
    return ModuleDecomposition(
        field=pres.field,
        free_rank=pres.generators - len(nonzero),
        invariant_factors=tuple(factors),
    )


def quotient_dim(dec: ModuleDecomposition, m: int) -> int:
    """dim over F_p of N / (x^m - 1) N, computed from the decomposition.

    Equals free_rank * m plus the degree of gcd(f_i, x^m - 1) summed over the
    invariant factors.
    """
    if m < 1:
        raise InvalidM(f"m = {m}")
    xm1 = x_pow_minus_one(dec.field, m)
    total = dec.free_rank * m
    for f in dec.invariant_factors:
        total += int(poly_gcd(f, xm1).degree)
    return total


def torsion_quotient_order(f: FpPoly) -> int:
    """Order of the quotient of the Laurent ring by f: p^deg(f) for f(0) != 0."""
    if f.is_zero:
        raise ZeroDivisor("quotient by zero is the whole ring")
    if f.constant_term == 0:
        raise NotNormalized("strip the x-power unit first: f(0) must be nonzero")
    return f.field.p ** int(f.degree)


def epimorphism_to_free(dec: ModuleDecomposition, pres: ModulePresentation,
                        n: int) -> PolyMatrix:
    """Surjection N -> R^n given by an n x g matrix applied to generator coordinates.

    The map is the composition of the Smith change of basis with the projection
    onto the n free coordinates of lowest index (torsion summands go to zero).
    Verifies that the result kills every relator and that its own normal form
    has all-unit diagonal, which certifies surjectivity.
    """
    if n < 1:
        raise ValueError("target rank must be positive")
    check = decompose(pres)
    if check != dec:
        raise ValueError("decomposition does not match the presentation")
    if dec.free_rank < n:
        raise RankDeficient(
            f"free rank {dec.free_rank} < target rank {n}: no surjection onto R^{n}")
    snf = smith_normal_form(pres.relations)
    g = pres.generators
    free_coords = [i for i in range(g)
                   if i >= len(snf.diag) or snf.diag[i].is_zero]
    rows = [list(snf.u.row(i)) for i in free_coords[:n]]
    phi = PolyMatrix.from_rows(pres.field, rows)
    killed = matrix_mul(phi, pres.relations)
    assert killed.is_zero, "projection fails to kill the relations"
    phi_diag = smith_normal_form(phi).diag
    assert all((not d.is_zero) and d.strip_x().degree == 0 for d in phi_diag), \
        "projection not surjective"
    return phi


@dataclass(frozen=True)
class FiniteTruncation:
    """Explicit model of N / (x^m - 1) N as an F_p space with an x-action.

    Basis vectors are monomials x^j inside each cyclic summand of the Smith
    form, ordered by (summand index, degree). The action matrix raised to the
    m-th power is the identity, and the generator images span the whole space
    under the action-generated algebra; both facts are asserted on build.
    """

    field: FieldSpec
    m: int
    dim: int
    x_action: tuple[tuple[int, ...], ...]
    generator_images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        p = self.field.p
        d = self.dim
        assert len(self.x_action) == d and all(len(r) == d for r in self.x_action)
        if d:
            power = la.mat_pow([list(r) for r in self.x_action], self.m, p)
            assert power == la.identity(d), "x-action does not have order dividing m"
        span: list[list[int]] = []
        pivots: list[int] = []
        frontier = [list(v) for v in self.generator_images]
        while frontier:
            vec = frontier.pop()
            red = la.reduce_vector(span, pivots, vec, p)
            if any(red):
                span.append(red)
                span, pivots = la.rref(span, p)
                frontier.append(la.mat_vec(self.x_action, vec, p))
        assert len(span) == d, "generator images fail to span the truncation"


def _companion(f: FpPoly) -> list[list[int]]:
    """Multiplication-by-x matrix on F_p[x]/(f), basis 1, x, ..., x^(deg f - 1)."""
    e = int(f.degree)
    p = f.field.p
    mat = [[0] * e for _ in range(e)]
    for j in range(e - 1):
        mat[j + 1][j] = 1
    for i in range(e):
        mat[i][e - 1] = (-f.coefficient(i)) % p
    return mat


def finite_truncation(pres: ModulePresentation, m: int) -> FiniteTruncation:
    """Basis, x-action and generator images of N / (x^m - 1) N.

    Works on the Smith normal form of [relations | (x^m - 1) I], whose diagonal
    entries are the annihilators of the cyclic summands of the quotient.
    """
    if m < 1:
        raise InvalidM(f"m = {m}")
    field = pres.field
    g = pres.generators
    xm1 = x_pow_minus_one(field, m)
    scaled_identity = PolyMatrix(
        field, g, g,
        tuple(xm1 if i == j else FpPoly.zero(field) for i in range(g) for j in range(g)),
    )
    bordered = stack_columns(field, [pres.relations, scaled_identity])
    snf = smith_normal_form(bordered)
    annihilators = []
    for d in snf.diag[:g]:
        assert not d.is_zero, "truncation is not finite"
        annihilators.append(d.strip_x().monic())
    degs = [int(f.degree) for f in annihilators]
    dim = sum(degs)
    offsets = []
    pos = 0
    for e in degs:
        offsets.append(pos)
        pos += e

    action = [[0] * dim for _ in range(dim)]
    for idx, f in enumerate(annihilators):
        if degs[idx] == 0:
            continue
        block = _companion(f)
        o = offsets[idx]
        for i in range(degs[idx]):
            for j in range(degs[idx]):
                action[o + i][o + j] = block[i][j]

    images = []
    for j in range(g):
        vec = [0] * dim
        for i in range(g):
            if degs[i] == 0:
                continue
            rem = snf.u.entry(i, j) % annihilators[i]
            for k in range(degs[i]):
                vec[offsets[i] + k] = rem.coefficient(k)
        images.append(tuple(vec))

    trunc = FiniteTruncation(
        field=field,
        m=m,
        dim=dim,
        x_action=tuple(tuple(r) for r in action),
        generator_images=tuple(images),
    )
    assert dim == quotient_dim(decompose(pres), m), \
        "truncation dimension disagrees with the rank formula"
    return trunc
