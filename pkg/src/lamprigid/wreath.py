"""Group arithmetic in lamp groups (Z/pZ)^n wr Z and (Z/pZ)^n wr (Z/mZ).

Elements are pairs (lamps, shift): a finitely supported map from base indices
to vectors in F_p^n, plus a base translation. Multiplication shifts the right
factor's support by the left factor's translation before adding lamps. The
base subgroup (shift zero) is an F_p-space, and conjugation by the translation
generator realizes multiplication by x under the coefficient dictionary:
coefficient of x^i in coordinate j  <->  lamp value at index i, coordinate j.

Homomorphisms out of a module semidirect product are verified from generator
images: images of module generators must be base-valued, must satisfy every
relator column with x acting as conjugation by the t-image, and the t-image's
shift must be invertible mod m so that the normalizing automorphism (forcing
the t-image shift to 1) exists. The normalization is recorded, not applied to
the user's data.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    ConjugationMismatch,
    CocycleViolation,
    NotBaseValued,
    NotSurjective,
    RelationNotKilled,
    RelationViolated,
    SpecMismatch,
)
from .fppoly import FieldSpec, FpPoly, LaurentPoly, laurent_canonicalize
from .laurent_modules import ModulePresentation
from .polymatrix import PolyMatrix, matrix_mul, smith_normal_form


@dataclass(frozen=True)
class LamplighterSpec:
    """Lamp rank n over F_p with an integer base (base_order None) or Z/mZ base."""

    field: FieldSpec
    n: int
    base_order: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("lamp rank must be positive")
        if self.base_order is not None and self.base_order < 1:
            raise ValueError("cyclic base order must be positive")

    @property
    def is_cyclic(self) -> bool:
        return self.base_order is not None

    @property
    def order(self) -> int | None:
        """Group order for a cyclic base, None for the infinite base."""
        if self.base_order is None:
            return None
        return self.field.p ** (self.n * self.base_order) * self.base_order

    def reduce_index(self, i: int) -> int:
        return i % self.base_order if self.base_order else i


@dataclass(frozen=True)
class WreathElement:
    """Canonical pair (lamps, shift); lamp entries sorted, nonzero, index-reduced."""

    spec: LamplighterSpec
    lamps: tuple[tuple[int, tuple[int, ...]], ...]
    shift: int

    def __post_init__(self):
        p = self.spec.field.p
        acc: dict[int, list[int]] = {}
        for idx, vec in self.lamps:
            if len(vec) != self.spec.n:
                raise ValueError("lamp vector has wrong length")
            key = self.spec.reduce_index(idx)
            cur = acc.setdefault(key, [0] * self.spec.n)
            for t, c in enumerate(vec):
                cur[t] = (cur[t] + c) % p
        cleaned = tuple(
            (i, tuple(v)) for i, v in sorted(acc.items()) if any(v)
        )
        object.__setattr__(self, "lamps", cleaned)
        object.__setattr__(self, "shift", self.spec.reduce_index(self.shift))

    @property
    def is_identity(self) -> bool:
        return not self.lamps and self.shift == 0

    @property
    def in_base(self) -> bool:
        return self.shift == 0

    def lamp_at(self, idx: int) -> tuple[int, ...]:
        key = self.spec.reduce_index(idx)
        for i, v in self.lamps:
            if i == key:
                return v
        return (0,) * self.spec.n

    def __str__(self) -> str:
        body = ", ".join(f"{i}:{list(v)}" for i, v in self.lamps) or "-"
        return f"({body} | t^{self.shift})"


def element(spec: LamplighterSpec,
            lamps: Mapping[int, Sequence[int]] | Iterable[tuple[int, Sequence[int]]],
            shift: int = 0) -> WreathElement:
    items = lamps.items() if isinstance(lamps, Mapping) else lamps
    return WreathElement(spec, tuple((i, tuple(v)) for i, v in items), shift)


def identity(spec: LamplighterSpec) -> WreathElement:
    return WreathElement(spec, (), 0)


def delta(spec: LamplighterSpec, idx: int = 0, coord: int = 0, value: int = 1) -> WreathElement:
    """Single lamp at the given index and coordinate."""
    vec = [0] * spec.n
    vec[coord] = value
    return element(spec, [(idx, vec)], 0)


def translation(spec: LamplighterSpec, k: int = 1) -> WreathElement:
    return WreathElement(spec, (), k)


def _check_specs(a: WreathElement, b: WreathElement) -> None:
    if a.spec != b.spec:
        raise SpecMismatch("elements of different wreath products")


def wreath_mul(a: WreathElement, b: WreathElement) -> WreathElement:
    """(L1, g1)(L2, g2) = (L1 + g1.L2, g1 + g2), where (g1.L2)(i) = L2(i - g1)."""
    _check_specs(a, b)
    merged = list(a.lamps) + [(i + a.shift, v) for i, v in b.lamps]
    return WreathElement(a.spec, tuple(merged), a.shift + b.shift)


def wreath_inv(a: WreathElement) -> WreathElement:
    """(L, g)^(-1) = (-((-g).L), -g)."""
    p = a.spec.field.p
    inv_lamps = tuple(
        (i - a.shift, tuple((-c) % p for c in v)) for i, v in a.lamps
    )
    return WreathElement(a.spec, inv_lamps, -a.shift)


def wreath_pow(a: WreathElement, k: int) -> WreathElement:
    if k < 0:
        return wreath_pow(wreath_inv(a), -k)
    out = identity(a.spec)
    base = a
    while k:
        if k & 1:
            out = wreath_mul(out, base)
        base = wreath_mul(base, base)
        k >>= 1
    return out


def abelianize(a: WreathElement) -> tuple[tuple[int, ...], int]:
    """Image in (Z/pZ)^n x base: sum of the lamp vectors, plus the shift."""
    p = a.spec.field.p
    total = [0] * a.spec.n
    for _, v in a.lamps:
        for t, c in enumerate(v):
            total[t] = (total[t] + c) % p
    return tuple(total), a.shift


def shift_lamps(a: WreathElement, k: int) -> WreathElement:
    """Translate the support by k: conjugation by t^k on base elements."""
    return WreathElement(a.spec, tuple((i + k, v) for i, v in a.lamps), a.shift)


def scale_lamps(a: WreathElement, c: int) -> WreathElement:
    p = a.spec.field.p
    return WreathElement(
        a.spec, tuple((i, tuple((c * e) % p for e in v)) for i, v in a.lamps), a.shift)


def relabel_lamps(a: WreathElement, unit: int) -> WreathElement:
    """Base-index relabeling i -> unit * i (cyclic base, unit invertible mod m)."""
    m = a.spec.base_order
    assert m is not None
    return WreathElement(
        a.spec,
        tuple(((unit * i) % m, v) for i, v in a.lamps),
        (unit * a.shift) % m,
    )


# --- coefficient dictionary -------------------------------------------------

def module_to_lamps(spec: LamplighterSpec, vec: Sequence[FpPoly]) -> WreathElement:
    """Vector over F_p[x]/(x^m - 1) to a lamp configuration over the cyclic base.

    Coefficient of x^i in coordinate j becomes the lamp value at index i,
    coordinate j; exponents fold mod m. Multiplication by x on the module side
    matches index translation by 1 on the lamp side.
    """
    m = spec.base_order
    if m is None:
        raise SpecMismatch("cyclic base required")
    if len(vec) != spec.n:
        raise ValueError("coordinate count differs from the lamp rank")
    lamps: dict[int, list[int]] = {}
    for j, f in enumerate(vec):
        for e, c in enumerate(f.coeffs):
            if c:
                lamps.setdefault(e % m, [0] * spec.n)[j] += c
    return element(spec, lamps.items(), 0)


def lamps_to_module(a: WreathElement) -> tuple[FpPoly, ...]:
    """Inverse dictionary; defined on base elements of a cyclic-base group."""
    m = a.spec.base_order
    if m is None:
        raise SpecMismatch("cyclic base required")
    if not a.in_base:
        raise ValueError("dictionary applies to base elements only")
    field = a.spec.field
    coords = []
    for j in range(a.spec.n):
        coeffs = [0] * m
        for i, v in a.lamps:
            coeffs[i] = v[j]
        coords.append(FpPoly(field, tuple(coeffs)))
    return tuple(coords)


def laurent_to_lamps(spec: LamplighterSpec, vec: Sequence[LaurentPoly]) -> WreathElement:
    """Same dictionary over the integer base, for vectors over the Laurent ring."""
    if spec.is_cyclic:
        raise SpecMismatch("integer base required")
    if len(vec) != spec.n:
        raise ValueError("coordinate count differs from the lamp rank")
    lamps: dict[int, list[int]] = {}
    for j, f in enumerate(vec):
        for e, c in f.terms():
            lamps.setdefault(e, [0] * spec.n)[j] = c
    return element(spec, lamps.items(), 0)


def _apply_poly(poly: FpPoly | LaurentPoly, w: WreathElement, step: int) -> WreathElement:
    """Module action of poly on a base element, x acting as index shift by step."""
    terms = poly.terms() if isinstance(poly, LaurentPoly) else list(enumerate(poly.coeffs))
    out = identity(w.spec)
    for e, c in terms:
        if c:
            out = wreath_mul(out, scale_lamps(shift_lamps(w, step * e), c))
    return out


# --- verified homomorphisms --------------------------------------------------

@dataclass(frozen=True)
class GeneratorImages:
    """Proposed images for the generators of a module semidirect product.

    The source group is N x| Z with t acting as multiplication by x on the
    presented module N; module generator images must be base-valued in the
    finite target and the t-image drives the x-action by conjugation.
    """

    source: ModulePresentation
    target: LamplighterSpec
    module_gen_images: tuple[WreathElement, ...]
    t_image: WreathElement

    def __post_init__(self):
        if not self.target.is_cyclic:
            raise SpecMismatch("verification target must have a cyclic base")
        if self.target.field != self.source.field:
            raise SpecMismatch("source and target over different prime fields")
        if len(self.module_gen_images) != self.source.generators:
            raise ValueError("one image per module generator required")
        for w in tuple(self.module_gen_images) + (self.t_image,):
            if w.spec != self.target:
                raise SpecMismatch("image lives in a different group")


@dataclass(frozen=True)
class VerifiedHom:
    """A checked homomorphism N x| Z -> (Z/pZ)^n wr (Z/mZ), evaluable on (a, k).

    sigma is the t-image's shift; sigma_inverse is the recorded normalizing
    automorphism (index relabeling by sigma_inverse) that moves the t-image
    shift to 1 without touching the supplied images.
    """

    images: GeneratorImages
    sigma: int
    sigma_inverse: int
    surjective: bool

    @property
    def target(self) -> LamplighterSpec:
        return self.images.target

    def evaluate(self, coeffs: Sequence[FpPoly | LaurentPoly], k: int) -> WreathElement:
        """Image of (sum_i coeffs[i] . gen_i, k)."""
        if len(coeffs) != self.images.source.generators:
            raise ValueError("one coefficient per module generator required")
        acc = identity(self.target)
        for c, w in zip(coeffs, self.images.module_gen_images):
            acc = wreath_mul(acc, _apply_poly(c, w, self.sigma))
        return wreath_mul(acc, wreath_pow(self.images.t_image, k))

    def normalized(self, w: WreathElement) -> WreathElement:
        """Apply the recorded automorphism; the normalized t-image has shift 1."""
        return relabel_lamps(w, self.sigma_inverse)

    def section_lamp(self, k: int) -> WreathElement:
        """Lamp part of the normalized image of (0, k)."""
        w = self.normalized(wreath_pow(self.images.t_image, k))
        return element(self.target, w.lamps, 0)


def hom_from_generator_images(gi: GeneratorImages) -> VerifiedHom:
    """Check the proposed images and return an evaluable homomorphism.

    Checks, in the finite target: base-valuedness, order dividing p, pairwise
    commutation, every relator column (x acting by t-image conjugation), the
    conjugation action itself, and invertibility of the t-image shift mod m.
    Also reports surjectivity via subgroup closure.
    """
    spec = gi.target
    m = spec.base_order
    assert m is not None
    for i, w in enumerate(gi.module_gen_images):
        if not w.in_base:
            raise NotBaseValued(f"image of generator {i} has shift {w.shift}")
    for i, w in enumerate(gi.module_gen_images):
        if not wreath_pow(w, spec.field.p).is_identity:
            raise RelationViolated(i, "image order does not divide p")
    for i, a in enumerate(gi.module_gen_images):
        for b in gi.module_gen_images[i + 1:]:
            if wreath_mul(a, b) != wreath_mul(b, a):
                raise RelationViolated(i, "module generator images do not commute")

    sigma = gi.t_image.shift
    if math.gcd(sigma, m) != 1:
        raise ConjugationMismatch(
            f"t-image shift {sigma} is not invertible mod {m}; "
            "conjugation cannot realize an invertible x-action")
    sigma_inverse = pow(sigma, -1, m) if m > 1 else 0

    inv_t = wreath_inv(gi.t_image)
    for i, w in enumerate(gi.module_gen_images):
        conjugated = wreath_mul(wreath_mul(gi.t_image, w), inv_t)
        if conjugated != shift_lamps(w, sigma):
            raise ConjugationMismatch(f"conjugation of generator image {i} is not the index shift")

    rel = gi.source.relations
    for j in range(rel.cols):
        acc = identity(spec)
        for i in range(rel.rows):
            acc = wreath_mul(acc, _apply_poly(rel.entry(i, j), gi.module_gen_images[i], sigma))
        if not acc.is_identity:
            raise RelationViolated(j, "relator image is nontrivial")

    generators = list(gi.module_gen_images) + [gi.t_image]
    seen = {identity(spec)}
    frontier = [identity(spec)]
    while frontier:
        cur = frontier.pop()
        for g in generators:
            nxt = wreath_mul(cur, g)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    surjective = len(seen) == spec.order

    return VerifiedHom(images=gi, sigma=sigma, sigma_inverse=sigma_inverse,
                       surjective=surjective)


@dataclass(frozen=True)
class CocycleReport:
    """Witness table for the section k -> lamp part of the image of (0, k)."""

    values: tuple[tuple[int, WreathElement], ...]
    pairs_checked: int
    multiples_checked: int


def cocycle_verify(hom: VerifiedHom, bound: int) -> CocycleReport:
    """Assert the section identities g(k + k') = g(k) + x^k g(k') and g(km) = k g(m).

    Both are theorems for any verified homomorphism (in normalized form); a
    failure here means the hom object is corrupted, not that the input is bad.
    """
    m = hom.target.base_order
    assert m is not None
    g: dict[int, WreathElement] = {}
    for k in range(-2 * bound, 2 * bound + 1):
        g[k] = hom.section_lamp(k)
    if not g[0].is_identity:
        raise CocycleViolation(0, 0, "g(0) != 0")
    pairs = 0
    for k in range(-bound, bound + 1):
        for k2 in range(-bound, bound + 1):
            expected = wreath_mul(g[k], shift_lamps(g[k2], k))
            if g[k + k2] != expected:
                raise CocycleViolation(k, k2)
            pairs += 1
    multiples = 0
    for k in range(-(bound // m), bound // m + 1):
        if g[k * m] != scale_lamps(g[m], k % hom.target.field.p):
            raise CocycleViolation(k, m, "g(km) != k g(m)")
        multiples += 1
    table = tuple((k, g[k]) for k in range(-bound, bound + 1))
    return CocycleReport(values=table, pairs_checked=pairs, multiples_checked=multiples)


# --- the epimorphism onto the free lamp group --------------------------------

CandidateElement = tuple[tuple[LaurentPoly, ...], int]
"""Element (a, k) of the candidate group, a given by generator coefficients."""


def candidate_mul(a: CandidateElement, b: CandidateElement) -> CandidateElement:
    """(a, k)(a', k') = (a + x^k a', k + k') in the module semidirect product."""
    coeffs, k = a
    coeffs2, k2 = b
    field = coeffs[0].field
    xk = LaurentPoly.monomial(field, k)
    return tuple(c + xk * c2 for c, c2 in zip(coeffs, coeffs2)), k + k2


@dataclass(frozen=True)
class LawCheckReport:
    samples: int
    seed: int


@dataclass(frozen=True)
class VerifiedGroupEpi:
    """Certified epimorphism (a, k) -> (phi(a), k) onto the free lamp group.

    Certificates: phi kills every relator column, phi's normal form has
    all-unit diagonal (surjectivity onto the free module), and t maps to t.
    """

    source: ModulePresentation
    phi: PolyMatrix
    target: LamplighterSpec

    def evaluate(self, elem: CandidateElement) -> WreathElement:
        coeffs, k = elem
        if len(coeffs) != self.source.generators:
            raise ValueError("one coefficient per module generator required")
        field = self.source.field
        out = []
        for i in range(self.phi.rows):
            acc = LaurentPoly.zero(field)
            for j in range(self.phi.cols):
                acc = acc + LaurentPoly.from_poly(self.phi.entry(i, j)) * coeffs[j]
            out.append(acc)
        return WreathElement(self.target, laurent_to_lamps(self.target, out).lamps, k)

    def law_check(self, samples: int = 1000, seed: int = 0) -> LawCheckReport:
        """Verify f(ab) = f(a) f(b) on seeded random pairs of group elements."""
        rng = random.Random(seed)
        field = self.source.field
        g = self.source.generators

        def random_element() -> CandidateElement:
            coeffs = []
            for _ in range(g):
                terms = [(rng.randint(-2, 3), rng.randrange(field.p))
                         for _ in range(rng.randint(0, 3))]
                coeffs.append(laurent_canonicalize(field, terms))
            return tuple(coeffs), rng.randint(-3, 3)

        for _ in range(samples):
            a = random_element()
            b = random_element()
            lhs = self.evaluate(candidate_mul(a, b))
            rhs = wreath_mul(self.evaluate(a), self.evaluate(b))
            assert lhs == rhs, "homomorphism law failed on a sampled pair"
        return LawCheckReport(samples=samples, seed=seed)


def build_lamplighter_epimorphism(pres: ModulePresentation,
                                  phi: PolyMatrix) -> VerifiedGroupEpi:
    """Certify phi and wrap it as the group map (a, k) -> (phi(a), k)."""
    if phi.cols != pres.generators:
        raise RelationNotKilled("matrix shape does not match the presentation")
    killed = matrix_mul(phi, pres.relations)
    if not killed.is_zero:
        raise RelationNotKilled("phi does not annihilate the relation columns")
    diag = smith_normal_form(phi).diag
    # units of the Laurent ring are c * x^k: strip the x-power before testing
    if not all((not d.is_zero) and d.strip_x().degree == 0 for d in diag):
        raise NotSurjective("normal form of phi has a non-unit diagonal entry")
    target = LamplighterSpec(pres.field, phi.rows, None)
    return VerifiedGroupEpi(source=pres, phi=phi, target=target)
