"""Exact arithmetic in F_p, the polynomial ring F_p[x], and the Laurent ring F_p[x^(+-1)].

Polynomials are immutable tuples of least nonnegative residues in ascending
degree order, with the trailing coefficient nonzero (the zero polynomial is the
empty tuple). Laurent values are kept in the canonical form x^shift * body with
body(0) != 0, which fixes the unit ambiguity c * x^k once and for all: equality
in the Laurent ring is literal equality of canonical forms.

The degree of the zero polynomial is a genuine minus-infinity marker, never -1,
so degree comparisons in the division algorithm need no special cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import BothZero, DivisionByZero, FieldMismatch

NEG_INF = float("-inf")

Degree = Union[int, float]


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check (moduli here are tiny)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field F_p."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def inv(self, a: int) -> int:
        return pow(a % self.p, -1, self.p)


def _check_fields(a: "FpPoly | LaurentPoly", b: "FpPoly | LaurentPoly") -> None:
    if a.field != b.field:
        raise FieldMismatch(f"mixed moduli {a.field.p} and {b.field.p}")


@dataclass(frozen=True)
class FpPoly:
    """Dense polynomial over F_p, coefficients ascending, trailing one nonzero."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        p = self.field.p
        cs = [c % p for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls, field: FieldSpec) -> "FpPoly":
        return cls(field, ())

    @classmethod
    def one(cls, field: FieldSpec) -> "FpPoly":
        return cls(field, (1,))

    @classmethod
    def x_power(cls, field: FieldSpec, k: int, coeff: int = 1) -> "FpPoly":
        if k < 0:
            raise ValueError("x_power needs k >= 0; use LaurentPoly for negative exponents")
        return cls(field, (0,) * k + (coeff,))

    @classmethod
    def from_pairs(cls, field: FieldSpec, pairs: Iterable[tuple[int, int]]) -> "FpPoly":
        """Build from (exponent, coefficient) pairs; duplicates are summed mod p."""
        acc: dict[int, int] = {}
        for e, c in pairs:
            if e < 0:
                raise ValueError("negative exponent in a plain polynomial")
            acc[e] = (acc.get(e, 0) + c) % field.p
        if not acc:
            return cls.zero(field)
        top = max(acc)
        return cls(field, tuple(acc.get(i, 0) for i in range(top + 1)))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> Degree:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def coefficient(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    @property
    def low_degree(self) -> int:
        """Index of the lowest nonzero coefficient; 0 for the zero polynomial."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    @property
    def is_monic(self) -> bool:
        return self.leading_coefficient == 1

    def monic(self) -> "FpPoly":
        if self.is_zero or self.is_monic:
            return self
        return self * self.field.inv(self.leading_coefficient)

    def shifted(self, k: int) -> "FpPoly":
        """Multiply by x^k, k >= 0."""
        if k < 0:
            raise ValueError("negative shift on a plain polynomial")
        if self.is_zero:
            return self
        return FpPoly(self.field, (0,) * k + self.coeffs)

    def strip_x(self) -> "FpPoly":
        """Drop the maximal x^k factor (a unit in the Laurent ring)."""
        if self.is_zero:
            return self
        return FpPoly(self.field, self.coeffs[self.low_degree:])

    def __bool__(self) -> bool:
        return not self.is_zero

    def __add__(self, other: "FpPoly") -> "FpPoly":
        _check_fields(self, other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.field.p
        return FpPoly(self.field, tuple(out))

    def __neg__(self) -> "FpPoly":
        p = self.field.p
        return FpPoly(self.field, tuple((-c) % p for c in self.coeffs))

    def __sub__(self, other: "FpPoly") -> "FpPoly":
        return self + (-other)

    def __mul__(self, other: "FpPoly | int") -> "FpPoly":
        p = self.field.p
        if isinstance(other, int):
            return FpPoly(self.field, tuple((c * other) % p for c in self.coeffs))
        _check_fields(self, other)
        if self.is_zero or other.is_zero:
            return FpPoly.zero(self.field)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = (out[i + j] + a * b) % p
        return FpPoly(self.field, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FpPoly":
        if k < 0:
            raise ValueError("negative power of a plain polynomial")
        out = FpPoly.one(self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "FpPoly") -> tuple["FpPoly", "FpPoly"]:
        return poly_divmod(self, other)

    def __floordiv__(self, other: "FpPoly") -> "FpPoly":
        return poly_divmod(self, other)[0]

    def __mod__(self, other: "FpPoly") -> "FpPoly":
        return poly_divmod(self, other)[1]

    def divides(self, other: "FpPoly") -> bool:
        if self.is_zero:
            return other.is_zero
        return poly_divmod(other, self)[1].is_zero

    def __str__(self) -> str:
        return format_terms([(i, c) for i, c in enumerate(self.coeffs) if c])


def format_terms(terms: Sequence[tuple[int, int]]) -> str:
    if not terms:
        return "0"
    parts = []
    for e, c in sorted(terms):
        if e == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            parts.append(f"{head}x" if e == 1 else f"{head}x^{e}")
    return " + ".join(parts)


def poly_divmod(a: FpPoly, b: FpPoly) -> tuple[FpPoly, FpPoly]:
    """Euclidean division a = q*b + r with deg r < deg b."""
    _check_fields(a, b)
    if b.is_zero:
        raise DivisionByZero("division by the zero polynomial")
    if a.is_zero or a.degree < b.degree:
        return FpPoly.zero(a.field), a
    p = a.field.p
    inv_lead = a.field.inv(b.leading_coefficient)
    rem = list(a.coeffs)
    db = len(b.coeffs) - 1
    quo = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c:
            q = (c * inv_lead) % p
            quo[i - db] = q
            for j, bc in enumerate(b.coeffs):
                rem[i - db + j] = (rem[i - db + j] - q * bc) % p
    return FpPoly(a.field, tuple(quo)), FpPoly(a.field, tuple(rem[:db]))


def poly_gcd_ext(a: FpPoly, b: FpPoly) -> tuple[FpPoly, FpPoly, FpPoly]:
    """Extended gcd: returns monic g and u, v with u*a + v*b = g.

    The Bezout certificate is re-verified before returning.
    """
    _check_fields(a, b)
    if a.is_zero and b.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    field = a.field
    r0, r1 = a, b
    s0, s1 = FpPoly.one(field), FpPoly.zero(field)
    t0, t1 = FpPoly.zero(field), FpPoly.one(field)
    while not r1.is_zero:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lead_inv = field.inv(r0.leading_coefficient)
    g, u, v = r0 * lead_inv, s0 * lead_inv, t0 * lead_inv
    assert (u * a + v * b) == g, "Bezout certificate failed"
    assert g.divides(a) and g.divides(b), "gcd does not divide its inputs"
    return g, u, v


def poly_gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    return poly_gcd_ext(a, b)[0]


def x_pow_minus_one(field: FieldSpec, m: int) -> FpPoly:
    """The polynomial x^m - 1."""
    if m < 1:
        raise ValueError("m must be positive")
    return FpPoly(field, (field.p - 1,) + (0,) * (m - 1) + (1,))


@dataclass(frozen=True)
class LaurentPoly:
    """Element of F_p[x^(+-1)] in the canonical form x^shift * body, body(0) != 0."""

    field: FieldSpec
    shift: int
    body: FpPoly

    def __post_init__(self):
        if self.body.field != self.field:
            raise FieldMismatch("body lives over a different field")
        if self.body.is_zero:
            object.__setattr__(self, "shift", 0)
        else:
            low = self.body.low_degree
            if low:
                object.__setattr__(self, "shift", self.shift + low)
                object.__setattr__(self, "body", self.body.strip_x())

    @classmethod
    def zero(cls, field: FieldSpec) -> "LaurentPoly":
        return cls(field, 0, FpPoly.zero(field))

    @classmethod
    def one(cls, field: FieldSpec) -> "LaurentPoly":
        return cls(field, 0, FpPoly.one(field))

    @classmethod
    def monomial(cls, field: FieldSpec, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls(field, exponent, FpPoly(field, (coeff,)))

    @classmethod
    def from_poly(cls, f: FpPoly) -> "LaurentPoly":
        return cls(f.field, 0, f)

    @property
    def is_zero(self) -> bool:
        return self.body.is_zero

    @property
    def is_unit(self) -> bool:
        return (not self.is_zero) and self.body.degree == 0

    @property
    def min_degree(self) -> int:
        return self.shift

    @property
    def max_degree(self) -> Degree:
        return NEG_INF if self.is_zero else self.shift + self.body.degree

    def coefficient(self, e: int) -> int:
        return self.body.coefficient(e - self.shift)

    def terms(self) -> list[tuple[int, int]]:
        return [(self.shift + i, c) for i, c in enumerate(self.body.coeffs) if c]

    def __bool__(self) -> bool:
        return not self.is_zero

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        _check_fields(self, other)
        return laurent_canonicalize(self.field, self.terms() + other.terms())

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.field, self.shift, -self.body)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly(self.field, self.shift, self.body * other)
        _check_fields(self, other)
        return LaurentPoly(self.field, self.shift + other.shift, self.body * other.body)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_terms(self.terms())


def laurent_canonicalize(field: FieldSpec, raw: Iterable[tuple[int, int]]) -> LaurentPoly:
    """Canonical Laurent form from raw (exponent, coefficient) pairs.

    Duplicate exponents are summed mod p and zero terms dropped; the result is
    x^shift * body with body(0) != 0. Idempotent and independent of term order.
    """
    acc: dict[int, int] = {}
    for e, c in raw:
        acc[e] = (acc.get(e, 0) + c) % field.p
    acc = {e: c for e, c in acc.items() if c}
    if not acc:
        return LaurentPoly.zero(field)
    low = min(acc)
    top = max(acc)
    body = FpPoly(field, tuple(acc.get(low + i, 0) for i in range(top - low + 1)))
    return LaurentPoly(field, low, body)


def laurent_is_unit(f: LaurentPoly) -> bool:
    """Units of the Laurent ring are exactly c * x^k with c != 0."""
    return f.is_unit
