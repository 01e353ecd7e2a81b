"""Brute-force finite-group layer: explicit tables, normal subgroups, quotients,
isomorphism testing, and order-bounded quotient sets of module semidirect
products.

Tables are numpy int32 arrays. Group axioms are fully verified at construction
up to order 512 (vectorized, one row of the associativity cube at a time) and
spot-checked on seeded random triples above that.

The bounded quotient-set computation never builds the big truncation table.
Any quotient of order <= B in which the translation image has order m factors
through the truncation at m, and its kernel meets the base subgroup in a
submodule whose quotient module M has dimension <= log_p(B). Such an M is a
quotient of the truncation module, so over the polynomial ring it is a direct
sum of cyclic modules along a divisor chain dominated by the truncation's own
invariant chain. Enumerating those dominated chains (a handful of divisors of
x^m - 1 of small degree) gives every possible M directly; each M x| Z/mZ is a
small group whose full normal-subgroup lattice is cheap to search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import NotNormal, OrderBoundExceeded
from .fppoly import FieldSpec, FpPoly, poly_gcd, x_pow_minus_one
from .laurent_modules import (
    FiniteTruncation,
    ModulePresentation,
    decompose,
)
from .wreath import LamplighterSpec

FULL_AXIOM_ORDER = 512
_SPOT_CHECK_TRIPLES = 4096


@dataclass(frozen=True, eq=False)
class FiniteGroupTable:
    """Multiplication table on indices 0..order-1 with verified group axioms."""

    order: int
    mul: np.ndarray
    identity: int
    inverse: np.ndarray
    labels: tuple[str, ...] | None = None

    @classmethod
    def build(cls, mul: np.ndarray, labels: tuple[str, ...] | None = None) -> "FiniteGroupTable":
        mul = np.ascontiguousarray(mul, dtype=np.int32)
        order = mul.shape[0]
        assert mul.shape == (order, order)
        assert mul.min() >= 0 and mul.max() < order
        idx = np.arange(order)
        ids = [e for e in range(order) if np.array_equal(mul[e], idx)]
        assert len(ids) == 1, "table has no unique identity"
        e = ids[0]
        assert np.array_equal(mul[:, e], idx), "identity fails on the right"
        inv_count = (mul == e).sum(axis=1)
        assert (inv_count == 1).all(), "some element lacks a unique inverse"
        inverse = np.argmax(mul == e, axis=1).astype(np.int32)
        if order <= FULL_AXIOM_ORDER:
            for a in range(order):
                if not np.array_equal(mul[mul[a]], mul[a][mul]):
                    raise AssertionError("associativity fails")
        else:
            rng = np.random.default_rng(0)
            for a, b, c in rng.integers(0, order, size=(_SPOT_CHECK_TRIPLES, 3)):
                assert mul[mul[a, b], c] == mul[a, mul[b, c]], "associativity fails"
        mul.flags.writeable = False
        inverse.flags.writeable = False
        return cls(order=order, mul=mul, identity=int(e), inverse=inverse, labels=labels)

    def conjugacy_classes(self) -> list[np.ndarray]:
        """Orbits of the conjugation action, each sorted ascending."""
        mul, inv = self.mul, self.inverse
        everyone = np.arange(self.order)
        seen = np.zeros(self.order, dtype=bool)
        classes = []
        for g in range(self.order):
            if seen[g]:
                continue
            conj = np.unique(mul[mul[everyone, g], inv[everyone]])
            seen[conj] = True
            classes.append(conj)
        return classes

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = int(self.mul[x, g])
            k += 1
        return k


def cyclic_table(n: int) -> FiniteGroupTable:
    idx = np.arange(n)
    return FiniteGroupTable.build((idx[:, None] + idx[None, :]) % n)


def direct_product_table(a: FiniteGroupTable, b: FiniteGroupTable) -> FiniteGroupTable:
    na, nb = a.order, b.order
    i = np.arange(na * nb)
    ai, bi = i // nb, i % nb
    mul = a.mul[np.ix_(ai, ai)] * nb + b.mul[np.ix_(bi, bi)]
    return FiniteGroupTable.build(mul)


def semidirect_table(field: FieldSpec, action: list[list[int]], m: int,
                     order_cap: int = 4096) -> FiniteGroupTable:
    """Table of F_p^d x| Z/mZ, the cyclic generator acting by the given matrix.

    Elements are encoded in mixed radix as index = vector_index * m + residue,
    with vector_index = sum_i v_i p^i.
    """
    p = field.p
    d = len(action)
    count = p ** d
    order = count * m
    if order > order_cap:
        raise OrderBoundExceeded(f"order {order} exceeds cap {order_cap}")
    radix = p ** np.arange(d, dtype=np.int64) if d else np.zeros(0, dtype=np.int64)
    vecs = np.zeros((count, d), dtype=np.int64)
    for j in range(d):
        vecs[:, j] = (np.arange(count) // (p ** j)) % p
    a_np = np.array(action, dtype=np.int64).reshape(d, d)
    act_idx = np.zeros((m, count), dtype=np.int64)
    power = np.eye(d, dtype=np.int64)
    for k in range(m):
        act_idx[k] = ((vecs @ power.T % p) @ radix) if d else 0
        power = power @ a_np % p
    table = np.zeros((order, order), dtype=np.int32)
    sum_idx = np.zeros((count, count), dtype=np.int64)
    if d:
        chunk = max(1, (1 << 22) // (count * d))
        for start in range(0, count, chunk):
            end = min(start + chunk, count)
            sum_idx[start:end] = ((vecs[start:end, None, :] + vecs[None, :, :]) % p) @ radix
    for k in range(m):
        # (v, k)(w, l) = (v + A^k w, k + l)
        block = sum_idx[:, act_idx[k]]  # block[i, j] = index(vec_i + A^k vec_j)
        for l in range(m):
            rows = (np.arange(count) * m + k)[:, None]
            cols = (np.arange(count) * m + l)[None, :]
            table[rows, cols] = block * m + (k + l) % m
    return FiniteGroupTable.build(table)


def build_group_table(trunc: FiniteTruncation, m: int,
                      order_cap: int = 4096) -> FiniteGroupTable:
    """Explicit table of (N / (x^m - 1) N) x| Z/mZ from a finite truncation."""
    assert trunc.m == m, "truncation was taken at a different m"
    return semidirect_table(trunc.field, [list(r) for r in trunc.x_action], m, order_cap)


# --- subgroup machinery -------------------------------------------------------

def subgroup_closure(table: FiniteGroupTable, gens: list[int]) -> np.ndarray:
    """Sorted element array of the subgroup generated by gens."""
    member = np.zeros(table.order, dtype=bool)
    member[table.identity] = True
    gens = sorted(set(gens) | {table.identity})
    garr = np.array(gens, dtype=np.int64)
    frontier = np.array([table.identity], dtype=np.int64)
    while frontier.size:
        prods = np.unique(table.mul[np.ix_(frontier, garr)])
        fresh = prods[~member[prods]]
        member[fresh] = True
        frontier = fresh
    return np.flatnonzero(member)


def _is_subgroup(table: FiniteGroupTable, members: np.ndarray) -> bool:
    mask = np.zeros(table.order, dtype=bool)
    mask[members] = True
    return bool(mask[table.identity]) and bool(
        mask[table.mul[np.ix_(members, members)]].all())


def _is_normal(table: FiniteGroupTable, members: np.ndarray) -> bool:
    mask = np.zeros(table.order, dtype=bool)
    mask[members] = True
    everyone = np.arange(table.order)
    left = table.mul[:, members]            # left[g, i] = g * n_i
    conj = table.mul[left, table.inverse[everyone][:, None]]
    return bool(mask[conj].all())


def enumerate_normal_subgroups(table: FiniteGroupTable,
                               order_cap: int = 4096) -> list[frozenset[int]]:
    """The full normal-subgroup lattice, via joins of one-element normal closures.

    Every normal subgroup is the join of the normal closures of its elements,
    and the product of two normal subgroups is already a subgroup, so closing
    the atom set under pairwise joins reaches a fixpoint at the full lattice.
    Each returned subset is re-verified to be subgroup- and conjugation-closed.
    """
    if table.order > order_cap:
        raise OrderBoundExceeded(f"order {table.order} exceeds cap {order_cap}")
    atoms: dict[bytes, tuple[np.ndarray, list[int]]] = {}
    for cls in table.conjugacy_classes():
        members = subgroup_closure(table, list(cls))
        atoms.setdefault(members.tobytes(), (members, list(cls)))
    lattice: dict[bytes, tuple[np.ndarray, list[int]]] = {}
    trivial = np.array([table.identity], dtype=np.int64)
    lattice[trivial.tobytes()] = (trivial, [])
    queue = list(atoms.values())
    for members, gens in queue:
        lattice.setdefault(members.tobytes(), (members, gens))
    pending = list(lattice.values())
    while pending:
        members, gens = pending.pop()
        for amembers, agens in atoms.values():
            join = subgroup_closure(table, gens + agens)
            key = join.tobytes()
            if key not in lattice:
                entry = (join, gens + agens)
                lattice[key] = entry
                pending.append(entry)
    out = []
    for members, _ in lattice.values():
        assert _is_subgroup(table, members)
        assert _is_normal(table, members)
        out.append(frozenset(int(x) for x in members))
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def quotient_table(table: FiniteGroupTable, normal: frozenset[int] | set[int]) -> FiniteGroupTable:
    """Coset multiplication table of G / N."""
    members = np.array(sorted(normal), dtype=np.int64)
    if not _is_subgroup(table, members) or not _is_normal(table, members):
        raise NotNormal("subset is not a normal subgroup")
    rep_of = table.mul[members].min(axis=0)  # rep_of[g] = min of the coset N g
    reps = np.unique(rep_of)
    index_of = {int(r): i for i, r in enumerate(reps)}
    q = len(reps)
    mul = np.zeros((q, q), dtype=np.int32)
    for i, a in enumerate(reps):
        prods = rep_of[table.mul[a, reps]]
        mul[i] = [index_of[int(x)] for x in prods]
    return FiniteGroupTable.build(mul)


# --- isomorphism invariants and testing ---------------------------------------

@dataclass(frozen=True)
class QuotientFingerprint:
    """Cheap isomorphism invariants used to pre-filter the backtracking search."""

    order: int
    abelian_invariants: tuple[int, ...]
    exponent: int
    element_orders: tuple[int, ...]
    class_sizes: tuple[int, ...]

    def key(self) -> tuple:
        return (self.order, self.exponent, self.abelian_invariants,
                self.element_orders, self.class_sizes)

    def describe(self) -> str:
        if self.order == 1:
            return "1"
        if len(self.element_orders) == self.order and self.class_sizes == (1,) * self.order:
            return " x ".join(f"C{d}" for d in reversed(self.abelian_invariants))
        return (f"nonabelian(order={self.order}, exponent={self.exponent}, "
                f"ab={' x '.join(f'C{d}' for d in reversed(self.abelian_invariants)) or '1'})")


def _abelian_invariants(table: FiniteGroupTable) -> tuple[int, ...]:
    """Invariant factors d_1 | ... | d_k of an abelian table group."""
    if table.order == 1:
        return ()
    orders = [table.element_order(g) for g in range(table.order)]
    exponent = max(orders)
    pick = min(g for g in range(table.order) if orders[g] == exponent)
    cyclic = set()
    x = table.identity
    while True:
        cyclic.add(x)
        x = int(table.mul[x, pick])
        if x == table.identity:
            break
    rest = _abelian_invariants(quotient_table(table, frozenset(cyclic)))
    return rest + (exponent,)


def fingerprint(table: FiniteGroupTable) -> QuotientFingerprint:
    orders = tuple(sorted(table.element_order(g) for g in range(table.order)))
    exponent = math.lcm(*orders)
    classes = table.conjugacy_classes()
    sizes = tuple(sorted(len(c) for c in classes))
    commutators = set()
    mul, inv = table.mul, table.inverse
    for a in range(table.order):
        row = mul[mul[mul[a, np.arange(table.order)],
                      inv[a]], inv[np.arange(table.order)]]
        commutators.update(int(x) for x in row)
    derived = subgroup_closure(table, sorted(commutators))
    ab = quotient_table(table, frozenset(int(x) for x in derived))
    return QuotientFingerprint(
        order=table.order,
        abelian_invariants=_abelian_invariants(ab),
        exponent=exponent,
        element_orders=orders,
        class_sizes=sizes,
    )


def _generating_sequence(table: FiniteGroupTable) -> list[int]:
    gens: list[int] = []
    span = {table.identity}
    while len(span) < table.order:
        g = min(x for x in range(table.order) if x not in span)
        gens.append(g)
        span = set(int(x) for x in subgroup_closure(table, gens))
    return gens


def _hom_from_images(g_table: FiniteGroupTable, h_table: FiniteGroupTable,
                     gens: list[int], images: list[int]) -> dict[int, int] | None:
    """Extend gen -> image to the generated subgroup; None on conflict."""
    mapping = {g_table.identity: h_table.identity}
    frontier = [g_table.identity]
    while frontier:
        a = frontier.pop()
        b = mapping[a]
        for g, h in zip(gens, images):
            ag = int(g_table.mul[a, g])
            bh = int(h_table.mul[b, h])
            if ag in mapping:
                if mapping[ag] != bh:
                    return None
            else:
                mapping[ag] = bh
                frontier.append(ag)
    for a, fa in mapping.items():
        for b, fb in mapping.items():
            if mapping.get(int(g_table.mul[a, b])) != int(h_table.mul[fa, fb]):
                return None
    return mapping


def isomorphic(g_table: FiniteGroupTable, h_table: FiniteGroupTable,
               order_cap: int = 4096) -> bool:
    """Fingerprint pre-filter, then backtracking over generator images."""
    if g_table.order > order_cap or h_table.order > order_cap:
        raise OrderBoundExceeded("isomorphism test above the configured cap")
    if g_table.order != h_table.order:
        return False
    if fingerprint(g_table) != fingerprint(h_table):
        return False
    if g_table.order == 1:
        return True
    gens = _generating_sequence(g_table)

    def class_size_map(table: FiniteGroupTable) -> dict[int, int]:
        sizes: dict[int, int] = {}
        for c in table.conjugacy_classes():
            for g in c:
                sizes[int(g)] = len(c)
        return sizes

    g_sizes, h_sizes = class_size_map(g_table), class_size_map(h_table)
    g_inv = {g: (g_table.element_order(g), g_sizes[g]) for g in gens}
    h_candidates: dict[tuple[int, int], list[int]] = {}
    for h in range(h_table.order):
        h_candidates.setdefault((h_table.element_order(h), h_sizes[h]), []).append(h)

    def backtrack(i: int, images: list[int]) -> bool:
        if i == len(gens):
            mapping = _hom_from_images(g_table, h_table, gens, images)
            return (mapping is not None
                    and len(mapping) == g_table.order
                    and len(set(mapping.values())) == g_table.order)
        for h in h_candidates.get(g_inv[gens[i]], []):
            trial = images + [h]
            if _hom_from_images(g_table, h_table, gens[:i + 1], trial) is not None:
                if backtrack(i + 1, trial):
                    return True
        return False

    return backtrack(0, [])


# --- bounded quotient sets ----------------------------------------------------

@dataclass(frozen=True)
class QuSet:
    """Isomorphism classes of finite quotients up to the stated order bound."""

    bound: int
    classes: tuple[FiniteGroupTable, ...]
    fingerprints: tuple[QuotientFingerprint, ...]

    def describe(self) -> list[str]:
        return [fp.describe() for fp in self.fingerprints]


def _source_presentation(source: ModulePresentation | LamplighterSpec) -> ModulePresentation:
    if isinstance(source, LamplighterSpec):
        if source.is_cyclic:
            raise ValueError("quotient enumeration expects the integer-base group")
        return ModulePresentation.free(source.field, source.n)
    return source


def _small_divisors(modulus: FpPoly, max_degree: int) -> list[FpPoly]:
    """Monic divisors of the modulus with degree in 1..max_degree, sorted."""
    field = modulus.field
    p = field.p
    out = []
    for deg in range(1, max_degree + 1):
        for tail in product(range(p), repeat=deg):
            h = FpPoly(field, tuple(tail) + (1,))
            if h.divides(modulus):
                out.append(h)
    out.sort(key=lambda h: (h.degree, h.coeffs))
    return out


def _dominated_chains(base_chain: list[FpPoly], divisors: list[FpPoly],
                      budget: int) -> list[list[FpPoly]]:
    """Ascending divisor chains h_1 | ... | h_k with sum deg <= budget that are
    dominated top-down by base_chain (h_{k-j} divides base_chain[s-1-j]).

    These parameterize exactly the quotient modules of the module with
    invariant chain base_chain that have dimension <= budget: a quotient of a
    torsion module over a principal ideal domain exists iff its j-th largest
    invariant factor divides the j-th largest one of the source.
    """
    s = len(base_chain)
    out: list[list[FpPoly]] = []

    def rec(top_down: list[FpPoly], left: int, slot: int) -> None:
        out.append(list(reversed(top_down)))
        if slot < 0 or left <= 0:
            return
        upper = top_down[-1] if top_down else None
        for h in divisors:
            if h.degree > left:
                continue
            if not h.divides(base_chain[slot]):
                continue
            if upper is not None and not h.divides(upper):
                continue
            rec(top_down + [h], left - int(h.degree), slot - 1)

    rec([], budget, s - 1)
    return out


def _chain_action(chain: list[FpPoly]) -> list[list[int]]:
    """Block companion matrix: multiplication by x on the direct sum of the
    cyclic modules F_p[x]/(h) along the chain."""
    dim = sum(int(h.degree) for h in chain)
    action = [[0] * dim for _ in range(dim)]
    offset = 0
    for h in chain:
        e = int(h.degree)
        p = h.field.p
        for j in range(e - 1):
            action[offset + j + 1][offset + j] = 1
        for i in range(e):
            action[offset + i][offset + e - 1] = (-h.coefficient(i)) % p
        offset += e
    return action


class _ClassAccumulator:
    """Isomorphism-class dedupe keyed by fingerprint."""

    def __init__(self):
        self.by_key: dict[tuple, list[tuple[FiniteGroupTable, QuotientFingerprint]]] = {}

    def add(self, table: FiniteGroupTable) -> bool:
        fp = fingerprint(table)
        bucket = self.by_key.setdefault(fp.key(), [])
        for kept, kfp in bucket:
            if fp == kfp and isomorphic(table, kept):
                return False
        bucket.append((table, fp))
        return True

    def sorted_classes(self) -> tuple[list[FiniteGroupTable], list[QuotientFingerprint]]:
        flat = [entry for bucket in self.by_key.values() for entry in bucket]
        flat.sort(key=lambda entry: entry[1].key())
        return [t for t, _ in flat], [fp for _, fp in flat]


def truncated_qu(source: ModulePresentation | LamplighterSpec, bound: int,
                 order_cap: int = 4096, bound_cap: int = 16) -> QuSet:
    """Every isomorphism class of quotients of order <= bound of N x| Z.

    A quotient in which the translation image has order m factors through the
    truncation at m, so m ranges over 1..bound. For each m, the kernel meets
    the base in a submodule whose quotient module has dimension at most
    log_p(bound); those quotient modules are enumerated as dominated divisor
    chains of x^m - 1 and each resulting small semidirect product is searched
    through its full normal-subgroup lattice.
    """
    if bound < 1 or bound > bound_cap:
        raise OrderBoundExceeded(f"bound {bound} outside 1..{bound_cap}")
    pres = _source_presentation(source)
    field = pres.field
    p = field.p
    dec = decompose(pres)
    cmax = 0
    while p ** (cmax + 1) <= bound:
        cmax += 1
    acc = _ClassAccumulator()
    for m in range(1, bound + 1):
        xm1 = x_pow_minus_one(field, m)
        base_chain = [g for g in (poly_gcd(f, xm1) for f in dec.invariant_factors)
                      if g.degree >= 1]
        base_chain.extend([xm1] * dec.free_rank)
        divisors = _small_divisors(xm1, min(cmax, m))
        seen_modules = _ClassAccumulator()
        for chain in _dominated_chains(base_chain, divisors, cmax):
            table = semidirect_table(field, _chain_action(chain), m, order_cap)
            if not seen_modules.add(table):
                continue
            for normal in enumerate_normal_subgroups(table, order_cap):
                if table.order // len(normal) <= bound:
                    acc.add(quotient_table(table, normal))
    classes, fps = acc.sorted_classes()
    return QuSet(bound=bound, classes=tuple(classes), fingerprints=tuple(fps))


@dataclass(frozen=True)
class QuComparison:
    """Outcome of an order-bounded quotient-set comparison."""

    bound: int
    equal: bool
    left_fingerprints: tuple[QuotientFingerprint, ...]
    right_fingerprints: tuple[QuotientFingerprint, ...]
    left_only: tuple[QuotientFingerprint, ...]
    right_only: tuple[QuotientFingerprint, ...]
    witness: tuple[str, QuotientFingerprint] | None


def compare_qu(left: ModulePresentation | LamplighterSpec,
               right: ModulePresentation | LamplighterSpec,
               bound: int, order_cap: int = 4096, bound_cap: int = 16) -> QuComparison:
    """Equality of bounded quotient sets, or the smallest-order witness class."""
    lset = truncated_qu(left, bound, order_cap, bound_cap)
    rset = truncated_qu(right, bound, order_cap, bound_cap)

    def missing_from(src: QuSet, dst: QuSet) -> list[QuotientFingerprint]:
        out = []
        for table, fp in zip(src.classes, src.fingerprints):
            hit = any(fp == ofp and isomorphic(table, other)
                      for other, ofp in zip(dst.classes, dst.fingerprints))
            if not hit:
                out.append(fp)
        return out

    left_only = missing_from(lset, rset)
    right_only = missing_from(rset, lset)
    witness = None
    candidates = ([("left", fp) for fp in left_only]
                  + [("right", fp) for fp in right_only])
    if candidates:
        witness = min(candidates, key=lambda t: t[1].key())
    return QuComparison(
        bound=bound,
        equal=not candidates,
        left_fingerprints=lset.fingerprints,
        right_fingerprints=rset.fingerprints,
        left_only=tuple(left_only),
        right_only=tuple(right_only),
        witness=witness,
    )


def admits_surjection_from_lamplighter(spec: LamplighterSpec,
                                       target: FiniteGroupTable) -> bool:
    """Brute-force search for a surjection from the integer-base lamp group.

    The free lamp group is presented by n lamp generators of order p whose
    translation conjugates pairwise commute; a surjection is a choice of n+1
    images satisfying those relations and generating the target.
    """
    if spec.is_cyclic:
        raise ValueError("expected the integer-base group")
    n = spec.n
    order = target.order
    lamp_candidates = [g for g in range(order)
                       if target.element_order(g) in (1, spec.field.p)]
    for tau in range(order):
        t_ord = target.element_order(tau)
        for alphas in product(lamp_candidates, repeat=n):
            conjugates = []
            ok = True
            for alpha in alphas:
                cur = alpha
                orbit = []
                for _ in range(t_ord):
                    orbit.append(cur)
                    cur = int(target.mul[int(target.mul[tau, cur]), target.inverse[tau]])
                conjugates.extend(orbit)
            for i, a in enumerate(conjugates):
                for b in conjugates[i + 1:]:
                    if target.mul[a, b] != target.mul[b, a]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            generated = subgroup_closure(target, list(alphas) + [tau])
            if generated.size == order:
                return True
    return False
