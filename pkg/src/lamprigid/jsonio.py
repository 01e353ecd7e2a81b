"""JSON schemas for all external interfaces.

Polynomial literal: a list of [exponent, coefficient] pairs, ascending order
not required, e.g. [[0,1],[1,1],[2,1]] for x^2 + x + 1. Negative exponents are
permitted only where a Laurent value is expected.

Matrix: {"p": 2, "rows": R, "cols": C, "entries": [[lit, ...], ...]} with
entries row-major.

Presentation: {"p": 2, "generators": g, "relations": [[lit, ...], ...]}.
Relations are row-major like matrix entries: relations[i][j] is the
coefficient of generator i in relator j, so there is one inner list per
generator and one column per relator. An empty list means no relations.

Candidate: {"p": 2, "n": 1, "presentation": {...}} (inner "p" optional, must
agree with the outer one when present).

Wreath element: {"lamps": [[index, [v1, ..., vn]], ...], "shift": k}.

Serialization of reports is canonical: keys sorted, two-space indent, newline
terminated, so identical reports produce identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import InvalidInput
from .fppoly import FieldSpec, FpPoly, LaurentPoly, laurent_canonicalize
from .laurent_modules import ModuleDecomposition, ModulePresentation
from .pipeline import CandidateGroup, RigidityReport
from .polymatrix import PolyMatrix
from .quotients import QuComparison, QuotientFingerprint, QuSet
from .wreath import LamplighterSpec, WreathElement, element


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise InvalidInput(message)


def _int_field(data: dict, key: str) -> int:
    _expect(key in data, f"missing field '{key}'")
    value = data[key]
    _expect(isinstance(value, int) and not isinstance(value, bool),
            f"field '{key}' must be an integer")
    return value


def parse_field(data: dict) -> FieldSpec:
    p = _int_field(data, "p")
    try:
        return FieldSpec(p)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc


def parse_poly_literal(field: FieldSpec, data: Any, allow_negative: bool = False
                       ) -> FpPoly | LaurentPoly:
    _expect(isinstance(data, list), "polynomial literal must be a list of [exp, coeff] pairs")
    pairs = []
    for item in data:
        _expect(isinstance(item, list) and len(item) == 2
                and all(isinstance(x, int) and not isinstance(x, bool) for x in item),
                f"bad term {item!r} in polynomial literal")
        e, c = item
        _expect(allow_negative or e >= 0,
                f"negative exponent {e} where a plain polynomial is expected")
        pairs.append((e, c))
    if allow_negative:
        return laurent_canonicalize(field, pairs)
    return FpPoly.from_pairs(field, pairs)


def poly_to_literal(f: FpPoly | LaurentPoly) -> list[list[int]]:
    if isinstance(f, LaurentPoly):
        return [[e, c] for e, c in f.terms()]
    return [[e, c] for e, c in enumerate(f.coeffs) if c]


def parse_matrix(data: Any) -> PolyMatrix:
    _expect(isinstance(data, dict), "matrix must be an object")
    field = parse_field(data)
    rows = _int_field(data, "rows")
    cols = _int_field(data, "cols")
    _expect(rows >= 0 and cols >= 0, "negative dimensions")
    entries = data.get("entries")
    _expect(isinstance(entries, list) and len(entries) == rows,
            f"'entries' must be a list of {rows} rows")
    grid = []
    for row in entries:
        _expect(isinstance(row, list) and len(row) == cols,
                f"each row must have {cols} entries")
        grid.append([parse_poly_literal(field, e) for e in row])
    if rows == 0 or cols == 0:
        return PolyMatrix.zeros(field, rows, cols)
    return PolyMatrix.from_rows(field, grid)


def matrix_to_json(m: PolyMatrix) -> dict:
    return {
        "p": m.field.p,
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[poly_to_literal(m.entry(i, j)) for j in range(m.cols)]
                    for i in range(m.rows)],
    }


def parse_presentation(data: Any, field: FieldSpec | None = None) -> ModulePresentation:
    _expect(isinstance(data, dict), "presentation must be an object")
    if "p" in data:
        inner = parse_field(data)
        _expect(field is None or inner == field,
                "presentation 'p' disagrees with the enclosing candidate")
        field = inner
    _expect(field is not None, "missing field 'p'")
    generators = _int_field(data, "generators")
    _expect(generators >= 1, "'generators' must be >= 1")
    relations = data.get("relations", [])
    _expect(isinstance(relations, list), "'relations' must be a list of rows")
    if not relations or all(isinstance(r, list) and not r for r in relations):
        return ModulePresentation.free(field, generators)
    _expect(len(relations) == generators,
            f"'relations' must have one row per generator ({generators})")
    width = len(relations[0])
    rows = []
    for row in relations:
        _expect(isinstance(row, list) and len(row) == width,
                "all relation rows must have the same number of relators")
        rows.append([parse_poly_literal(field, e, allow_negative=True) for e in row])
    return ModulePresentation.make(field, generators, rows)


def presentation_to_json(pres: ModulePresentation) -> dict:
    return {
        "p": pres.field.p,
        "generators": pres.generators,
        "relations": [[poly_to_literal(pres.relations.entry(i, j))
                       for j in range(pres.relations.cols)]
                      for i in range(pres.generators)] if pres.relations.cols else [],
    }


def parse_candidate(data: Any) -> CandidateGroup:
    _expect(isinstance(data, dict), "candidate must be an object")
    field = parse_field(data)
    n = _int_field(data, "n")
    _expect(n >= 1, "'n' must be >= 1")
    _expect("presentation" in data, "missing field 'presentation'")
    pres = parse_presentation(data["presentation"], field)
    return CandidateGroup(field, n, pres)


def candidate_to_json(c: CandidateGroup) -> dict:
    return {"p": c.field.p, "n": c.n, "presentation": presentation_to_json(c.presentation)}


def parse_wreath_element(spec: LamplighterSpec, data: Any) -> WreathElement:
    _expect(isinstance(data, dict), "wreath element must be an object")
    lamps = data.get("lamps", [])
    _expect(isinstance(lamps, list), "'lamps' must be a list of [index, vector] pairs")
    parsed = []
    for item in lamps:
        _expect(isinstance(item, list) and len(item) == 2, f"bad lamp entry {item!r}")
        idx, vec = item
        _expect(isinstance(idx, int) and not isinstance(idx, bool), "lamp index must be an integer")
        _expect(isinstance(vec, list) and len(vec) == spec.n
                and all(isinstance(v, int) and not isinstance(v, bool) for v in vec),
                f"lamp vector must be a list of {spec.n} integers")
        parsed.append((idx, vec))
    shift = data.get("shift", 0)
    _expect(isinstance(shift, int) and not isinstance(shift, bool), "'shift' must be an integer")
    return element(spec, parsed, shift)


def element_to_json(w: WreathElement) -> dict:
    return {"lamps": [[i, list(v)] for i, v in w.lamps], "shift": w.shift}


def fingerprint_to_json(fp: QuotientFingerprint) -> dict:
    return {
        "order": fp.order,
        "abelian_invariants": list(fp.abelian_invariants),
        "exponent": fp.exponent,
        "element_orders": list(fp.element_orders),
        "class_sizes": list(fp.class_sizes),
        "name": fp.describe(),
    }


def quset_to_json(qs: QuSet) -> dict:
    return {"bound": qs.bound, "classes": [fingerprint_to_json(fp) for fp in qs.fingerprints]}


def comparison_to_json(cmp: QuComparison) -> dict:
    return {
        "bound": cmp.bound,
        "equal": cmp.equal,
        "left_classes": [fingerprint_to_json(fp) for fp in cmp.left_fingerprints],
        "right_classes": [fingerprint_to_json(fp) for fp in cmp.right_fingerprints],
        "left_only": [fingerprint_to_json(fp) for fp in cmp.left_only],
        "right_only": [fingerprint_to_json(fp) for fp in cmp.right_only],
        "witness": None if cmp.witness is None else {
            "side": cmp.witness[0],
            "class": fingerprint_to_json(cmp.witness[1]),
        },
    }


def decomposition_to_json(dec: ModuleDecomposition,
                          torsion_orders: tuple[int, ...] | None = None) -> dict:
    out = {
        "free_rank": dec.free_rank,
        "invariant_factors": [poly_to_literal(f) for f in dec.invariant_factors],
    }
    if torsion_orders is not None:
        out["torsion_orders"] = list(torsion_orders)
    return out


def report_to_json(report: RigidityReport) -> dict:
    rank = report.rank_check
    epi = report.epimorphism
    return {
        "schema": "rigidity-report/1",
        "input": candidate_to_json(report.candidate),
        "seed": report.seed,
        "qu_bound": report.qu_bound,
        "order_cap": report.order_cap,
        "ab_check": {
            "passed": report.ab_check.passed,
            "coinvariant_dimension": report.ab_check.coinvariant_dimension,
            "expected_rank": report.ab_check.expected_rank,
        },
        "decomposition": decomposition_to_json(report.decomposition, report.torsion_orders),
        "chosen_m": report.chosen_m,
        "rank_check": None if rank is None else {
            "passed": rank.passed,
            "free_rank": rank.free_rank,
            "target_rank": rank.target_rank,
            "m": rank.m,
            "torsion_degree_sum": rank.torsion_degree_sum,
            "inequality_lhs": rank.inequality_lhs,
            "inequality_rhs": rank.inequality_rhs,
            "inequality_holds": rank.inequality_holds,
        },
        "epimorphism": None if epi is None else {
            "matrix": matrix_to_json(epi.phi),
            "law_check": {"samples": epi.law_check.samples, "seed": epi.law_check.seed},
        },
        "qu_comparison": {
            "sides": {"left": "candidate", "right": "lamplighter"},
            **comparison_to_json(report.qu_comparison),
        },
        "certified": report.certified,
        "failed_stage": report.failed_stage,
        "conclusion": report.conclusion,
    }
