"""Framework and certificate documents: exact JSON round-tripping.

Rational values serialize as canonical ``"a/b"`` strings (plain integers
when the denominator is one) so no floating-point parse ambiguity can creep
into coordinates or LP certificates.  Floating stress data serializes with
17 significant digits, which round-trips IEEE doubles bit-faithfully.

Canonical serialization sorts keys and indents consistently; parsing then
reserializing a canonical document reproduces it byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from .engine import CertificateChain, IterationRecord, Verdict
from .geometry import BipartiteFramework, Point
from .separation import RadonCertificate, SeparationCertificate, SymmetricMatrix
from .stress import StressCertificate

FORMAT_VERSION = 1


class ParseError(ValueError):
    """Malformed document; the message carries the field locus."""


class DimensionMismatch(ParseError):
    """Coordinates disagree with the declared dimension."""


# -- rational scalars --------------------------------------------------------


def _rat_to_str(v: Fraction) -> str:
    return str(v)


def _rat_from(value: Any, locus: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{locus}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{locus}: invalid rational {value!r} ({exc})") from None
    raise ParseError(f"{locus}: expected an integer or 'a/b' string")


def _float_to_str(v: float) -> str:
    return format(float(v), ".17g")


# -- framework documents -----------------------------------------------------


def framework_to_document(
    fw: BipartiteFramework,
    name: Optional[str] = None,
    expected_verdict: Optional[str] = None,
) -> dict:
    doc: dict[str, Any] = {
        "format": FORMAT_VERSION,
        "d": fw.dimension,
        "P": [[_rat_to_str(c) for c in pt] for pt in fw.points_p],
        "Q": [[_rat_to_str(c) for c in pt] for pt in fw.points_q],
    }
    if name is not None:
        doc["name"] = name
    if expected_verdict is not None:
        doc["expected_verdict"] = expected_verdict
    return doc


def serialize_framework(
    fw: BipartiteFramework,
    name: Optional[str] = None,
    expected_verdict: Optional[str] = None,
) -> str:
    return canonical_json(framework_to_document(fw, name, expected_verdict))


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _points_from(doc: dict, key: str, d: int) -> tuple[Point, ...]:
    raw = doc.get(key)
    if not isinstance(raw, list):
        raise ParseError(f"{key}: expected a list of coordinate lists")
    points = []
    for idx, coords in enumerate(raw):
        locus = f"{key}[{idx}]"
        if not isinstance(coords, list):
            raise ParseError(f"{locus}: expected a coordinate list")
        if len(coords) != d:
            raise DimensionMismatch(
                f"{locus}: got {len(coords)} coordinates in dimension {d}"
            )
        points.append(
            tuple(_rat_from(c, f"{locus}[{k}]") for k, c in enumerate(coords))
        )
    return tuple(points)


def parse_framework_document(text: str) -> tuple[BipartiteFramework, dict]:
    """Parse a framework document; returns the framework and its metadata."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    d = doc.get("d")
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        raise ParseError("d: expected a nonnegative integer dimension")
    points_p = _points_from(doc, "P", d)
    points_q = _points_from(doc, "Q", d)
    if len(points_p) < 1:
        raise ParseError("P: must contain at least one point")
    fw = BipartiteFramework(dimension=d, points_p=points_p, points_q=points_q)
    meta = {k: doc[k] for k in ("name", "expected_verdict") if k in doc}
    return fw, meta


def parse_framework(text: str) -> BipartiteFramework:
    return parse_framework_document(text)[0]


# -- certificate documents ---------------------------------------------------


def _matrix_to_doc(matrix: SymmetricMatrix) -> dict:
    return {
        "order": matrix.order,
        "upper": [_rat_to_str(v) for v in matrix.upper],
    }


def _matrix_from(doc: dict, locus: str) -> SymmetricMatrix:
    order = doc.get("order")
    upper = doc.get("upper")
    if not isinstance(order, int) or not isinstance(upper, list):
        raise ParseError(f"{locus}: malformed symmetric matrix")
    return SymmetricMatrix.from_upper(
        order, [_rat_from(v, f"{locus}.upper[{k}]") for k, v in enumerate(upper)]
    )


def _record_to_doc(rec: IterationRecord) -> dict:
    doc: dict[str, Any] = {
        "index": rec.index,
        "kind": rec.kind,
        "known_p": list(rec.known_p),
        "known_q": list(rec.known_q),
        "support_p": list(rec.support_p),
        "support_q": list(rec.support_q),
    }
    if rec.cone_point is not None:
        doc["cone_point"] = [_rat_to_str(c) for c in rec.cone_point]
    if rec.functional is not None:
        doc["functional"] = [_rat_to_str(c) for c in rec.functional]
    if rec.radon is not None:
        doc["balance"] = {
            "lambdas": [_rat_to_str(v) for v in rec.radon.lambdas],
            "mus": [_rat_to_str(v) for v in rec.radon.mus],
        }
    if rec.separation is not None:
        doc["separation"] = {
            "matrix": _matrix_to_doc(rec.separation.matrix),
            "delta": _rat_to_str(rec.separation.delta),
        }
    if rec.margin is not None:
        doc["margin"] = _rat_to_str(rec.margin)
    if rec.stress is not None:
        doc["stress"] = {
            "omega": [
                [_float_to_str(v) for v in row] for row in rec.stress.omega.tolist()
            ],
            "rank": rec.stress.rank,
            "min_eigenvalue": _float_to_str(rec.stress.min_eigenvalue),
            "residual": _float_to_str(rec.stress.residual),
            "lambdas": [_rat_to_str(v) for v in rec.stress.lambdas],
            "mus": [_rat_to_str(v) for v in rec.stress.mus],
        }
    return doc


def _record_from(doc: dict, locus: str) -> IterationRecord:
    def rats(key: str):
        return tuple(
            _rat_from(v, f"{locus}.{key}[{k}]") for k, v in enumerate(doc.get(key, []))
        )

    radon = None
    if "balance" in doc:
        bal = doc["balance"]
        radon = RadonCertificate(
            lambdas=tuple(
                _rat_from(v, f"{locus}.balance.lambdas[{k}]")
                for k, v in enumerate(bal.get("lambdas", []))
            ),
            mus=tuple(
                _rat_from(v, f"{locus}.balance.mus[{k}]")
                for k, v in enumerate(bal.get("mus", []))
            ),
        )
    separation = None
    if "separation" in doc:
        sep = doc["separation"]
        separation = SeparationCertificate(
            matrix=_matrix_from(sep.get("matrix", {}), f"{locus}.separation.matrix"),
            delta=_rat_from(sep.get("delta"), f"{locus}.separation.delta"),
        )
    stress = None
    if "stress" in doc:
        st = doc["stress"]
        try:
            omega = np.array([[float(v) for v in row] for row in st["omega"]])
        except (TypeError, ValueError, KeyError):
            raise ParseError(f"{locus}.stress.omega: malformed matrix") from None
        stress = StressCertificate(
            omega=omega,
            rank=int(st["rank"]),
            min_eigenvalue=float(st["min_eigenvalue"]),
            residual=float(st["residual"]),
            lambdas=tuple(
                _rat_from(v, f"{locus}.stress.lambdas[{k}]")
                for k, v in enumerate(st.get("lambdas", []))
            ),
            mus=tuple(
                _rat_from(v, f"{locus}.stress.mus[{k}]")
                for k, v in enumerate(st.get("mus", []))
            ),
        )
    margin = None
    if "margin" in doc:
        margin = _rat_from(doc["margin"], f"{locus}.margin")
    return IterationRecord(
        index=int(doc.get("index", -1)),
        kind=str(doc.get("kind", "")),
        known_p=tuple(int(v) for v in doc.get("known_p", [])),
        known_q=tuple(int(v) for v in doc.get("known_q", [])),
        cone_point=rats("cone_point") if "cone_point" in doc else None,
        functional=rats("functional") if "functional" in doc else None,
        support_p=tuple(int(v) for v in doc.get("support_p", [])),
        support_q=tuple(int(v) for v in doc.get("support_q", [])),
        radon=radon,
        separation=separation,
        margin=margin,
        stress=stress,
    )


def chain_to_document(chain: CertificateChain, tol: float = 1e-8) -> dict:
    return {
        "format": FORMAT_VERSION,
        "verdict": chain.verdict.value,
        "tolerance": _float_to_str(tol),
        "input": framework_to_document(chain.framework),
        "iterations": [_record_to_doc(rec) for rec in chain.records],
    }


def serialize_chain(chain: CertificateChain, tol: float = 1e-8) -> str:
    return canonical_json(chain_to_document(chain, tol))


def parse_chain(text: str) -> CertificateChain:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    verdict_raw = doc.get("verdict")
    try:
        verdict = Verdict(verdict_raw)
    except ValueError:
        raise ParseError(f"verdict: unknown value {verdict_raw!r}") from None
    input_doc = doc.get("input")
    if not isinstance(input_doc, dict):
        raise ParseError("input: expected the framework echo")
    fw, _ = parse_framework_document(json.dumps(input_doc))
    raw_records = doc.get("iterations")
    if not isinstance(raw_records, list):
        raise ParseError("iterations: expected a list")
    records = tuple(
        _record_from(rec, f"iterations[{k}]") for k, rec in enumerate(raw_records)
    )
    return CertificateChain(framework=fw, records=records, verdict=verdict)
