"""Lossless JSON encoding of series, vector forms, Jacobi series and form polynomials.

Rationals travel as "p/q" strings.  A PiPoly is a list of [pi_power, "p/q"]
pairs.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction

from .correspondences import FormPolynomial
from .jacobi import JacSeries
from .modular import QuasiElement
from .series import PiPoly, QSeries, ZPoly
from .symtensor import VVForm

FORMAT_VERSION = 1


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _unfrac(s) -> Fraction:
    return Fraction(s)


def pipoly_to_json(p: PiPoly) -> list:
    return [[k, _frac(v)] for k, v in sorted(p.items())]


def pipoly_from_json(data) -> PiPoly:
    return PiPoly({int(k): _unfrac(v) for k, v in data})


def series_to_json(s: QSeries) -> dict:
    coeffs = [[e, pipoly_to_json(c)] for e, c in s.coefficients().items()]
    return {"type": "qseries", "den": s.den, "order": _frac(s.order), "coeffs": coeffs}


def series_from_json(d: dict) -> QSeries:
    parts: dict[int, dict[int, Fraction]] = {}
    for e, poly in d["coeffs"]:
        for p, v in poly:
            parts.setdefault(int(p), {})[int(e)] = _unfrac(v)
    return QSeries(parts, _unfrac(d["order"]), int(d["den"]))


def zpoly_to_json(z: ZPoly) -> list:
    return [series_to_json(c) for c in z.coeffs]


def zpoly_from_json(data) -> ZPoly:
    return ZPoly([series_from_json(c) for c in data])


def vvform_to_json(F: VVForm) -> dict:
    return {"type": "vvform", "weight": F.weight, "n": F.n, "components": [zpoly_to_json(c) for c in F.components]}


def vvform_from_json(d: dict) -> VVForm:
    return VVForm(int(d["weight"]), tuple(zpoly_from_json(c) for c in d["components"]), d.get("n"))


def jacobi_to_json(phi: JacSeries) -> dict:
    """Rows as [[q_exponent, [[zeta_power, pipoly], ...]], ...]."""
    rows = [[_frac(e), [[r, pipoly_to_json(c)] for r, c in row.items()]] for e, row in phi.rows().items()]
    return {"type": "jacobi", "weight": phi.weight, "index": phi.index, "order": _frac(phi.order), "rows": rows}


def jacobi_from_json(d: dict) -> JacSeries:
    order = _unfrac(d["order"])
    by_r: dict[int, dict] = {}
    for e, row in d["rows"]:
        e = _unfrac(e)
        for r, poly in row:
            by_r.setdefault(int(r), {})[e] = pipoly_from_json(poly)
    entries = {}
    for r, coeffs in by_r.items():
        den = math.lcm(1, *(e.denominator for e in coeffs))
        parts: dict[int, dict[int, Fraction]] = {}
        for e, c in coeffs.items():
            for p, v in c.items():
                parts.setdefault(p, {})[int(e * den)] = v
        entries[r] = QSeries(parts, order, den)
    return JacSeries(entries, int(d["weight"]), int(d["index"]), order)


def quasi_to_json(f: QuasiElement) -> dict:
    return {"type": "quasi", "weight": f.weight,
            "terms": [[list(m), pipoly_to_json(c)] for m, c in sorted(f.terms.items())]}


def quasi_from_json(d: dict) -> QuasiElement:
    return QuasiElement({tuple(m): pipoly_from_json(c) for m, c in d["terms"]}, int(d["weight"]))


def polynomial_to_json(F: FormPolynomial) -> dict:
    return {"type": "polynomial", "kind": F.kind, "weight": F.weight, "coeffs": [to_json(c) for c in F.coeffs]}


def polynomial_from_json(d: dict) -> FormPolynomial:
    return FormPolynomial(d["kind"], int(d["weight"]), tuple(from_json(c) for c in d["coeffs"]))


_ENCODERS = [
    (QSeries, series_to_json),
    (VVForm, vvform_to_json),
    (JacSeries, jacobi_to_json),
    (QuasiElement, quasi_to_json),
    (FormPolynomial, polynomial_to_json),
]

_DECODERS = {
    "qseries": series_from_json,
    "vvform": vvform_from_json,
    "jacobi": jacobi_from_json,
    "quasi": quasi_from_json,
    "polynomial": polynomial_from_json,
}


def to_json(obj) -> dict:
    for cls, enc in _ENCODERS:
        if isinstance(obj, cls):
            return enc(obj)
    if isinstance(obj, (list, tuple)):
        return {"type": "list", "items": [to_json(x) for x in obj]}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_json(d: dict):
    kind = d.get("type")
    if kind == "list":
        return [from_json(x) for x in d["items"]]
    if kind not in _DECODERS:
        raise ValueError(f"unknown payload type {kind!r}")
    return _DECODERS[kind](d)


def dumps(obj, **kw) -> str:
    return json.dumps(to_json(obj), **kw)


def loads(text: str):
    return from_json(json.loads(text))
