"""Named objects and scalar expressions accepted on the command line.

Scalar expressions are polynomials in E2, E4, E6 and delta with rational
coefficients; a trailing prime differentiates (D = Pi theta), so
``delta''/2 + 13*E4*E6'`` is valid.  ``@path.json`` loads a serialized object.

Compound operands:

* ``V(k,n,l;expr)``: the vector-valued form V_map(expr, k, n, l)
* ``Q(m;expr)``: the quasimodular polynomial Q_map(expr, m)
* ``MP(mu;e0|e1|...)`` and ``QP(lam;e0|e1|...)``: modular / quasimodular
  polynomials with the listed coefficients (``0`` is the zero of the right weight)
"""
from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

import sympy

from .errors import UnknownName
from .jacobi import jacobi_eisenstein, phi_tilde
from .modular import DELTA, E2, E4, E6, QuasiElement, eta
from .series import PiPoly
from .symtensor import u_hat, u_hat_dual, v_hat

SCALARS = {"E2": E2, "E4": E4, "E6": E6, "delta": DELTA}
JACOBI = {
    "phi-2,1": lambda order: phi_tilde(-2, order),
    "phi0,1": lambda order: phi_tilde(0, order),
    "E4,1": lambda order: jacobi_eisenstein(4, order),
    "E6,1": lambda order: jacobi_eisenstein(6, order),
}
VECTORS = {"vhat": v_hat, "uhat": u_hat, "uhatdual": u_hat_dual}
NAMES = sorted([*SCALARS, "eta", *JACOBI, "vhat(n)", "uhat(n)", "uhatdual(n)"])

_PRIMED = re.compile(r"\b(E2|E4|E6|delta|Delta)('+)")
_VECTOR = re.compile(r"^(vhat|uhat|uhatdual)\((\d+)\)$")
_COMPOUND = re.compile(r"^(V|Q|MP|QP)\(([^;]*);(.*)\)$", re.S)


def parse_scalar(text: str) -> QuasiElement:
    """Parse a homogeneous polynomial expression into a QuasiElement."""
    symbols = {}
    values = {}

    def sym_for(name: str, primes: int):
        name = "delta" if name == "Delta" else name
        key = f"{name}_d{primes}"
        if key not in symbols:
            symbols[key] = sympy.Symbol(key)
            values[symbols[key]] = SCALARS[name].derive(primes)
        return key

    body = _PRIMED.sub(lambda m: sym_for(m.group(1), len(m.group(2))), text.strip())
    for name in ("E2", "E4", "E6", "delta", "Delta"):
        if re.search(rf"\b{name}\b", body):
            sym_for(name, 0)
            body = re.sub(rf"\b{name}\b", f"{'delta' if name == 'Delta' else name}_d0", body)
    try:
        expr = sympy.sympify(body.replace("^", "**"), locals=symbols, rational=True)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise UnknownName(f"cannot parse scalar expression {text!r}: {exc}") from exc
    stray = expr.free_symbols - set(values)
    if stray:
        raise UnknownName(f"unknown names {sorted(map(str, stray))} in {text!r}")
    gens = sorted(values, key=str)
    if not gens:
        c = Fraction(str(expr))
        return QuasiElement.constant(c)
    poly = sympy.Poly(sympy.expand(expr), *gens)
    acc = None
    for exps, coeff in poly.terms():
        term = QuasiElement.constant(1)
        for g, e in zip(gens, exps):
            if e:
                term = term * values[g] ** e
        term = term * PiPoly.coerce(Fraction(int(coeff.p), int(coeff.q)))
        acc = term if acc is None else acc + term
    return acc if acc is not None else QuasiElement.zero(0)


def _poly_coeffs(body: str, weight_of) -> list[QuasiElement]:
    out = []
    for r, piece in enumerate(body.split("|")):
        piece = piece.strip()
        out.append(QuasiElement.zero(weight_of(r)) if piece in ("0", "") else parse_scalar(piece))
    return out


def _compound(kind: str, params: str, body: str, order: int):
    from .correspondences import Q_map, V_map, modular_polynomial, quasi_polynomial

    try:
        nums = [int(x) for x in params.split(",")]
    except ValueError as exc:
        raise UnknownName(f"bad parameters {params!r} for {kind}(...)") from exc
    if kind == "V" and len(nums) == 3:
        k, n, ell = nums
        return V_map(parse_scalar(body), k, n, ell, order)
    if kind == "Q" and len(nums) == 1:
        return Q_map(parse_scalar(body), nums[0])
    if kind == "MP" and len(nums) == 1:
        return modular_polynomial(nums[0], _poly_coeffs(body, lambda r: nums[0] + 2 * r))
    if kind == "QP" and len(nums) == 1:
        return quasi_polynomial(nums[0], _poly_coeffs(body, lambda r: nums[0] - 2 * r))
    raise UnknownName(f"wrong number of parameters for {kind}(...)")


def resolve(name: str, order: int = 30):
    """Look up a registry name, a vector name like vhat(2), a scalar expression or @file.json."""
    name = name.strip()
    if name.startswith("@"):
        from .serialize import loads

        return loads(Path(name[1:]).read_text())
    if name in JACOBI:
        return JACOBI[name](order)
    if name == "eta":
        return eta(order)
    m = _VECTOR.match(name)
    if m:
        return VECTORS[m.group(1)](int(m.group(2)), order)
    m = _COMPOUND.match(name)
    if m:
        return _compound(m.group(1), m.group(2), m.group(3), order)
    return parse_scalar(name)
