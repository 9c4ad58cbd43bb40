"""Maps between scalar forms, vector-valued forms and (quasi)modular polynomials.

Conventions used throughout:

* A quasimodular polynomial of weight lam is sum_r f_r X^r with f_r of weight
  lam - 2r.  A modular polynomial of weight mu has f_r of weight mu + 2r.
* D = Pi * theta, both on QuasiElements (symbolically) and on q-series.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .brackets import gen_binom, rc_pair, rc_scalar_vector
from .errors import (
    DepthExceeded,
    NotInImage,
    ResidualZDependence,
    WeightHypothesisViolated,
    WeightMismatch,
    WeightTooSmall,
)
from .modular import QuasiElement, basis_Mk, identify, quasi_basis
from .series import GroupElt, PiPoly, QSeries, cocycle_J, cocycle_K, eval_numeric
from .symtensor import VVForm, frame_coords, u_hat, u_hat_dual, v_hat

MODULAR = "modular"
QUASI = "quasi"


@dataclass(frozen=True)
class FormPolynomial:
    """sum_r coeffs[r] X^r; ``kind`` fixes how coefficient weights step with r."""

    kind: str
    weight: int
    coeffs: tuple

    def __post_init__(self):
        if self.kind not in (MODULAR, QUASI):
            raise ValueError(f"unknown polynomial kind {self.kind!r}")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        for r, f in enumerate(self.coeffs):
            if isinstance(f, QuasiElement) and f.weight != self.coeff_weight(r):
                raise WeightMismatch(f"coefficient {r} has weight {f.weight}, expected {self.coeff_weight(r)}")
            if self.kind == MODULAR and isinstance(f, QuasiElement) and not f.is_modular():
                raise DepthExceeded(f"coefficient {r} of a modular polynomial has depth {f.depth}")

    @property
    def degree_bound(self) -> int:
        return len(self.coeffs) - 1

    def coeff_weight(self, r: int) -> int:
        return self.weight + 2 * r if self.kind == MODULAR else self.weight - 2 * r

    def coeff(self, r: int):
        if r < len(self.coeffs):
            return self.coeffs[r]
        return QuasiElement.zero(self.coeff_weight(r))

    def padded(self, m: int) -> "FormPolynomial":
        if m < self.degree_bound and any(not _is_zero(c) for c in self.coeffs[m + 1:]):
            raise DepthExceeded(f"polynomial has nonzero coefficients beyond X^{m}")
        return FormPolynomial(self.kind, self.weight, tuple(self.coeff(r) for r in range(m + 1)))

    def qexp(self, order: int) -> list[QSeries]:
        return [c.to_qexp(order) if isinstance(c, QuasiElement) else c for c in self.coeffs]

    def __add__(self, other: "FormPolynomial") -> "FormPolynomial":
        if (self.kind, self.weight) != (other.kind, other.weight):
            raise WeightMismatch("polynomials of different kind or weight")
        m = max(self.degree_bound, other.degree_bound)
        return FormPolynomial(self.kind, self.weight, tuple(self.coeff(r) + other.coeff(r) for r in range(m + 1)))

    def scale(self, c) -> "FormPolynomial":
        return FormPolynomial(self.kind, self.weight, tuple(f * c for f in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, FormPolynomial) or (self.kind, self.weight) != (other.kind, other.weight):
            return NotImplemented if not isinstance(other, FormPolynomial) else False
        m = max(self.degree_bound, other.degree_bound)
        return all(_same(self.coeff(r), other.coeff(r)) for r in range(m + 1))

    __hash__ = None

    def evaluate(self, z: complex, x: complex, order: int = 40) -> complex:
        return sum(s.evaluate(z) * x**r for r, s in enumerate(self.qexp(order)))


def _is_zero(f) -> bool:
    return f.is_zero()


def _same(a, b) -> bool:
    if isinstance(a, QuasiElement) and isinstance(b, QuasiElement):
        return a == b
    order = min(x.order for x in (a, b) if isinstance(x, QSeries)) if any(isinstance(x, QSeries) for x in (a, b)) else 30
    order = int(order)
    sa = a.to_qexp(order) if isinstance(a, QuasiElement) else a
    sb = b.to_qexp(order) if isinstance(b, QuasiElement) else b
    return sa.agrees(sb, order)


def modular_polynomial(weight: int, coeffs: Sequence[QuasiElement]) -> FormPolynomial:
    return FormPolynomial(MODULAR, weight, tuple(coeffs))


def quasi_polynomial(weight: int, coeffs: Sequence) -> FormPolynomial:
    return FormPolynomial(QUASI, weight, tuple(coeffs))


def modular_polynomial_basis(m: int, mu: int) -> list[FormPolynomial]:
    """Basis of modular polynomials of weight mu and degree <= m: one basis form per slot."""
    out = []
    for r in range(m + 1):
        for b in basis_Mk(mu + 2 * r).elements():
            coeffs = [QuasiElement.zero(mu + 2 * s) for s in range(m + 1)]
            coeffs[r] = b
            out.append(modular_polynomial(mu, coeffs))
    return out


def quasi_polynomial_basis(m: int, lam: int) -> list[FormPolynomial]:
    """Images under Q_map of the depth <= m quasimodular basis of weight lam."""
    return [Q_map(b, m) for b in quasi_basis(lam, m)]


# ---------------------------------------------------------------------------
# V, decomposition and W
# ---------------------------------------------------------------------------


def alpha_coeff(lam: int, w: int, r: int, n: int) -> Fraction:
    """(-1)^r C(lam+w-1, w-r) C(w-n-1, r)."""
    if r < 0 or r > w:
        return Fraction(0)
    return (-1) ** r * gen_binom(lam + w - 1, w - r) * gen_binom(w - n - 1, r)


def _series(g, order, weight=None) -> tuple[QSeries, int | None]:
    if isinstance(g, QuasiElement):
        return g.to_qexp(order), g.weight
    return g, weight


def V_map(g, k: int, n: int, ell: int, order: int = 30, weight: int | None = None) -> VVForm:
    """[g, v_hat_n] of order n - ell and weights (k - n + 2 ell, -n).

    ``g`` is a QuasiElement (its weight is checked) or a QSeries whose weight
    may be passed explicitly.
    """
    if not 0 <= ell <= n:
        raise ValueError(f"slot {ell} outside 0..{n}")
    lam = k - n + 2 * ell
    series, w = _series(g, order, weight)
    if isinstance(g, QuasiElement) and not g.is_modular():
        raise WeightMismatch("V_map expects a modular (depth 0) input")
    if w is not None and w != lam:
        raise WeightMismatch(f"slot {ell} of (k, n) = ({k}, {n}) needs weight {lam}, got {w}")
    out = rc_scalar_vector(series, v_hat(n, series.order), n - ell, lam, -n)
    return VVForm(k, out.components, n)


def V_sum(gs: Sequence, k: int, n: int, order: int = 30) -> VVForm:
    """sum_ell V_map(gs[ell], k, n, ell)."""
    acc = VVForm.zero(k, n, order)
    for ell, g in enumerate(gs):
        if g is not None and not g.is_zero():
            acc = acc + V_map(g, k, n, ell, order)
    return acc


def peel_constant(k: int, n: int, t: int) -> Fraction:
    """Frame coordinate t of V_map(g, k, n, t) divided by g."""
    return math.factorial(n - t) * alpha_coeff(k - n + 2 * t, n - t, 0, n)


def decompose(F: VVForm, k: int, n: int) -> list[QuasiElement]:
    """Write F as sum_ell V_map(g_ell, k, n, ell) with modular g_ell.

    Peels the lowest nonvanishing frame coordinate at each step.  Raises
    NotInImage when a coordinate is not modular of the slot weight or the slot
    is degenerate (its peel constant vanishes).
    """
    if F.rank != n + 1:
        raise ValueError(f"rank {F.rank} does not match n = {n}")
    order = int(F.order)
    gs = [QuasiElement.zero(k - n + 2 * ell) for ell in range(n + 1)]
    last = -1
    while True:
        try:
            coords = frame_coords(F)
        except ResidualZDependence as exc:
            raise NotInImage(f"frame coordinates are not Z-free: {exc}") from exc
        t = coords.first_nonzero()
        if t is None:
            return gs
        if t <= last:
            raise NotInImage(f"peeling did not clear slot {t}")
        c = peel_constant(k, n, t)
        if c == 0:
            raise NotInImage(f"slot {t} is degenerate for (k, n) = ({k}, {n})")
        weight = k - n + 2 * t
        cand = coords.entries[t].scale(1 / c)
        if weight < 0:
            raise NotInImage(f"nonzero coordinate in negative weight {weight}")
        g = identify(cand, weight, 0)
        gs[t] = g
        F = F - V_map(g, k, n, t, order)
        last = t


def W_map(F: VVForm, k: int, n: int, literal: bool = False) -> list[QSeries]:
    """Entries [[u, F]]_ell of weights (-n, k), ell = 0..n.

    By default u is the form (C(n, i) (-z)^i) that transforms under the
    inverse transpose of rho_n.  ``literal=True`` pairs with (1, -z, ..., (-z)^n)
    instead, which leaves residual Z-dependence once n >= 2.
    """
    if F.rank != n + 1:
        raise ValueError(f"rank {F.rank} does not match n = {n}")
    u = (u_hat if literal else u_hat_dual)(n, F.order)
    return [rc_pair(u, F, ell, -n, k) for ell in range(n + 1)]


# ---------------------------------------------------------------------------
# U and its inverse
# ---------------------------------------------------------------------------


def _check_k_gt_n(k: int, n: int, allow_small_weight: bool):
    if k <= n:
        if not allow_small_weight:
            raise WeightHypothesisViolated(f"k = {k} must exceed n = {n}")
        warnings.warn(f"k = {k} <= n = {n}: no injectivity guarantee", stacklevel=3)


def U_map(F: FormPolynomial, k: int, n: int, order: int = 30, allow_small_weight: bool = False) -> VVForm:
    """sum_ell (-1)^n (n - ell)! D^ell(v_hat_n) f_ell for F of weight k + n."""
    _check_k_gt_n(k, n, allow_small_weight)
    if F.kind != QUASI or F.weight != k + n:
        raise WeightMismatch(f"expected a quasimodular polynomial of weight {k + n}")
    if F.degree_bound > n:
        F = F.padded(n)
    v = v_hat(n, order)
    acc = VVForm.zero(k, n, order)
    sign = (-1) ** n
    for ell, f in enumerate(F.qexp(order)):
        if f.is_zero():
            continue
        c = sign * math.factorial(n - ell)
        acc = acc + VVForm(k, tuple(comp * f * c for comp in v.derive(ell).components), n)
    return acc


def U_inverse(G: VVForm, k: int, n: int, allow_small_weight: bool = False,
              as_elements: bool = True) -> FormPolynomial:
    """Read f_ell = (-1)^n / n! [Z^(n-ell)] G_0, then re-apply U_map as a checksum.

    With ``as_elements`` the coefficients are identified as quasimodular forms
    of weight k + n - 2 ell and depth <= n - ell; otherwise raw q-series.
    """
    _check_k_gt_n(k, n, allow_small_weight)
    if G.rank != n + 1:
        raise ValueError(f"rank {G.rank} does not match n = {n}")
    order = int(G.order)
    first = G.components[0]
    if first.degree > n:
        raise NotInImage(f"first component has Z-degree {first.degree} > {n}")
    scale = Fraction((-1) ** n, math.factorial(n))
    raw = [first.coeff(n - ell).scale(scale) for ell in range(n + 1)]
    coeffs: list = raw
    if as_elements:
        coeffs = []
        for ell, s in enumerate(raw):
            try:
                coeffs.append(identify(s, k + n - 2 * ell, n - ell))
            except NotInImage as exc:
                raise NotInImage(f"coefficient {ell} is not quasimodular: {exc}") from exc
    F = quasi_polynomial(k + n, coeffs)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        back = U_map(F, k, n, order, allow_small_weight=True)
    if not back.agrees(G, order):
        raise NotInImage("re-applying U_map does not reproduce the input")
    return F


# ---------------------------------------------------------------------------
# Lambda / Xi
# ---------------------------------------------------------------------------


def _check_lam(lam: int, m: int):
    if lam <= 2 * m:
        raise WeightTooSmall(f"weight {lam} must exceed 2m = {2 * m}")


def Lambda_map(F: FormPolynomial, m: int, lam: int) -> FormPolynomial:
    """Modular polynomial of weight lam - 2m to quasimodular polynomial of weight lam.

    f^L_k = 1/k! sum_{r=0}^{m-k} D^r f_{m-k-r} / (r! (lam - 2k - r - 1)!)
    """
    _check_lam(lam, m)
    if F.kind != MODULAR or F.weight != lam - 2 * m:
        raise WeightMismatch(f"expected a modular polynomial of weight {lam - 2 * m}")
    F = F.padded(m)
    out = []
    for k in range(m + 1):
        acc = QuasiElement.zero(lam - 2 * k)
        for r in range(m - k + 1):
            f = F.coeff(m - k - r)
            if f.is_zero():
                continue
            den = math.factorial(k) * math.factorial(r) * math.factorial(lam - 2 * k - r - 1)
            acc = acc + f.derive(r) * Fraction(1, den)
        out.append(acc)
    return quasi_polynomial(lam, out)


def Xi_map(F: FormPolynomial, m: int, lam: int) -> FormPolynomial:
    """Quasimodular polynomial of weight lam to modular polynomial of weight lam - 2m.

    f^X_k = (lam+2k-2m-1) sum_{r=0}^k (-1)^r/r! (m-k+r)! (2k+lam-2m-r-2)! D^r f_{m-k+r}
    """
    _check_lam(lam, m)
    if F.kind != QUASI or F.weight != lam:
        raise WeightMismatch(f"expected a quasimodular polynomial of weight {lam}")
    F = F.padded(m)
    mu = lam - 2 * m
    out = []
    for k in range(m + 1):
        acc = QuasiElement.zero(mu + 2 * k)
        for r in range(k + 1):
            f = F.coeff(m - k + r)
            if f.is_zero():
                continue
            # (a)(a-1-r)! collapses to a! at r = 0, which also covers a = 0
            a = lam + 2 * k - 2 * m - 1
            fact = math.factorial(a) if r == 0 else a * math.factorial(a - 1 - r)
            c = Fraction((-1) ** r * math.factorial(m - k + r) * fact, math.factorial(r))
            acc = acc + f.derive(r) * c
        if not acc.is_modular():
            raise NotInImage(f"coefficient {k} came out with depth {acc.depth}; input is not quasimodular")
        out.append(acc)
    return modular_polynomial(mu, out)


# ---------------------------------------------------------------------------
# Q and its inverse
# ---------------------------------------------------------------------------


def Q_map(f: QuasiElement, m: int) -> FormPolynomial:
    """Substitute E2 -> E2 + (12/Pi) X and collect powers of X."""
    if f.depth > m:
        raise DepthExceeded(f"depth {f.depth} exceeds {m}")
    lam = f.weight
    coeffs = [dict() for _ in range(m + 1)]
    for (a, b, c), coeff in f.terms.items():
        for r in range(a + 1):
            term = coeff * PiPoly.pi(-r, math.comb(a, r) * 12**r)
            key = (a - r, b, c)
            coeffs[r][key] = coeffs[r][key] + term if key in coeffs[r] else term
    return quasi_polynomial(lam, [QuasiElement(cs, lam - 2 * r) for r, cs in enumerate(coeffs)])


def Q_inverse(F: FormPolynomial) -> QuasiElement:
    """F(z, 0)."""
    if F.kind != QUASI:
        raise WeightMismatch("Q_inverse expects a quasimodular polynomial")
    return F.coeff(0)


# ---------------------------------------------------------------------------
# Numeric transformation check for quasimodular polynomials
# ---------------------------------------------------------------------------


@dataclass
class PolynomialCheck:
    gamma: GroupElt
    z: complex
    x: complex
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


def verify_quasi_polynomial(F: FormPolynomial, g: GroupElt, z: complex, x: complex = 0.3 + 0.2j,
                            order: int = 40, tol: float = 1e-8) -> PolynomialCheck:
    """J^-lam Phi(gz, J^2 (X - K)) against Phi(z, X) at one sample point.

    For a modular polynomial the comparison is J^-mu Phi(gz, J^-2 X) = Phi(z, X).
    """
    z = complex(z)
    J = cocycle_J(g, z)
    K = cocycle_K(g, z)
    series = F.qexp(order)
    at_gz = [eval_numeric(s, g.act(z))[0] for s in series]
    at_z = [eval_numeric(s, z)[0] for s in series]
    if F.kind == QUASI:
        x2 = J**2 * (x - K)
    else:
        x2 = x / J**2
    lhs = J ** (-F.weight) * sum(v * x2**r for r, v in enumerate(at_gz))
    rhs = sum(v * x**r for r, v in enumerate(at_z))
    res = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
    return PolynomialCheck(g, z, x, res, tol)
