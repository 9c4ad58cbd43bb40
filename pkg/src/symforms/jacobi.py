"""Weak Jacobi forms of level one as truncated two-variable Fourier series.

A JacSeries stores, for each power r of zeta = e^(2 pi i w), the q-series
multiplying zeta^r.  Theta functions of kind 1 and 2 carry half-integral
zeta powers, so only their squares are built.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import WeightMismatch
from .modular import QuasiElement, _cached, eisenstein, eta  # noqa: F401  (eta re-exported)
from .series import (
    GroupElt,
    PiPoly,
    PiRational,
    QSeries,
    as_fraction,
    check_upper_half_plane,
    cocycle_J,
    cocycle_K,
)

TWO_PI_I = 2j * math.pi


class JacSeries:
    """sum_r s_r(q) zeta^r with exact q-series coefficients, truncated in q at ``order``."""

    __slots__ = ("weight", "index", "order", "_entries")

    def __init__(self, entries: Mapping[int, QSeries], weight: int, index: int, order=None):
        entries = {int(r): s for r, s in entries.items()}
        if order is None:
            if not entries:
                raise ValueError("the zero series needs an explicit order")
            order = min(s.order for s in entries.values())
        order = as_fraction(order)
        self._entries = {r: (s if s.order == order else s.truncate(order)) for r, s in entries.items()
                         if not s.truncate(order).is_zero()}
        self.weight = int(weight)
        self.index = int(index)
        self.order = order

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, weight: int, index: int, order) -> "JacSeries":
        return cls({}, weight, index, order)

    @classmethod
    def from_scalar(cls, s: QSeries, weight: int) -> "JacSeries":
        return cls({0: s}, weight, 0, s.order)

    @classmethod
    def from_rows(cls, rows: Mapping, weight: int, index: int, order) -> "JacSeries":
        """rows: {q_exponent: {zeta_power: coefficient}}."""
        order = as_fraction(order)
        by_r: dict[int, dict[Fraction, object]] = {}
        for e, row in rows.items():
            for r, c in row.items():
                by_r.setdefault(int(r), {})[as_fraction(e)] = c
        entries = {}
        for r, coeffs in by_r.items():
            acc = QSeries.zero(order)
            for e, c in coeffs.items():
                if e < order:
                    acc = acc + QSeries.monomial(e, c, order)
            entries[r] = acc
        return cls(entries, weight, index, order)

    # -- inspection -------------------------------------------------------

    @property
    def entries(self) -> dict[int, QSeries]:
        return dict(self._entries)

    def zeta_powers(self) -> list[int]:
        return sorted(self._entries)

    def entry(self, r: int) -> QSeries:
        return self._entries.get(r, QSeries.zero(self.order))

    def q_exponents(self) -> list[Fraction]:
        out = set()
        for s in self._entries.values():
            out.update(s.exponents())
        return sorted(out)

    def row(self, exponent) -> dict[int, PiPoly]:
        """Laurent polynomial in zeta multiplying q^exponent."""
        exponent = as_fraction(exponent)
        out = {}
        for r in sorted(self._entries):
            c = self._entries[r].coeff(exponent)
            if c:
                out[r] = c
        return out

    def rows(self) -> dict[Fraction, dict[int, PiPoly]]:
        return {e: self.row(e) for e in self.q_exponents()}

    def is_zero(self) -> bool:
        return not self._entries

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "JacSeries"):
        if (self.weight, self.index) != (other.weight, other.index):
            raise WeightMismatch(f"cannot add (weight, index) {(self.weight, self.index)} and "
                                 f"{(other.weight, other.index)}")

    def __add__(self, other: "JacSeries") -> "JacSeries":
        self._check(other)
        order = min(self.order, other.order)
        out = {r: s.truncate(order) for r, s in self._entries.items()}
        for r, s in other._entries.items():
            out[r] = out[r] + s if r in out else s.truncate(order)
        return JacSeries(out, self.weight, self.index, order)

    def __neg__(self):
        return JacSeries({r: -s for r, s in self._entries.items()}, self.weight, self.index, self.order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "JacSeries":
        return JacSeries({r: s.scale(c) for r, s in self._entries.items()}, self.weight, self.index, self.order)

    def times_scalar(self, s, weight: int | None = None) -> "JacSeries":
        """Multiply by a scalar form (QuasiElement, or QSeries with explicit weight)."""
        if isinstance(s, QuasiElement):
            weight = s.weight
            s = s.to_qexp(math.ceil(self.order))
        if weight is None:
            raise ValueError("a bare q-series needs an explicit weight")
        order = min(self.order, s.order)
        return JacSeries({r: e * s for r, e in self._entries.items()}, self.weight + weight, self.index, order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PiPoly, PiRational)):
            return self.scale(other)
        if isinstance(other, QuasiElement):
            return self.times_scalar(other)
        if not isinstance(other, JacSeries):
            return NotImplemented
        order = min(self.order, other.order)
        out: dict[int, QSeries] = {}
        for r1, s1 in self._entries.items():
            for r2, s2 in other._entries.items():
                p = s1 * s2
                r = r1 + r2
                out[r] = out[r] + p if r in out else p
        return JacSeries(out, self.weight + other.weight, self.index + other.index, order)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "JacSeries":
        result = JacSeries({0: QSeries.constant(1, self.order)}, 0, 0, self.order)
        for _ in range(k):
            result = result * self
        return result

    def divide_scalar(self, s: QSeries, weight: int) -> "JacSeries":
        v = s.valuation()
        if v is None:
            raise ZeroDivisionError("division by the zero series")
        return JacSeries({r: e / s for r, e in self._entries.items()}, self.weight - weight, self.index,
                         min(self.order, s.order) - v)

    def truncate(self, order) -> "JacSeries":
        return JacSeries(self._entries, self.weight, self.index, order)

    def with_weight(self, weight: int, index: int) -> "JacSeries":
        """Same coefficients, relabelled (weight, index)."""
        return JacSeries(self._entries, weight, index, self.order)

    def __eq__(self, other):
        if not isinstance(other, JacSeries):
            return NotImplemented
        return ((self.weight, self.index, self.order) == (other.weight, other.index, other.order)
                and self._entries == other._entries)

    __hash__ = None

    def agrees(self, other: "JacSeries", order=None) -> bool:
        bound = min(self.order, other.order)
        if order is not None:
            bound = min(bound, as_fraction(order))
        keys = set(self._entries) | set(other._entries)
        return all(self.entry(r).truncate(bound).agrees(other.entry(r).truncate(bound)) for r in keys)

    # -- numerics ---------------------------------------------------------

    def evaluate(self, z: complex, w: complex) -> complex:
        acc = 0j
        for r, s in self._entries.items():
            acc += s.evaluate(z) * cmath.exp(TWO_PI_I * r * w)
        return acc

    def __repr__(self):
        return f"JacSeries(weight={self.weight}, index={self.index}, order={self.order}, zeta={self.zeta_powers()})"


# ---------------------------------------------------------------------------
# Theta series
# ---------------------------------------------------------------------------


def _from_exponent_map(terms: Mapping[int, Mapping[int, int]], order, den: int) -> dict[int, QSeries]:
    """terms: {zeta_power: {exponent_numerator: coeff}} over a fixed denominator."""
    return {r: QSeries({0: block}, order, den) for r, block in terms.items()}


def theta_series(kind: int, order, squared: bool = False) -> JacSeries:
    """Two-variable theta series, truncated below q^order.

    theta_3 = sum q^(n^2/2) zeta^n and theta_4 = sum (-1)^n q^(n^2/2) zeta^n.
    theta_1 = -i sum (-1)^n q^((n+1/2)^2/2) zeta^(n+1/2) and theta_2 (same
    without the sign and the -i) are only available squared.
    """
    order = as_fraction(order)
    if kind not in (1, 2, 3, 4):
        raise ValueError(f"theta kind must be 1..4, got {kind}")
    if kind in (1, 2) and not squared:
        raise ValueError(f"theta_{kind} has half-integral zeta powers; request it squared")

    def build():
        limit = order * 8
        terms: dict[int, dict[int, int]] = {}
        bound = math.isqrt(int(limit)) + 2
        if kind in (3, 4):
            for n in range(-bound, bound + 1):
                e = 4 * n * n
                if e < limit:
                    terms.setdefault(n, {})[e] = (-1 if n % 2 else 1) if kind == 4 else 1
            # weight and index 1/2 are not representable; unsquared series carry (0, 0)
            base = JacSeries(_from_exponent_map(terms, order, 8), 0, 0, order)
            return (base * base).with_weight(1, 1) if squared else base
        # (n + 1/2)^2 / 2 + (m + 1/2)^2 / 2 = ((2n+1)^2 + (2m+1)^2) / 8
        sign = -1 if kind == 1 else 1
        for n in range(-bound, bound):
            for m in range(-bound, bound):
                e = (2 * n + 1) ** 2 + (2 * m + 1) ** 2
                if e < limit:
                    c = sign * ((-1 if (n + m) % 2 else 1) if kind == 1 else 1)
                    row = terms.setdefault(n + m + 1, {})
                    row[e] = row.get(e, 0) + c
        return JacSeries(_from_exponent_map(terms, order, 8), 1, 1, order)

    out = _cached(("theta", kind, squared, order), build)
    return out


def _at_zeta_one(phi: JacSeries) -> QSeries:
    acc = QSeries.zero(phi.order)
    for s in phi.entries.values():
        acc = acc + s
    return acc


# ---------------------------------------------------------------------------
# Generators of the ring of weak Jacobi forms
# ---------------------------------------------------------------------------


def _product_phi_m2(order: int) -> JacSeries:
    """(zeta - 2 + 1/zeta) prod (1 - q^n zeta)^2 (1 - q^n / zeta)^2 (1 - q^n)^-4 with integer arithmetic."""
    rows: list[dict[int, int]] = [dict() for _ in range(order)]
    rows[0] = {1: 1, 0: -2, -1: 1}
    for n in range(1, order):
        for s in (1, 1, -1, -1):
            for e in range(order - 1, n - 1, -1):
                src = rows[e - n]
                if src:
                    row = rows[e]
                    for r, c in src.items():
                        row[r + s] = row.get(r + s, 0) - c
        for _ in range(4):
            # multiply by 1 / (1 - q^n): row[e] += row[e - n], ascending in e
            for e in range(n, order):
                src = rows[e - n]
                if src:
                    row = rows[e]
                    for r, c in src.items():
                        row[r] = row.get(r, 0) + c
    by_r: dict[int, dict[int, int]] = {}
    for e, row in enumerate(rows):
        for r, c in row.items():
            if c:
                by_r.setdefault(r, {})[e] = c
    return JacSeries({r: QSeries({0: b}, order, 1) for r, b in by_r.items()}, -2, 1, order)


def phi_tilde_from_theta(which: int, order: int) -> JacSeries:
    """Theta-function routes: -theta_1^2 / eta^6 and 4 sum_i (theta_i(z) / theta_i(0))^2."""
    work = Fraction(order) + 1
    if which == -2:
        th1 = theta_series(1, work, squared=True)
        e6 = eta(work) ** 6
        return (-th1).divide_scalar(e6, 3).truncate(order).with_weight(-2, 1)
    if which == 0:
        acc = None
        for kind in (2, 3, 4):
            th = theta_series(kind, work, squared=True)
            term = th.divide_scalar(_at_zeta_one(th), 1)
            acc = term if acc is None else acc + term
        return acc.scale(4).truncate(order).with_weight(0, 1)
    raise ValueError(f"no generator of weight {which}")


def phi_tilde(which: int, order: int = 30) -> JacSeries:
    """The weak Jacobi forms of index 1 and weight -2 or 0.

    Weight -2 comes from the triple product, weight 0 from theta quotients.
    """
    if which == -2:
        return _cached(("phi", -2, order), lambda: _product_phi_m2(order))
    if which == 0:
        return _cached(("phi", 0, order), lambda: phi_tilde_from_theta(0, order))
    raise ValueError(f"no generator of weight {which}")


def jacobi_eisenstein(k: int, order: int = 30) -> JacSeries:
    """E_{4,1} = (E4 phi_0 - E6 phi_-2)/12 and E_{6,1} = (E6 phi_0 - E4^2 phi_-2)/12."""
    if k not in (4, 6):
        raise ValueError(f"only weights 4 and 6 are provided, got {k}")

    def build():
        p0 = phi_tilde(0, order)
        pm2 = phi_tilde(-2, order)
        e4 = eisenstein(4, order)
        e6 = eisenstein(6, order)
        if k == 4:
            out = p0.times_scalar(e4, 4) - pm2.times_scalar(e6, 6)
        else:
            out = p0.times_scalar(e6, 6) - pm2.times_scalar(e4 * e4, 8)
        return out.scale(Fraction(1, 12))

    return _cached(("jacobi_eisenstein", k, order), build)


def _generator_power(which: int, e: int, order: int) -> JacSeries:
    def build():
        if e == 0:
            return JacSeries({0: QSeries.constant(1, order)}, 0, 0, order)
        return _generator_power(which, e - 1, order) * phi_tilde(which, order)

    return _cached(("phi_power", which, e, order), build)


def P_map(fs: Sequence, n: int, k: int, order: int = 30) -> JacSeries:
    """sum_ell f_ell phi_-2^ell phi_0^(n - ell) with f_ell of weight k - n + 2 ell."""
    if len(fs) != n + 1:
        raise ValueError(f"need {n + 1} coefficients, got {len(fs)}")
    acc = JacSeries.zero(k - n, n, order)
    for ell, f in enumerate(fs):
        want = k - n + 2 * ell
        if isinstance(f, QuasiElement):
            if f.weight != want:
                raise WeightMismatch(f"slot {ell} needs weight {want}, got {f.weight}")
            if f.is_zero():
                continue
            s = f.to_qexp(order)
        elif f is None or f.is_zero():
            continue
        else:
            s = f
        gen = _generator_power(-2, ell, order) * _generator_power(0, n - ell, order)
        acc = acc + gen.times_scalar(s, want)
    return acc


def Psi_map(F, n: int, k: int, order: int | None = None) -> JacSeries:
    """P_map applied to the decomposition of a vector-valued form."""
    from .correspondences import decompose

    gs = decompose(F, k, n)
    order = int(F.order) if order is None else order
    return P_map(gs, n, k, order)


def support_violations(phi: JacSeries) -> list[tuple[Fraction, int]]:
    """(q-exponent, zeta-power) pairs breaking r^2 <= 4 n m + m^2 for index m."""
    m = phi.index
    bad = []
    for r, s in phi.entries.items():
        for e in s.exponents():
            if r * r > 4 * e * m + m * m:
                bad.append((e, r))
    return sorted(bad)


def is_zeta_symmetric(phi: JacSeries) -> bool:
    return all(phi.entry(r) == phi.entry(-r) for r in phi.zeta_powers())


# ---------------------------------------------------------------------------
# Numeric transformation laws
# ---------------------------------------------------------------------------


@dataclass
class JacobiReport:
    gamma: GroupElt
    z: complex
    w: complex
    modular_residual: float
    elliptic_residuals: dict = field(default_factory=dict)
    tol: float = 1e-6

    @property
    def max_residual(self) -> float:
        return max([self.modular_residual, *self.elliptic_residuals.values()])

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


def _res(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def verify_jacobi_transform(phi: JacSeries, g: GroupElt, z: complex, w: complex, tol: float = 1e-6,
                            shifts: Sequence[tuple[int, int]] = ((1, 0), (0, 1), (1, 1))) -> JacobiReport:
    """Residuals of the modular law at (g, z, w) and the elliptic law for each (mu, nu) shift.

    modular:  phi(gz, w/J) = J^k e^(2 pi i m K w^2) phi(z, w)
    elliptic: phi(z, w + mu z + nu) = e^(-2 pi i m (mu^2 z + 2 mu w)) phi(z, w)
    """
    z = complex(z)
    w = complex(w)
    check_upper_half_plane(z)
    gz = g.act(z)
    check_upper_half_plane(gz)
    J = cocycle_J(g, z)
    K = cocycle_K(g, z)
    m = phi.index
    base = phi.evaluate(z, w)
    lhs = phi.evaluate(gz, w / J)
    rhs = J**phi.weight * cmath.exp(TWO_PI_I * m * K * w * w) * base
    ell = {}
    for mu, nu in shifts:
        shifted = phi.evaluate(z, w + mu * z + nu)
        ell[(mu, nu)] = _res(shifted, cmath.exp(-TWO_PI_I * m * (mu * mu * z + 2 * mu * w)) * base)
    return JacobiReport(g, z, w, _res(lhs, rhs), ell, tol)


__all__ = [
    "JacSeries", "theta_series", "phi_tilde", "phi_tilde_from_theta", "jacobi_eisenstein", "P_map",
    "Psi_map", "support_violations", "is_zeta_symmetric", "verify_jacobi_transform", "JacobiReport", "eta",
]
