"""Quasimodular forms for SL(2, Z) as the polynomial ring Q[Pi^(+-1)][E2, E4, E6].

Weight and depth are syntactic: a monomial ``E2^a E4^b E6^c`` has weight
``2a + 4b + 6c`` and contributes depth ``a``.  The q-expansion map is a ring
homomorphism into :class:`~symforms.series.QSeries`.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import linalg
from .errors import NotInImage, UnsupportedWeight, WeightMismatch
from .series import PiPoly, PiRational, QSeries, as_fraction

Monomial = tuple[int, int, int]


class ExpansionCache:
    """Memo of exact expansions keyed by (name, order).

    Reads go straight to the dict; writes are serialized.
    """

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            return self._data.setdefault(key, value)

    def clear(self):
        with self._lock:
            self._data.clear()


CACHE = ExpansionCache()


def _cached(key, build):
    hit = CACHE.get(key)
    if hit is None:
        hit = CACHE.put(key, build())
    return hit


def sigma(k: int, n_max: int) -> list[int]:
    """Divisor power sums sigma_k(n) for 0 <= n < n_max (entry 0 is 0)."""
    out = [0] * n_max
    for d in range(1, n_max):
        dk = d**k
        for m in range(d, n_max, d):
            out[m] += dk
    return out


_EISENSTEIN = {2: (-24, 1), 4: (240, 3), 6: (-504, 5)}


def eisenstein(k: int, order: int) -> QSeries:
    """E_k = 1 + c_k * sum sigma_{k-1}(n) q^n for k in {2, 4, 6}."""
    if k not in _EISENSTEIN:
        raise UnsupportedWeight(f"no Eisenstein generator of weight {k}")
    if order < 1:
        raise ValueError("order must be at least 1")

    def build():
        c, s = _EISENSTEIN[k]
        coeffs = [c * v for v in sigma(s, order)]
        coeffs[0] = 1
        return QSeries.from_coeffs(coeffs, order)

    return _cached(("E", k, order), build)


def _int_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def euler_product(n: int) -> list[int]:
    """Dense coefficients of prod_{m >= 1} (1 - q^m) below q^n."""
    p = [0] * n
    p[0] = 1
    for m in range(1, n):
        for i in range(n - 1, m - 1, -1):
            p[i] -= p[i - m]
    return p


def delta(order: int) -> QSeries:
    """Delta = q prod (1 - q^n)^24."""
    if order < 1:
        raise ValueError("order must be at least 1")

    def build():
        n = order - 1
        if n <= 0:
            return QSeries.zero(order)
        e = euler_product(n)
        acc = [1] + [0] * (n - 1)
        base = e
        k = 24
        while k:
            if k & 1:
                acc = _int_mul(acc, base, n)
            k >>= 1
            if k:
                base = _int_mul(base, base, n)
        return QSeries.from_coeffs([0] + acc, order)

    return _cached(("delta", order), build)


def eta(order) -> QSeries:
    """eta = q^(1/24) prod (1 - q^n), exact for exponents below ``order``."""
    order = as_fraction(order)
    if order < 1:
        raise ValueError("order must be at least 1")

    def build():
        n = math.ceil(order - Fraction(1, 24))
        e = euler_product(max(n, 1))
        return QSeries({0: {1 + 24 * i: c for i, c in enumerate(e) if c}}, order, 24)

    return _cached(("eta", order), build)


# ---------------------------------------------------------------------------
# The polynomial ring in E2, E4, E6
# ---------------------------------------------------------------------------


def _mono_weight(m: Monomial) -> int:
    return 2 * m[0] + 4 * m[1] + 6 * m[2]


class QuasiElement:
    """Homogeneous element of Q[Pi^(+-1)][E2, E4, E6]."""

    __slots__ = ("weight", "_terms")

    def __init__(self, terms: Mapping[Monomial, object], weight: int | None = None):
        clean: dict[Monomial, PiPoly] = {}
        for m, c in terms.items():
            c = PiPoly.coerce(c)
            if c:
                m = tuple(int(x) for x in m)
                if len(m) != 3 or min(m) < 0:
                    raise ValueError(f"bad monomial exponent {m}")
                clean[m] = clean[m] + c if m in clean else c
                if not clean[m]:
                    del clean[m]
        weights = {_mono_weight(m) for m in clean}
        if len(weights) > 1:
            raise WeightMismatch(f"inhomogeneous element with weights {sorted(weights)}")
        if weight is None:
            if not weights:
                raise ValueError("the zero element needs an explicit weight")
            weight = weights.pop()
        elif weights and weights != {weight}:
            raise WeightMismatch(f"monomials have weight {weights.pop()}, declared {weight}")
        self.weight = int(weight)
        self._terms = clean

    @classmethod
    def zero(cls, weight: int) -> "QuasiElement":
        return cls({}, weight)

    @classmethod
    def constant(cls, c=1) -> "QuasiElement":
        return cls({(0, 0, 0): c}, 0)

    @classmethod
    def monomial(cls, a: int, b: int, c: int, coeff=1) -> "QuasiElement":
        return cls({(a, b, c): coeff})

    @property
    def terms(self) -> dict[Monomial, PiPoly]:
        return dict(self._terms)

    @property
    def depth(self) -> int:
        return max((m[0] for m in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_modular(self) -> bool:
        return self.depth == 0

    def _check_weight(self, other: "QuasiElement"):
        if self.weight != other.weight:
            raise WeightMismatch(f"cannot add weights {self.weight} and {other.weight}")

    def __add__(self, other):
        if not isinstance(other, QuasiElement):
            if other == 0:
                return self
            return NotImplemented
        self._check_weight(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out[m] + c if m in out else c
        return QuasiElement(out, self.weight)

    __radd__ = __add__

    def __neg__(self):
        return QuasiElement({m: -c for m, c in self._terms.items()}, self.weight)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PiPoly, PiRational)):
            c = PiPoly.coerce(other)
            return QuasiElement({m: v * c for m, v in self._terms.items()}, self.weight)
        if not isinstance(other, QuasiElement):
            return NotImplemented
        out: dict[Monomial, PiPoly] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return QuasiElement(out, self.weight + other.weight)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, PiPoly, PiRational)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        return self * PiPoly.coerce(other).inverse()

    def __pow__(self, k: int):
        result = QuasiElement.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, QuasiElement):
            return NotImplemented
        return self.weight == other.weight and self._terms == other._terms

    def __hash__(self):
        return hash((self.weight, frozenset(self._terms.items())))

    def theta(self) -> "QuasiElement":
        """q d/dq via the Ramanujan system, extended as a derivation."""
        out = QuasiElement.zero(self.weight + 2)
        for (a, b, c), coeff in self._terms.items():
            if a:
                # a E2^(a-1) (E2^2 - E4)/12
                out = out + QuasiElement({(a + 1, b, c): Fraction(a, 12), (a - 1, b + 1, c): Fraction(-a, 12)}) * coeff
            if b:
                # b E4^(b-1) (E2 E4 - E6)/3
                out = out + QuasiElement({(a + 1, b, c): Fraction(b, 3), (a, b - 1, c + 1): Fraction(-b, 3)}) * coeff
            if c:
                # c E6^(c-1) (E2 E6 - E4^2)/2
                out = out + QuasiElement({(a + 1, b, c): Fraction(c, 2), (a, b + 2, c - 1): Fraction(-c, 2)}) * coeff
        return out

    def derive(self, times: int = 1) -> "QuasiElement":
        """D^times = (Pi theta)^times."""
        x = self
        for _ in range(times):
            x = x.theta() * PiPoly.pi(1)
        return x

    def to_qexp(self, order: int) -> QSeries:
        acc = QSeries.zero(order)
        for m, c in self._terms.items():
            acc = acc + monomial_qexp(m, order).scale(c)
        return acc

    def __repr__(self):
        if not self._terms:
            return f"0 (weight {self.weight})"
        parts = []
        for (a, b, c), coeff in sorted(self._terms.items(), reverse=True):
            gens = "*".join(g for g in (
                f"E2^{a}" if a > 1 else ("E2" if a else ""),
                f"E4^{b}" if b > 1 else ("E4" if b else ""),
                f"E6^{c}" if c > 1 else ("E6" if c else ""),
            ) if g) or "1"
            parts.append(f"({coeff})*{gens}")
        return " + ".join(parts)


def _power_qexp(k: int, e: int, order: int) -> QSeries:
    if e == 0:
        return QSeries.constant(1, order)

    def build():
        if e == 1:
            return eisenstein(k, order)
        half = _power_qexp(k, e // 2, order)
        sq = half * half
        return sq * eisenstein(k, order) if e % 2 else sq

    return _cached(("Epow", k, e, order), build)


def monomial_qexp(m: Monomial, order: int) -> QSeries:
    def build():
        a, b, c = m
        return _power_qexp(2, a, order) * _power_qexp(4, b, order) * _power_qexp(6, c, order)

    return _cached(("mono", m, order), build)


E2 = QuasiElement.monomial(1, 0, 0)
E4 = QuasiElement.monomial(0, 1, 0)
E6 = QuasiElement.monomial(0, 0, 1)
ONE = QuasiElement.constant(1)
DELTA = (E4**3 - E6**2) / 1728


def quasi_derive(x: QuasiElement) -> QuasiElement:
    return x.theta()


def z_derive(x: QuasiElement, r: int) -> QuasiElement:
    """D^r x = Pi^r theta^r x."""
    if r < 0:
        raise ValueError("derivative count must be nonnegative")
    return x.derive(r)


@dataclass(frozen=True)
class MkBasis:
    weight: int
    monomials: tuple[tuple[int, int], ...]

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def elements(self) -> list[QuasiElement]:
        return [QuasiElement.monomial(0, a, b) for a, b in self.monomials]


def basis_Mk(k: int) -> MkBasis:
    """Monomials E4^a E6^b of weight k, ordered by descending a."""
    mons = []
    if k >= 0 and k % 2 == 0:
        for a in range(k // 4, -1, -1):
            rest = k - 4 * a
            if rest % 6 == 0:
                mons.append((a, rest // 6))
    return MkBasis(k, tuple(mons))


def dim_Mk(k: int) -> int:
    return basis_Mk(k).dim


def quasi_basis(k: int, max_depth: int) -> list[QuasiElement]:
    """Monomials E2^a E4^b E6^c of weight k with a <= max_depth."""
    out = []
    for a in range(0, min(max_depth, k // 2 if k >= 0 else -1) + 1):
        for b, c in basis_Mk(k - 2 * a).monomials:
            out.append(QuasiElement.monomial(a, b, c))
    return out


def identify(s: QSeries, weight: int, max_depth: int = 0) -> QuasiElement:
    """Write ``s`` as a quasimodular form of the given weight and depth bound.

    Each Pi-power of ``s`` is solved separately against the q-expansions of
    the monomial basis.  Raises NotInImage if ``s`` is not in the span, and
    ValueError if the series is too short to separate the basis.
    """
    basis = quasi_basis(weight, max_depth)
    if s.is_zero():
        return QuasiElement.zero(weight)
    if s.den != 1:
        raise NotInImage("fractional q-exponents cannot occur in level-one forms")
    n = int(s.order) if s.order.denominator == 1 else int(s.order) + 1
    cols = [b.to_qexp(n).to_list(length=n) for b in basis]
    result = QuasiElement.zero(weight)
    for p in s.pi_powers():
        sol = linalg.solve(cols, s.to_list(pi=p, length=n))
        if sol is None:
            raise NotInImage(f"series is not in the weight-{weight} depth-<={max_depth} span (Pi^{p} part)")
        for b, x in zip(basis, sol):
            if x:
                result = result + b * PiPoly.pi(p, x)
    return result


def is_modular_series(s: QSeries, weight: int) -> bool:
    try:
        identify(s, weight, 0)
    except NotInImage:
        return False
    return True


def elements_span(elems: Iterable[QuasiElement], order: int) -> int:
    """Rank of the q-expansions of ``elems`` (Pi-parts kept separate)."""
    rows = []
    for e in elems:
        s = e.to_qexp(order)
        row = []
        for p in range(-8, 9):
            row.extend(s.to_list(pi=p, length=order))
        rows.append(row)
    return linalg.rank(rows) if rows else 0
