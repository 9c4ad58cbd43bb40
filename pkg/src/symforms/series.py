"""Exact truncated q-expansions with coefficients in Q[Pi, 1/Pi].

``Pi`` is a formal constant standing for 2*pi*i.  On a q-expansion the
derivative d/dz equals ``Pi * theta`` with ``theta = q d/dq``, so keeping
``Pi`` symbolic makes every derivative identity rational.

A :class:`QSeries` stores its coefficients grouped by Pi-power, each group a
sparse map ``exponent numerator -> Fraction``.  The true exponent of a key
``e`` is ``e / den`` where ``den`` divides 24.  Coefficients of exponents
``< order`` are exact; nothing at or above ``order`` is known.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .errors import DegeneratePoint, ImaginaryPartTooSmall

TWO_PI_I = 2j * math.pi
MAX_ABS_Q = 0.95


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# ---------------------------------------------------------------------------
# Coefficient ring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PiRational:
    """A single term ``value * Pi**pi_power``."""

    value: Fraction
    pi_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "value", as_fraction(self.value))
        if self.value == 0:
            object.__setattr__(self, "pi_power", 0)

    def to_pipoly(self) -> "PiPoly":
        return PiPoly({self.pi_power: self.value})


class PiPoly:
    """Laurent polynomial in Pi with rational coefficients (immutable)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        if terms:
            for p, c in terms.items():
                c = as_fraction(c)
                if c:
                    clean[int(p)] = c
        self._terms = clean

    @classmethod
    def coerce(cls, x) -> "PiPoly":
        if isinstance(x, PiPoly):
            return x
        if isinstance(x, PiRational):
            return x.to_pipoly()
        return cls({0: as_fraction(x)})

    @classmethod
    def pi(cls, power: int = 1, coeff=1) -> "PiPoly":
        return cls({power: coeff})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def monomial(self) -> tuple[int, Fraction] | None:
        """``(pi_power, value)`` if this is a single term, else None."""
        if len(self._terms) == 1:
            return next(iter(self._terms.items()))
        return None

    def __add__(self, other):
        other = PiPoly.coerce(other)
        out = dict(self._terms)
        for p, c in other._terms.items():
            out[p] = out.get(p, 0) + c
        return PiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return PiPoly({p: -c for p, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-PiPoly.coerce(other))

    def __rsub__(self, other):
        return PiPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (QSeries, ZPoly)):
            return NotImplemented
        other = PiPoly.coerce(other)
        out: dict[int, Fraction] = {}
        for p, c in self._terms.items():
            for p2, c2 in other._terms.items():
                out[p + p2] = out.get(p + p2, 0) + c * c2
        return PiPoly(out)

    __rmul__ = __mul__

    def inverse(self) -> "PiPoly":
        mono = self.monomial()
        if mono is None:
            raise ZeroDivisionError("only single-term Pi-polynomials are invertible")
        p, c = mono
        return PiPoly({-p: 1 / c})

    def __truediv__(self, other):
        return self * PiPoly.coerce(other).inverse()

    def shift_pi(self, k: int) -> "PiPoly":
        return PiPoly({p + k: c for p, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, PiRational)):
            other = PiPoly.coerce(other)
        if not isinstance(other, PiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def evaluate(self) -> complex:
        return sum(float(c) * TWO_PI_I**p for p, c in self._terms.items()) + 0j

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for p in sorted(self._terms, reverse=True):
            c = self._terms[p]
            if p == 0:
                parts.append(str(c))
            elif p == 1:
                parts.append(f"{c}*Pi")
            else:
                parts.append(f"{c}*Pi^{p}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# q-series
# ---------------------------------------------------------------------------


def _normalize_den(den: int, parts: dict[int, dict[int, Fraction]]):
    g = den
    for block in parts.values():
        for e in block:
            g = math.gcd(g, e)
            if g == 1:
                return den, parts
    if g > 1:
        parts = {p: {e // g: c for e, c in block.items()} for p, block in parts.items()}
        den //= g
    return den, parts


class QSeries:
    """Truncated q-expansion with Q[Pi, 1/Pi] coefficients.

    Build instances through the classmethods rather than the constructor.
    """

    __slots__ = ("den", "order", "_parts", "_numeric")

    def __init__(self, parts: Mapping[int, Mapping[int, object]], order, den: int = 1):
        order = as_fraction(order)
        if order <= 0:
            raise ValueError("series order must be positive")
        if den <= 0 or 24 % den:
            raise ValueError(f"exponent denominator {den} does not divide 24")
        limit = _ceil_fraction(order * den)
        clean: dict[int, dict[int, Fraction]] = {}
        for p, block in parts.items():
            b = {}
            for e, c in block.items():
                if e < 0:
                    raise ValueError("negative q-exponents are not supported")
                if e < limit:
                    c = as_fraction(c)
                    if c:
                        b[int(e)] = c
            if b:
                clean[int(p)] = b
        self.den, self._parts = _normalize_den(den, clean)
        self.order = order
        self._numeric = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order=None, den: int = 1, pi: int = 0) -> "QSeries":
        """Series from a dense list; entry ``i`` is the coefficient of q^(i/den)."""
        coeffs = list(coeffs)
        if order is None:
            order = Fraction(len(coeffs), den)
        return cls({pi: dict(enumerate(coeffs))}, order, den)

    @classmethod
    def monomial(cls, exponent, coeff=1, order=1, pi: int = 0) -> "QSeries":
        exponent = as_fraction(exponent)
        coeff = PiPoly.coerce(coeff).shift_pi(pi)
        den = exponent.denominator
        return cls({p: {exponent.numerator: c} for p, c in coeff.items()}, order, den)

    @classmethod
    def constant(cls, c=1, order=1) -> "QSeries":
        return cls.monomial(0, c, order)

    @classmethod
    def zero(cls, order) -> "QSeries":
        return cls({}, order)

    # -- inspection -------------------------------------------------------

    @property
    def parts(self) -> dict[int, dict[int, Fraction]]:
        return {p: dict(b) for p, b in self._parts.items()}

    def pi_powers(self) -> list[int]:
        return sorted(self._parts)

    def pi_part(self, p: int) -> "QSeries":
        """The rational series multiplying Pi**p."""
        return QSeries({0: self._parts.get(p, {})}, self.order, self.den)

    def coeff(self, exponent) -> PiPoly:
        exponent = as_fraction(exponent)
        if exponent >= self.order:
            raise ValueError(f"coefficient of q^{exponent} is beyond the truncation order {self.order}")
        scaled = exponent * self.den
        if scaled.denominator != 1:
            return PiPoly()
        e = scaled.numerator
        return PiPoly({p: b[e] for p, b in self._parts.items() if e in b})

    def coefficients(self) -> dict[int, PiPoly]:
        """Map exponent numerator (over ``den``) to its Pi-polynomial coefficient."""
        out: dict[int, dict[int, Fraction]] = {}
        for p, b in self._parts.items():
            for e, c in b.items():
                out.setdefault(e, {})[p] = c
        return {e: PiPoly(out[e]) for e in sorted(out)}

    def exponents(self) -> list[Fraction]:
        keys = set()
        for b in self._parts.values():
            keys.update(b)
        return [Fraction(e, self.den) for e in sorted(keys)]

    def valuation(self) -> Fraction | None:
        exps = self.exponents()
        return exps[0] if exps else None

    def to_list(self, pi: int = 0, length: int | None = None) -> list[Fraction]:
        """Dense coefficients of Pi**pi for an integral-exponent series."""
        if self.den != 1:
            raise ValueError("to_list needs integral exponents")
        n = _ceil_fraction(self.order) if length is None else length
        block = self._parts.get(pi, {})
        return [block.get(i, Fraction(0)) for i in range(n)]

    def is_zero(self) -> bool:
        return not self._parts

    def is_rational(self) -> bool:
        return set(self._parts) <= {0}

    # -- arithmetic -------------------------------------------------------

    def _lifted(self, den: int) -> dict[int, dict[int, Fraction]]:
        if den == self.den:
            return self._parts
        f = den // self.den
        return {p: {e * f: c for e, c in b.items()} for p, b in self._parts.items()}

    def _coerce(self, other) -> "QSeries | None":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction, PiPoly, PiRational)):
            return QSeries.constant(other, self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        den = math.lcm(self.den, other.den)
        a, b = self._lifted(den), other._lifted(den)
        out = {p: dict(blk) for p, blk in a.items()}
        for p, blk in b.items():
            tgt = out.setdefault(p, {})
            for e, c in blk.items():
                tgt[e] = tgt.get(e, 0) + c
        return QSeries(out, min(self.order, other.order), den)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({p: {e: -c for e, c in b.items()} for p, b in self._parts.items()},
                       self.order, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = PiPoly.coerce(c)
        out: dict[int, dict[int, Fraction]] = {}
        for p2, k in c.items():
            for p, b in self._parts.items():
                tgt = out.setdefault(p + p2, {})
                for e, v in b.items():
                    tgt[e] = tgt.get(e, 0) + k * v
        return QSeries(out, self.order, self.den)

    def times_pi(self, k: int = 1) -> "QSeries":
        return QSeries({p + k: b for p, b in self._parts.items()}, self.order, self.den)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PiPoly, PiRational)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        den = math.lcm(self.den, other.den)
        order = min(self.order, other.order)
        limit = _ceil_fraction(order * den)
        a, b = self._lifted(den), other._lifted(den)
        out: dict[int, dict[int, Fraction]] = {}
        for p1, b1 in a.items():
            items1 = sorted(b1.items())
            for p2, b2 in b.items():
                items2 = sorted(b2.items())
                tgt = out.setdefault(p1 + p2, {})
                for e1, c1 in items1:
                    if e1 >= limit:
                        break
                    for e2, c2 in items2:
                        e = e1 + e2
                        if e >= limit:
                            break
                        tgt[e] = tgt.get(e, 0) + c1 * c2
        return QSeries(out, order, den)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, PiPoly, PiRational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            if isinstance(k, int):
                return self.inverse() ** (-k)
            raise TypeError("series powers must be integers")
        result = QSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def theta(self) -> "QSeries":
        """q d/dq: multiplies the coefficient of q^e by e."""
        den = self.den
        return QSeries({p: {e: c * Fraction(e, den) for e, c in b.items()} for p, b in self._parts.items()},
                       self.order, den)

    def derivative(self) -> "QSeries":
        """d/dz = Pi * theta."""
        return self.theta().times_pi(1)

    def truncate(self, order) -> "QSeries":
        order = as_fraction(order)
        if order > self.order:
            raise ValueError("cannot extend precision by truncation")
        return QSeries(self._parts, order, self.den)

    def shift(self, exponent) -> "QSeries":
        """Multiply by q**exponent; the truncation order moves with it."""
        exponent = as_fraction(exponent)
        den = math.lcm(self.den, exponent.denominator)
        s = (exponent * den).numerator
        lifted = self._lifted(den)
        out = {p: {e + s: c for e, c in b.items()} for p, b in lifted.items()}
        return QSeries(out, self.order + exponent, den)

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; the constant term must be a single Pi-term."""
        c0 = self.coeff(0)
        if c0.monomial() is None:
            raise ZeroDivisionError("series inverse needs an invertible constant term")
        den = self.den
        limit = _ceil_fraction(self.order * den)
        if self.is_rational():
            a = self._parts.get(0, {})
            inv0 = 1 / a[0]
            nz = sorted((e, c) for e, c in a.items() if e)
            b = [Fraction(0)] * limit
            b[0] = inv0
            for k in range(1, limit):
                s = Fraction(0)
                for e, c in nz:
                    if e > k:
                        break
                    if b[k - e]:
                        s += c * b[k - e]
                b[k] = -inv0 * s
            return QSeries({0: dict(enumerate(b))}, self.order, den)
        coeffs = self.coefficients()
        inv0 = c0.inverse()
        nz = [(e, c) for e, c in coeffs.items() if e]
        b = [PiPoly()] * limit
        b[0] = inv0
        for k in range(1, limit):
            s = PiPoly()
            for e, c in nz:
                if e > k:
                    break
                s = s + c * b[k - e]
            b[k] = -(inv0 * s)
        out: dict[int, dict[int, Fraction]] = {}
        for e, c in enumerate(b):
            for p, v in c.items():
                out.setdefault(p, {})[e] = v
        return QSeries(out, self.order, den)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, PiPoly, PiRational)):
            return self.scale(PiPoly.coerce(other).inverse())
        if not isinstance(other, QSeries):
            return NotImplemented
        v = other.valuation()
        if v is None:
            raise ZeroDivisionError("division by the zero series")
        num = self.shift(-v) if v else self
        return num * other.shift(-v).inverse()

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.den == other.den and self._parts == other._parts

    def __hash__(self):
        return hash((self.order, self.den, tuple(sorted((p, tuple(sorted(b.items()))) for p, b in self._parts.items()))))

    def agrees(self, other: "QSeries", order=None) -> bool:
        """Exact equality of all coefficients below ``order`` (default: common order)."""
        bound = min(self.order, other.order)
        if order is not None:
            bound = min(bound, as_fraction(order))
        return (self - other).truncate(bound).is_zero()

    # -- numerics ---------------------------------------------------------

    def _dense_complex(self) -> list[complex]:
        if self._numeric is None:
            limit = _ceil_fraction(self.order * self.den)
            dense = [0j] * max(limit, 1)
            for p, b in self._parts.items():
                w = TWO_PI_I**p
                for e, c in b.items():
                    dense[e] += float(c) * w
            self._numeric = dense
        return self._numeric

    def evaluate(self, z: complex) -> complex:
        """Partial sum at z with Pi -> 2*pi*i and q -> exp(2*pi*i*z)."""
        return eval_numeric(self, z)[0]

    def __repr__(self):
        terms = []
        for e, c in list(self.coefficients().items())[:6]:
            ex = Fraction(e, self.den)
            terms.append(f"({c})q^{ex}")
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body} + O(q^{self.order}))"


def check_upper_half_plane(z: complex) -> float:
    """Return |q| at z, raising if the truncated expansion is useless there."""
    if z.imag <= 0:
        raise ImaginaryPartTooSmall(f"Im z = {z.imag} is not positive")
    aq = math.exp(-2 * math.pi * z.imag)
    if aq >= MAX_ABS_Q:
        raise ImaginaryPartTooSmall(f"|q| = {aq:.3f} at z = {z}; tail bound meaningless")
    return aq


def eval_numeric(s: QSeries, z: complex) -> tuple[complex, float]:
    """Value of the partial sum at z and the crude tail bound |q|^N / (1 - |q|)."""
    z = complex(z)
    aq = check_upper_half_plane(z)
    dense = s._dense_complex()
    base = cmath.exp(TWO_PI_I * z / s.den)
    acc = 0j
    for c in reversed(dense):
        acc = acc * base + c
    tail = aq ** float(s.order) / (1 - aq)
    return acc, tail


# ---------------------------------------------------------------------------
# Polynomials in the formal variable Z (standing for z itself)
# ---------------------------------------------------------------------------


class ZPoly:
    """Polynomial in Z with q-series coefficients; ``coeffs[d]`` multiplies Z**d."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[QSeries]):
        cs = list(coeffs)
        if not cs:
            raise ValueError("ZPoly needs at least one coefficient (use ZPoly.zero)")
        while len(cs) > 1 and cs[-1].is_zero():
            order = min(c.order for c in cs)
            cs.pop()
            cs[0] = cs[0].truncate(min(order, cs[0].order))
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, order) -> "ZPoly":
        return cls([QSeries.zero(order)])

    @classmethod
    def monomial(cls, degree: int, coeff: QSeries) -> "ZPoly":
        zero = QSeries.zero(coeff.order)
        return cls([zero] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def order(self) -> Fraction:
        return min(c.order for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_z_free(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[1:])

    def constant_term(self) -> QSeries:
        return self.coeffs[0]

    def coeff(self, d: int) -> QSeries:
        if d < len(self.coeffs):
            return self.coeffs[d]
        return QSeries.zero(self.order)

    def __add__(self, other):
        if isinstance(other, QSeries):
            other = ZPoly([other])
        if not isinstance(other, ZPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return ZPoly([self.coeff(d) + other.coeff(d) for d in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return ZPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PiPoly, PiRational, QSeries)):
            return ZPoly([c * other for c in self.coeffs])
        if not isinstance(other, ZPoly):
            return NotImplemented
        out = [QSeries.zero(min(self.order, other.order))] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return ZPoly(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, PiPoly, PiRational, QSeries)):
            return self * other
        return NotImplemented

    def derive(self) -> "ZPoly":
        """d/dz acting on both the explicit Z and the q-expansions."""
        n = len(self.coeffs)
        out = [c.derivative() for c in self.coeffs]
        for d in range(1, n):
            out[d - 1] = out[d - 1] + self.coeffs[d] * d
        return ZPoly(out)

    def evaluate(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c.evaluate(z)
        return acc

    def agrees(self, other: "ZPoly", order=None) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.coeff(d).agrees(other.coeff(d), order) for d in range(n))

    def __eq__(self, other):
        if not isinstance(other, ZPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "ZPoly(" + ", ".join(f"Z^{d}: {c!r}" for d, c in enumerate(self.coeffs) if not c.is_zero()) + ")"


def derive(x, times: int = 1):
    """Apply D = d/dz ``times`` times to a QSeries or ZPoly."""
    for _ in range(times):
        x = x.derivative() if isinstance(x, QSeries) else x.derive()
    return x


# ---------------------------------------------------------------------------
# SL(2, Z) elements and cocycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupElt:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"({self.a},{self.b};{self.c},{self.d}) has determinant != 1")

    @classmethod
    def parse(cls, text: str) -> "GroupElt":
        named = {"I": IDENTITY, "T": T, "S": S, "ST": ST}
        if text.strip().upper() in named:
            return named[text.strip().upper()]
        a, b, c, d = (int(x) for x in text.split(","))
        return cls(a, b, c, d)

    def __matmul__(self, o: "GroupElt") -> "GroupElt":
        return GroupElt(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                        self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> "GroupElt":
        return GroupElt(self.d, -self.b, -self.c, self.a)

    def transpose(self) -> "GroupElt":
        return GroupElt(self.a, self.c, self.b, self.d)

    def act(self, z: complex) -> complex:
        den = self.c * z + self.d
        if den == 0:
            raise DegeneratePoint(f"c z + d vanishes at z = {z}")
        return (self.a * z + self.b) / den

    def __str__(self):
        return f"{self.a},{self.b},{self.c},{self.d}"


IDENTITY = GroupElt(1, 0, 0, 1)
T = GroupElt(1, 1, 0, 1)
S = GroupElt(0, -1, 1, 0)
ST = S @ T


def cocycle_J(g: GroupElt, z: complex) -> complex:
    val = g.c * z + g.d
    if val == 0:
        raise DegeneratePoint(f"c z + d vanishes at z = {z}")
    return complex(val)


def cocycle_K(g: GroupElt, z: complex) -> complex:
    return g.c / cocycle_J(g, z)
