"""Symmetric tensor representations and vector-valued forms built on them.

Basis convention: ``rho_n(g)`` acts on the monomial vector
``(z1^n, z1^(n-1) z2, ..., z2^n)`` so that ``rho_n(g) m(v) = m(g v)``.
Row ``i`` of the matrix is therefore the expansion of
``(a z1 + b z2)^(n-i) (c z1 + d z2)^i``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .errors import ResidualZDependence, SingularMatrix
from .series import (
    GroupElt,
    PiPoly,
    PiRational,
    QSeries,
    ZPoly,
    check_upper_half_plane,
    cocycle_J,
    cocycle_K,
    eval_numeric,
)


def _binary_power_rows(a, b, c, d, n: int, one=1):
    """Rows of the n-th symmetric power of (a, b; c, d), generic coefficient type."""
    rows = []
    for i in range(n + 1):
        poly = [one]
        for _ in range(n - i):
            poly = _conv(poly, [a, b])
        for _ in range(i):
            poly = _conv(poly, [c, d])
        rows.append(poly)
    return rows


def _conv(p, q):
    out = [0 * p[0]] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] = out[i + j] + x * y
    return out


@dataclass(frozen=True)
class SymRepMatrix:
    n: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def identity(cls, n: int) -> "SymRepMatrix":
        return cls(n, tuple(tuple(Fraction(int(i == j)) for j in range(n + 1)) for i in range(n + 1)))

    def __matmul__(self, other: "SymRepMatrix") -> "SymRepMatrix":
        m = self.n + 1
        rows = tuple(
            tuple(sum((self.entries[i][k] * other.entries[k][j] for k in range(m)), Fraction(0)) for j in range(m))
            for i in range(m)
        )
        return SymRepMatrix(self.n, rows)

    def transpose(self) -> "SymRepMatrix":
        return SymRepMatrix(self.n, tuple(zip(*self.entries)))

    def det(self) -> Fraction:
        return linalg.determinant(self.entries)

    def inverse(self) -> "SymRepMatrix":
        if self.det() == 0:
            raise SingularMatrix("matrix is not invertible")
        return SymRepMatrix(self.n, tuple(tuple(r) for r in linalg.inverse(self.entries)))

    def to_complex(self) -> list[list[complex]]:
        return [[complex(x) for x in r] for r in self.entries]

    def as_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]


def sym_rep(g: GroupElt, n: int) -> SymRepMatrix:
    if n < 0:
        raise ValueError("symmetric power must be nonnegative")
    rows = _binary_power_rows(Fraction(g.a), Fraction(g.b), Fraction(g.c), Fraction(g.d), n, Fraction(1))
    return SymRepMatrix(n, tuple(tuple(r) for r in rows))


def sym_power_numeric(a, b, c, d, n: int) -> list[list[complex]]:
    """n-th symmetric power of an arbitrary complex 2x2 matrix, same basis."""
    return _binary_power_rows(complex(a), complex(b), complex(c), complex(d), n, 1 + 0j)


def contragredient(m: SymRepMatrix) -> SymRepMatrix:
    """Inverse transpose."""
    return m.inverse().transpose()


def binomial_weights(n: int) -> SymRepMatrix:
    """diag(C(n, j)); conjugates rho_n(g^-T) into the inverse transpose of rho_n(g)."""
    return SymRepMatrix(n, tuple(tuple(Fraction(math.comb(n, i) if i == j else 0) for j in range(n + 1))
                                 for i in range(n + 1)))


def dual_rep(g: GroupElt, n: int) -> SymRepMatrix:
    """rho_n(g^-T), the matrix under which ``u_hat`` transforms."""
    return sym_rep(g.inverse().transpose(), n)


# ---------------------------------------------------------------------------
# Vector-valued forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VVForm:
    """Weight-k vector of Z-polynomials.

    ``n`` is the symmetric power when the form belongs to rho_n (rank n+1);
    tensor products of two such forms carry ``n=None``.
    """

    weight: int
    components: tuple[ZPoly, ...]
    n: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.n is not None and len(self.components) != self.n + 1:
            raise ValueError(f"rho_{self.n} form needs {self.n + 1} components, got {len(self.components)}")

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def order(self) -> Fraction:
        return min(c.order for c in self.components)

    @classmethod
    def zero(cls, weight: int, n: int, order) -> "VVForm":
        return cls(weight, tuple(ZPoly.zero(order) for _ in range(n + 1)), n)

    def _same_shape(self, other: "VVForm"):
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch {self.rank} vs {other.rank}")

    def __add__(self, other: "VVForm") -> "VVForm":
        self._same_shape(other)
        return VVForm(self.weight, tuple(a + b for a, b in zip(self.components, other.components)), self.n)

    def __neg__(self):
        return VVForm(self.weight, tuple(-c for c in self.components), self.n)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "VVForm":
        """Multiply by a constant or a scalar series (weight unchanged for series: caller's job)."""
        return VVForm(self.weight, tuple(x * c for x in self.components), self.n)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction, PiPoly, PiRational)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def derive(self, times: int = 1) -> "VVForm":
        """Componentwise D; the weight tag is left alone (derivatives are not modular)."""
        comps = self.components
        for _ in range(times):
            comps = tuple(c.derive() for c in comps)
        return VVForm(self.weight, comps, self.n)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def agrees(self, other: "VVForm", order=None) -> bool:
        return self.rank == other.rank and all(a.agrees(b, order) for a, b in zip(self.components, other.components))

    def evaluate(self, z: complex) -> list[complex]:
        return [c.evaluate(z) for c in self.components]

    def tail_bound(self, z: complex) -> float:
        worst = 0.0
        for comp in self.components:
            for d, s in enumerate(comp.coeffs):
                if not s.is_zero():
                    worst = max(worst, eval_numeric(s, z)[1] * max(1.0, abs(z)) ** d)
        return worst


def v_hat(n: int, order=30) -> VVForm:
    """(z^n, ..., z, 1), weight -n for rho_n."""
    one = QSeries.constant(1, order)
    return VVForm(-n, tuple(ZPoly.monomial(n - i, one) for i in range(n + 1)), n)


def u_hat(n: int, order=30) -> VVForm:
    """(1, -z, ..., (-z)^n), weight -n for rho_n(g^-T)."""
    return VVForm(-n, tuple(ZPoly.monomial(i, QSeries.constant((-1) ** i, order)) for i in range(n + 1)), n)


def u_hat_dual(n: int, order=30) -> VVForm:
    """(C(n, i) (-z)^i)_i, weight -n for the inverse transpose of rho_n."""
    return VVForm(-n, tuple(ZPoly.monomial(i, QSeries.constant((-1) ** i * math.comb(n, i), order))
                            for i in range(n + 1)), n)


# ---------------------------------------------------------------------------
# Frame L_n(z) = rho_n((1, z; 0, 1))
# ---------------------------------------------------------------------------


def frame_matrix(n: int, inverse: bool = False) -> list[list[list[int]]]:
    """Entries of L_n(z) (or its inverse) as integer polynomials in z (index = power)."""
    sign = -1 if inverse else 1
    out = []
    for i in range(n + 1):
        row = []
        for j in range(n + 1):
            if j < i:
                row.append([0])
            else:
                row.append([0] * (j - i) + [math.comb(n - i, j - i) * sign ** (j - i)])
        out.append(row)
    return out


def _apply_zmatrix(mat: list[list[list[int]]], vec: Sequence[ZPoly]) -> list[ZPoly]:
    order = min(v.order for v in vec)
    out = []
    for row in mat:
        acc = ZPoly.zero(order)
        for poly, comp in zip(row, vec):
            for k, c in enumerate(poly):
                if c:
                    acc = acc + ZPoly([QSeries.zero(order)] * k + list(comp.coeffs)) * c
        out.append(acc)
    return out


def frame_apply(n: int, coords: Sequence[QSeries], weight: int) -> VVForm:
    """L_n(z) . (f_0, ..., f_n)."""
    return VVForm(weight, tuple(_apply_zmatrix(frame_matrix(n), [ZPoly([c]) for c in coords])), n)


@dataclass(frozen=True)
class FrameCoords:
    weight: int
    n: int
    entries: tuple[QSeries, ...]

    def first_nonzero(self) -> int | None:
        for i, e in enumerate(self.entries):
            if not e.is_zero():
                return i
        return None

    def slot_weight(self, r: int) -> int:
        """Weight a coordinate r has when all earlier ones vanish."""
        return self.weight - self.n + 2 * r


def frame_coords(F: VVForm) -> FrameCoords:
    """L_n(z)^-1 F(z); every entry must be free of Z."""
    n = F.rank - 1 if F.n is None else F.n
    rows = _apply_zmatrix(frame_matrix(n, inverse=True), F.components)
    for i, r in enumerate(rows):
        if not r.is_z_free():
            raise ResidualZDependence(f"frame coordinate {i} still depends on Z (degree {r.degree})", residual=r)
    return FrameCoords(F.weight, n, tuple(r.constant_term() for r in rows))


def conjugation_matrix(g: GroupElt, z: complex, n: int) -> list[list[complex]]:
    """L_n(gz)^-1 rho_n(g) L_n(z), computed as rho_n((1/J, 0; c, J)).

    Lower triangular with entry (r, j) = C(r, j) c^(r-j) J^(r+j-n).
    """
    J = cocycle_J(g, z)
    return [[math.comb(r, j) * g.c ** (r - j) * J ** (r + j - n) if j <= r else 0j for j in range(n + 1)]
            for r in range(n + 1)]


# ---------------------------------------------------------------------------
# Numeric transformation checks
# ---------------------------------------------------------------------------


@dataclass
class TransformReport:
    gamma: GroupElt
    z: complex
    residuals: list[float]
    tail: float
    tol: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = max(self.residuals, default=0.0) <= self.tol

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)


def scaled_residual(lhs: complex, rhs: complex) -> float:
    """|lhs - rhs| relative to max(1, |lhs|, |rhs|)."""
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def _matvec(m, v):
    return [sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m))]


def verify_vv_transform(F: VVForm, g: GroupElt, z: complex, tol: float = 1e-8,
                        rep: Callable[[GroupElt], SymRepMatrix] | None = None) -> TransformReport:
    """Compare J(g,z)^-k F(gz) with rep(g) F(z) componentwise."""
    z = complex(z)
    gz = g.act(z)
    check_upper_half_plane(z)
    check_upper_half_plane(gz)
    n = F.rank - 1 if F.n is None else F.n
    mat = (rep(g) if rep else sym_rep(g, n)).to_complex()
    J = cocycle_J(g, z)
    lhs = [J ** (-F.weight) * x for x in F.evaluate(gz)]
    rhs = _matvec(mat, F.evaluate(z))
    tail = max(F.tail_bound(z), F.tail_bound(gz) * abs(J) ** (-F.weight))
    return TransformReport(g, z, [scaled_residual(a, b) for a, b in zip(lhs, rhs)], tail, tol)


def verify_scalar_transform(f: QSeries, weight: int, g: GroupElt, z: complex, tol: float = 1e-8) -> TransformReport:
    """f(gz) J^-k against f(z)."""
    z = complex(z)
    gz = g.act(z)
    J = cocycle_J(g, z)
    lhs, t1 = eval_numeric(f, gz)
    rhs, t0 = eval_numeric(f, z)
    return TransformReport(g, z, [scaled_residual(J ** (-weight) * lhs, rhs)], max(t0, t1), tol)


def verify_e2_transform(order: int, g: GroupElt, z: complex, tol: float = 1e-8) -> TransformReport:
    """E2(gz) - J^2 E2(z) - 12 c J / (2 pi i) should vanish."""
    from .modular import eisenstein

    e2 = eisenstein(2, order)
    z = complex(z)
    J = cocycle_J(g, z)
    lhs = e2.evaluate(g.act(z))
    rhs = J**2 * e2.evaluate(z) + 12 * g.c * J / (2j * math.pi)
    return TransformReport(g, z, [scaled_residual(lhs, rhs)], eval_numeric(e2, z)[1], tol)


def verify_derivative_law(n: int, nu: int, g: GroupElt, z: complex, order=30, tol: float = 1e-10) -> TransformReport:
    """Slash of D^nu v_hat_n in weight -n+2nu against the K-binomial expansion."""
    z = complex(z)
    v = v_hat(n, order)
    J = cocycle_J(g, z)
    K = cocycle_K(g, z)
    lhs = [J ** (n - 2 * nu) * x for x in v.derive(nu).evaluate(g.act(z))]
    rho = sym_rep(g, n).to_complex()
    rhs = [0j] * (n + 1)
    for ell in range(nu + 1):
        coeff = ((-1) ** (nu - ell) * math.factorial(nu) * math.factorial(n - ell)
                 / (math.factorial(ell) * math.factorial(nu - ell) * math.factorial(n - nu)))
        term = _matvec(rho, v.derive(ell).evaluate(z))
        rhs = [r + coeff * K ** (nu - ell) * t for r, t in zip(rhs, term)]
    return TransformReport(g, z, [scaled_residual(a, b) for a, b in zip(lhs, rhs)], 0.0, tol)


# ---------------------------------------------------------------------------
# Exact span computations
# ---------------------------------------------------------------------------


def flatten_vv(F: VVForm, order: int, pis=range(-6, 7), max_deg: int = 8) -> list[Fraction]:
    """All exact coefficients of F (component, Z-degree, Pi-power, q-exponent) as one row."""
    row = []
    for comp in F.components:
        for d in range(max_deg + 1):
            s = comp.coeff(d)
            for p in pis:
                row.extend(s.to_list(pi=p, length=order))
    return row


def vv_rank(forms: Sequence[VVForm], order: int) -> int:
    """Dimension of the span of ``forms``, read off their first ``order`` q-coefficients."""
    rows = [flatten_vv(F, order) for F in forms]
    return linalg.rank(rows) if rows else 0
