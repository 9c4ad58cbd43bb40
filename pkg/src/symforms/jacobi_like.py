"""Formal power series in X over q-expansions: Cohen-Kuznetsov lifts and their products.

Coefficients are QSeries (scalar series) or VVForm vectors (rho_n-valued
series).  The weight tag of a series is lam; its X^j coefficient behaves like
a form of weight lam + 2j.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import IndexOutOfRange, WeightTooSmall
from .modular import QuasiElement
from .series import GroupElt, QSeries, check_upper_half_plane, cocycle_J, cocycle_K
from .symtensor import VVForm, scaled_residual, sym_rep, v_hat


@dataclass(frozen=True)
class JLSeries:
    """sum_{j < x_order} coeffs[j] X^j.

    ``n`` is None for scalar series and the symmetric power for vector ones.
    """

    weight: int
    coeffs: tuple
    n: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def x_order(self) -> int:
        return len(self.coeffs)

    @property
    def is_vector(self) -> bool:
        return self.n is not None

    @property
    def order(self):
        return min(c.order for c in self.coeffs)

    def negate_x(self) -> "JLSeries":
        """X -> -X."""
        return JLSeries(self.weight, tuple(c if j % 2 == 0 else -c for j, c in enumerate(self.coeffs)), self.n)

    def agrees(self, other: "JLSeries", order=None) -> bool:
        return (self.x_order == other.x_order
                and all(a.agrees(b, order) for a, b in zip(self.coeffs, other.coeffs)))


def ck_lift_scalar(g, x_order: int = 6, order: int = 30, weight: int | None = None) -> JLSeries:
    """Cohen-Kuznetsov lift: X^j coefficient D^j g / (j! (j + kappa - 1)!)."""
    if isinstance(g, QuasiElement):
        kappa = g.weight
        derivs = [g.derive(j).to_qexp(order) for j in range(x_order)]
    else:
        if weight is None:
            raise ValueError("a bare q-series needs an explicit weight")
        kappa = weight
        derivs = [g]
        for _ in range(x_order - 1):
            derivs.append(derivs[-1].derivative())
    if kappa < 1:
        raise WeightTooSmall(f"the lift needs weight >= 1, got {kappa}")
    coeffs = [d.scale(Fraction(1, math.factorial(j) * math.factorial(j + kappa - 1)))
              for j, d in enumerate(derivs)]
    return JLSeries(kappa, tuple(coeffs))


def ck_lift_vhat(n: int, x_order: int | None = None, order: int = 30) -> JLSeries:
    """sum_j (-1)^j (n - j)! D^j(v_hat_n) / j! X^j; coefficients beyond X^n vanish."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x_order = n + 5 if x_order is None else x_order
    v = v_hat(n, order)
    coeffs = []
    for j in range(x_order):
        if j <= n:
            c = Fraction((-1) ** j * math.factorial(n - j), math.factorial(j))
            coeffs.append(v.derive(j).scale(c))
        else:
            coeffs.append(VVForm.zero(-n, n, order))
    return JLSeries(-n, tuple(coeffs), n)


def quasi_polynomial_lift(F, n: int, order: int = 30, x_order: int | None = None) -> JLSeries:
    """Scalar series with X^l coefficient (n - l)! f_(n-l) for l <= n and zero beyond.

    Only the coefficients through X^n are determined by F; this is enough for
    extracting psi_n from the product with ck_lift_vhat(n).
    """
    x_order = n + 1 if x_order is None else x_order
    fs = F.qexp(order)
    coeffs = []
    for ell in range(x_order):
        r = n - ell
        if 0 <= r < len(fs):
            coeffs.append(fs[r].scale(math.factorial(r)))
        else:
            coeffs.append(QSeries.zero(order))
    return JLSeries(F.weight - 2 * n, tuple(coeffs))


def jl_multiply(a: JLSeries, b: JLSeries, negate_x: bool = False) -> JLSeries:
    """Cauchy product a(X) b(X), or a(-X) b(X) with ``negate_x``; a must be scalar."""
    if a.is_vector:
        raise ValueError("the left factor must be a scalar series")
    if negate_x:
        a = a.negate_x()
    m = min(a.x_order, b.x_order)
    weight = a.weight + b.weight
    out = []
    for j in range(m):
        acc = None
        for i in range(j + 1):
            x, y = a.coeffs[i], b.coeffs[j - i]
            if x.is_zero() or y.is_zero():
                continue
            if b.is_vector:
                term = VVForm(weight, tuple(c * x for c in y.components), b.n)
            else:
                term = x * y
            acc = term if acc is None else acc + term
        if acc is None:
            acc = VVForm.zero(weight, b.n, b.order) if b.is_vector else QSeries.zero(min(a.order, b.order))
        out.append(acc)
    return JLSeries(weight, tuple(out), b.n)


def jl_coefficient(s: JLSeries, j: int):
    """X^j coefficient; vector coefficients come back as VVForms tagged with weight lam + 2j."""
    if not 0 <= j < s.x_order:
        raise IndexOutOfRange(f"X^{j} is outside the stored range 0..{s.x_order - 1}")
    c = s.coeffs[j]
    if isinstance(c, VVForm):
        return VVForm(s.weight + 2 * j, c.components, c.n)
    return c


def jl_weight(s: JLSeries, j: int) -> int:
    return s.weight + 2 * j


# ---------------------------------------------------------------------------
# The two independent routes through lifts
# ---------------------------------------------------------------------------


def V_by_lifting(g: QuasiElement, k: int, n: int, ell: int, order: int = 30) -> VVForm:
    """(-1)^j (kappa + j - 1)! / (n - j)! times the X^j coefficient of g~(-X) Phi_vhat(X), j = n - ell."""
    kappa = k - n + 2 * ell
    j = n - ell
    prod = jl_multiply(ck_lift_scalar(g, j + 1, order), ck_lift_vhat(n, j + 1, order), negate_x=True)
    c = Fraction((-1) ** j * math.factorial(kappa + j - 1), math.factorial(n - j))
    out = jl_coefficient(prod, j).scale(c)
    return VVForm(k, out.components, n)


def U_by_lifting(F, k: int, n: int, order: int = 30) -> VVForm:
    """psi_n of Phi_F(-X) Phi_vhat(X)."""
    prod = jl_multiply(quasi_polynomial_lift(F, n, order), ck_lift_vhat(n, n + 1, order), negate_x=True)
    out = jl_coefficient(prod, n)
    return VVForm(k, out.components, n)


# ---------------------------------------------------------------------------
# Numeric check of the Jacobi-like law, one X-power at a time
# ---------------------------------------------------------------------------


@dataclass
class JLReport:
    gamma: GroupElt
    z: complex
    residuals: list
    tol: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


def _values(c, z):
    return c.evaluate(z) if isinstance(c, VVForm) else [c.evaluate(z)]


def verify_jl_transform(s: JLSeries, g: GroupElt, z: complex, tol: float = 1e-8,
                        powers: Sequence[int] | None = None) -> JLReport:
    """Compare X^j coefficients of Phi(gz, X/J^2) and J^lam e^(K X) rho(g) Phi(z, X).

    ``powers`` defaults to every stored power; for ck_lift_vhat(n) the law
    only holds through X^n, so pass range(n + 1).
    """
    z = complex(z)
    check_upper_half_plane(z)
    gz = g.act(z)
    check_upper_half_plane(gz)
    J = cocycle_J(g, z)
    K = cocycle_K(g, z)
    rho = sym_rep(g, s.n).to_complex() if s.is_vector else [[1.0]]
    at_z = [[sum(rho[i][t] * v[t] for t in range(len(v))) for i in range(len(rho))]
            for v in (_values(c, z) for c in s.coeffs)]
    powers = range(s.x_order) if powers is None else powers
    res = []
    for j in powers:
        lhs = [x * J ** (-2 * j) for x in _values(s.coeffs[j], gz)]
        rhs = [0j] * len(lhs)
        for i in range(j + 1):
            f = J**s.weight * K ** (j - i) / math.factorial(j - i)
            rhs = [r + f * x for r, x in zip(rhs, at_z[i])]
        res.extend(scaled_residual(a, b) for a, b in zip(lhs, rhs))
    return JLReport(g, z, res, tol)


__all__ = ["JLSeries", "ck_lift_scalar", "ck_lift_vhat", "quasi_polynomial_lift", "jl_multiply",
           "jl_coefficient", "jl_weight", "V_by_lifting", "U_by_lifting", "verify_jl_transform", "JLReport"]
