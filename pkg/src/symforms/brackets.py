"""Rankin-Cohen brackets for scalar, vector-valued and paired forms.

Every binomial goes through :func:`gen_binom`, so negative weights need no
special handling.  D differentiates the explicit Z and the q-expansions
together (see :meth:`symforms.series.ZPoly.derive`).
"""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import RankMismatch, ResidualZDependence
from .modular import QuasiElement
from .series import QSeries, ZPoly, derive
from .symtensor import VVForm


def gen_binom(k: int, r: int) -> Fraction:
    """k (k-1) ... (k-r+1) / r! for any integer k and r >= 0."""
    if r < 0:
        raise ValueError("lower index must be nonnegative")
    num = 1
    for i in range(r):
        num *= k - i
    return Fraction(num, math.factorial(r))


def bracket_coefficients(w: int, lam1: int, lam2: int) -> list[Fraction]:
    """c_r = (-1)^r C(lam1+w-1, w-r) C(lam2+w-1, r), r = 0..w."""
    return [(-1) ** r * gen_binom(lam1 + w - 1, w - r) * gen_binom(lam2 + w - 1, r) for r in range(w + 1)]


def _as_series(f, order) -> QSeries:
    if isinstance(f, QuasiElement):
        return f.to_qexp(int(order) if Fraction(order).denominator == 1 else int(order) + 1)
    return f


def rc_scalar(f: QSeries, g: QSeries, w: int, lam1: int, lam2: int) -> QSeries:
    """Classical bracket of two scalar q-series."""
    acc = QSeries.zero(min(f.order, g.order))
    for r, c in enumerate(bracket_coefficients(w, lam1, lam2)):
        if c:
            acc = acc + derive(f, r) * derive(g, w - r) * c
    return acc


def rc_tensor(phi1: VVForm, phi2: VVForm, w: int, lam1: int, lam2: int,
              rank1: int | None = None, rank2: int | None = None) -> VVForm:
    """[phi1, phi2]_w in the Kronecker order (i, j) -> i * rank2 + j."""
    if w < 0:
        raise ValueError("bracket order must be nonnegative")
    if rank1 is not None and rank1 != phi1.rank or rank2 is not None and rank2 != phi2.rank:
        raise RankMismatch(f"declared ranks ({rank1}, {rank2}) vs actual ({phi1.rank}, {phi2.rank})")
    order = min(phi1.order, phi2.order)
    comps = [ZPoly.zero(order) for _ in range(phi1.rank * phi2.rank)]
    for r, c in enumerate(bracket_coefficients(w, lam1, lam2)):
        if not c:
            continue
        d1 = phi1.derive(r).components
        d2 = phi2.derive(w - r).components
        for i, a in enumerate(d1):
            for j, b in enumerate(d2):
                comps[i * phi2.rank + j] = comps[i * phi2.rank + j] + (a * b) * c
    return VVForm(lam1 + lam2 + 2 * w, tuple(comps), None)


def rc_scalar_vector(f, phi: VVForm, w: int, lam: int, mu: int) -> VVForm:
    """[f, phi]_w for a scalar form f (QSeries or QuasiElement) and vector form phi."""
    if w < 0:
        raise ValueError("bracket order must be nonnegative")
    f = _as_series(f, phi.order)
    order = min(f.order, phi.order)
    comps = [ZPoly.zero(order) for _ in range(phi.rank)]
    for r, c in enumerate(bracket_coefficients(w, lam, mu)):
        if not c:
            continue
        fr = derive(f, r) * c
        dphi = phi.derive(w - r).components
        comps = [acc + p * fr for acc, p in zip(comps, dphi)]
    return VVForm(lam + mu + 2 * w, tuple(comps), phi.n)


def rc_pair_zpoly(phi: VVForm, psi: VVForm, w: int, alpha: int, beta: int) -> ZPoly:
    """[[phi, psi]]_w before the Z-freeness check."""
    if phi.rank != psi.rank:
        raise RankMismatch(f"pairing needs equal ranks, got {phi.rank} and {psi.rank}")
    if w < 0:
        raise ValueError("bracket order must be nonnegative")
    acc = ZPoly.zero(min(phi.order, psi.order))
    for r, c in enumerate(bracket_coefficients(w, alpha, beta)):
        if not c:
            continue
        a = phi.derive(r).components
        b = psi.derive(w - r).components
        dot = ZPoly.zero(acc.order)
        for x, y in zip(a, b):
            dot = dot + x * y
        acc = acc + dot * c
    return acc


def rc_pair(phi: VVForm, psi: VVForm, w: int, alpha: int, beta: int) -> QSeries:
    """[[phi, psi]]_w = sum (-1)^r C(alpha+w-1, w-r) C(beta+w-1, r) phi^(r)^T psi^(w-r).

    The result must be free of Z; otherwise ResidualZDependence carries the
    offending Z-polynomial.
    """
    out = rc_pair_zpoly(phi, psi, w, alpha, beta)
    if not out.is_z_free():
        raise ResidualZDependence(f"pairing bracket has Z-degree {out.degree}", residual=out)
    return out.constant_term()
