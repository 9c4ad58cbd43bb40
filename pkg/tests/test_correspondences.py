import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symforms.correspondences import (
    Lambda_map,
    Q_inverse,
    Q_map,
    U_inverse,
    U_map,
    V_map,
    V_sum,
    W_map,
    Xi_map,
    decompose,
    modular_polynomial,
    modular_polynomial_basis,
    peel_constant,
    quasi_polynomial,
    quasi_polynomial_basis,
    verify_quasi_polynomial,
)
from symforms.errors import (
    DepthExceeded,
    NotInImage,
    ResidualZDependence,
    WeightHypothesisViolated,
    WeightMismatch,
    WeightTooSmall,
)
from symforms.modular import (
    DELTA,
    E2,
    E4,
    E6,
    QuasiElement,
    basis_Mk,
    dim_Mk,
    quasi_basis,
)
from symforms.series import ST, PiPoly, S
from symforms.symtensor import frame_apply, v_hat, verify_vv_transform, vv_rank

ORDER = 20
Z0 = 0.15 + 1.05j

# W_m(V_ell(g)) = c * g * [m == ell], measured once and frozen here
W_AFTER_V = {
    (14, 2, 0): 156, (14, 2, 1): 336, (14, 2, 2): 182,
    (13, 1, 0): 12, (13, 1, 1): 12,
    (7, 3, 0): 120, (7, 3, 1): 504, (7, 3, 2): 720, (7, 3, 3): 336,
    (10, 2, 0): 72, (10, 2, 1): 160, (10, 2, 2): 90,
}


def some_form(weight):
    b = basis_Mk(weight).elements()
    return b[0] if b else None


def test_discriminant_example():
    V = V_map(DELTA, 14, 2, 0, ORDER)
    F = U_inverse(V, 14, 2)
    assert F == quasi_polynomial(16, [DELTA.derive(2) * Fraction(1, 2), DELTA.derive(1) * 13, DELTA * 78])


def test_v_weight_check():
    with pytest.raises(WeightMismatch):
        V_map(E4, 14, 2, 0)
    with pytest.raises(WeightMismatch):
        V_map(E2 * E4, 8, 2, 1)
    with pytest.raises(ValueError):
        V_map(DELTA, 14, 2, 3)


@pytest.mark.parametrize("k,n,ell", [(14, 2, 0), (13, 1, 1), (9, 3, 2), (16, 4, 0)])
def test_v_image_transforms(k, n, ell):
    g = some_form(k - n + 2 * ell)
    F = V_map(g, k, n, ell, 40)
    for gam in (S, ST):
        assert verify_vv_transform(F, gam, Z0).passed


@pytest.mark.parametrize("key,c", sorted(W_AFTER_V.items()))
def test_w_after_v_is_diagonal(key, c):
    k, n, ell = key
    g = some_form(k - n + 2 * ell)
    ws = W_map(V_map(g, k, n, ell, 15), k, n)
    for m, w in enumerate(ws):
        assert w.agrees(g.to_qexp(15).scale(c if m == ell else 0))


@pytest.mark.parametrize("key,c", sorted(W_AFTER_V.items()))
def test_w_constant_closed_form(key, c):
    # observed fit, not a theorem
    k, n, ell = key
    assert math.factorial(n) * math.comb(k + ell - 1, n - ell) * math.comb(k - n + 2 * ell - 2, ell) == c


def test_literal_pairing_leaves_z():
    with pytest.raises(ResidualZDependence):
        W_map(V_map(DELTA, 14, 2, 0, 10), 14, 2, literal=True)


def test_peel_constant():
    assert peel_constant(14, 2, 0) == 156
    assert peel_constant(14, 2, 2) == 1


def test_decompose_mixed_sum():
    gs = [DELTA * 2, E4 ** 2 * E6 * Fraction(-1, 3), E4 ** 4 + DELTA * E4 * PiPoly.pi(1)]
    F = V_sum(gs, 14, 2, ORDER)
    assert decompose(F, 14, 2) == gs


def test_vhat_sits_in_the_top_slot():
    assert decompose(v_hat(2, ORDER), -2, 2) == [QuasiElement.zero(-4), QuasiElement.zero(-2), QuasiElement.constant(1)]


def test_decompose_not_modular():
    F = frame_apply(1, [E2.to_qexp(ORDER), E4.to_qexp(ORDER)], 3)
    with pytest.raises(NotInImage):
        decompose(F, 3, 1)
    with pytest.raises(NotInImage):
        decompose(frame_apply(2, [E4.to_qexp(ORDER)] * 3, 14), 14, 2)


def test_degenerate_slot():
    # k = n kills the constant slot
    assert V_map(QuasiElement.constant(1), 2, 2, 0, 10).is_zero()


@st.composite
def qpoly(draw, k_max=14, n_max=3):
    n = draw(st.integers(1, n_max))
    k = draw(st.integers(n + 1, k_max))
    coeffs = []
    for ell in range(n + 1):
        basis = quasi_basis(k + n - 2 * ell, n - ell)
        vals = draw(st.lists(st.integers(-4, 4), min_size=len(basis), max_size=len(basis)))
        coeffs.append(sum((b * v for b, v in zip(basis, vals)), QuasiElement.zero(k + n - 2 * ell)))
    return k, n, quasi_polynomial(k + n, coeffs)


@settings(max_examples=25)
@given(qpoly())
def test_u_round_trip(data):
    k, n, F = data
    G = U_map(F, k, n, ORDER)
    assert U_inverse(G, k, n) == F


def test_u_image_transforms():
    F = Lambda_map(modular_polynomial(10, [E4 * E6, QuasiElement.zero(12), E4 ** 2 * E6]), 2, 14)
    G = U_map(F, 12, 2, 40)
    for gam in (S, ST):
        assert verify_vv_transform(G, gam, Z0).passed


def test_u_weight_hypothesis():
    F = quasi_polynomial(4, [E4])
    with pytest.raises(WeightHypothesisViolated):
        U_map(F, 2, 2)
    with pytest.warns(UserWarning):
        U_map(quasi_polynomial(4, [E4, QuasiElement.zero(2), QuasiElement.constant(1)]), 2, 2, 10,
              allow_small_weight=True)
    with pytest.raises(WeightMismatch):
        U_map(F, 5, 2)


def test_u_inverse_rejects_non_image():
    bad = frame_apply(2, [E4.to_qexp(ORDER)] * 3, 14)
    with pytest.raises(NotInImage):
        U_inverse(bad, 14, 2)


@pytest.mark.parametrize("lam,m", [(5, 1), (9, 2), (12, 3), (13, 4)])
def test_lambda_xi_round_trip(lam, m):
    for F in modular_polynomial_basis(m, lam - 2 * m):
        assert Xi_map(Lambda_map(F, m, lam), m, lam) == F
    for F in quasi_polynomial_basis(m, lam):
        assert Lambda_map(Xi_map(F, m, lam), m, lam) == F


def test_lambda_boundary_weight():
    F = modular_polynomial(1, [QuasiElement.zero(1), QuasiElement.zero(3)])
    assert Xi_map(Lambda_map(F, 1, 3), 1, 3) == F


def test_lambda_weight_guards():
    F = modular_polynomial(0, [QuasiElement.constant(1)])
    with pytest.raises(WeightTooSmall):
        Lambda_map(F, 1, 2)
    with pytest.raises(WeightMismatch):
        Lambda_map(F, 1, 5)
    with pytest.raises(WeightMismatch):
        Xi_map(F, 0, 1)


def test_xi_rejects_non_quasimodular():
    # E2 X^0 alone does not transform like a quasimodular polynomial
    F = quasi_polynomial(4, [E2 * E2, QuasiElement.zero(2)])
    with pytest.raises(NotInImage):
        Xi_map(F, 1, 4)


def test_q_examples():
    assert Q_map(E2, 1) == quasi_polynomial(2, [E2, QuasiElement.constant(PiPoly.pi(-1, 12))])
    assert Q_map(E2 * E2, 2).coeff(2) == QuasiElement.constant(PiPoly.pi(-2, 144))
    f = E2 ** 2 * E4 - E2 * E6 * 3
    assert Q_inverse(Q_map(f, 2)) == f
    with pytest.raises(DepthExceeded):
        Q_map(E2 ** 3, 2)


@pytest.mark.parametrize("f", [E2, E2 ** 2 * E4, E2 * E6 + E4 * E4, DELTA.derive(2)])
def test_q_image_transforms(f):
    F = Q_map(f, f.depth)
    for gam in (S, ST):
        assert verify_quasi_polynomial(F, gam, Z0).passed


def test_modular_polynomial_transforms():
    F = modular_polynomial(4, [E4, E6, E4 * E4])
    assert verify_quasi_polynomial(F, S, Z0).passed
    assert verify_quasi_polynomial(Lambda_map(F, 2, 9 - 1), S, Z0).passed


def test_quasi_check_detects_wrong_polynomial():
    F = quasi_polynomial(2, [E2, QuasiElement.zero(0)])
    assert not verify_quasi_polynomial(F, S, Z0).passed


def test_form_polynomial_guards():
    with pytest.raises(WeightMismatch):
        quasi_polynomial(4, [E6])
    with pytest.raises(DepthExceeded):
        modular_polynomial(2, [E2])
    with pytest.raises(DepthExceeded):
        quasi_polynomial(4, [E4, QuasiElement.zero(2), QuasiElement.constant(1)]).padded(1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dimension_identity(n):
    rng = random.Random(n)
    for k in rng.sample(range(n + 1, 21), 3):
        images = [U_map(Lambda_map(b, n, k + n), k, n, 16) for b in modular_polynomial_basis(n, k - n)]
        expected = sum(dim_Mk(k - n + 2 * ell) for ell in range(n + 1))
        assert len(images) == expected
        assert vv_rank(images, 16) == expected
