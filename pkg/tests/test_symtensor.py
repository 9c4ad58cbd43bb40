import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import sym_power_matrix

from symforms.errors import ResidualZDependence
from symforms.modular import delta, eisenstein
from symforms.series import ST, GroupElt, QSeries, S, T, ZPoly, cocycle_J
from symforms.symtensor import (
    VVForm,
    binomial_weights,
    conjugation_matrix,
    contragredient,
    dual_rep,
    frame_apply,
    frame_coords,
    sym_power_numeric,
    sym_rep,
    u_hat,
    u_hat_dual,
    v_hat,
    verify_derivative_law,
    verify_vv_transform,
)

Z0 = 0.13 + 1.1j


@st.composite
def sl2z(draw):
    g = GroupElt(1, 0, 0, 1)
    for w in draw(st.lists(st.sampled_from(["S", "T", "Ti"]), max_size=8)):
        g = g @ {"S": S, "T": T, "Ti": T.inverse()}[w]
    return g


@given(sl2z(), st.integers(0, 6))
def test_matches_sympy_oracle(g, n):
    assert sym_rep(g, n).as_lists() == sym_power_matrix(g.a, g.b, g.c, g.d, n)


@given(sl2z(), sl2z(), st.integers(0, 6))
def test_homomorphism(g, h, n):
    assert sym_rep(g @ h, n) == sym_rep(g, n) @ sym_rep(h, n)


def test_t_matrix():
    assert sym_rep(T, 2).as_lists() == [[1, 2, 1], [0, 1, 1], [0, 0, 1]]


@given(sl2z(), st.integers(0, 5))
def test_contragredient_relation(g, n):
    B = binomial_weights(n)
    assert contragredient(sym_rep(g, n)) == B @ dual_rep(g, n) @ B.inverse()
    assert sym_rep(g, n).det() == 1


def test_numeric_power_agrees():
    m = sym_power_numeric(2, 1, 1, 1, 3)
    assert [[int(x.real) for x in r] for r in m] == sym_power_matrix(2, 1, 1, 1, 3)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
@pytest.mark.parametrize("g", [T, S, ST, GroupElt(2, 1, 1, 1)])
def test_hat_vectors_transform(n, g):
    assert verify_vv_transform(v_hat(n), g, Z0).passed
    assert verify_vv_transform(u_hat(n), g, Z0, rep=lambda h: dual_rep(h, n)).passed
    assert verify_vv_transform(u_hat_dual(n), g, Z0, rep=lambda h: contragredient(sym_rep(h, n))).passed


def test_frame_round_trip():
    n = 3
    coords = [delta(10), eisenstein(4, 10), QSeries.zero(10), eisenstein(6, 10)]
    F = frame_apply(n, coords, 12)
    back = frame_coords(F)
    assert list(back.entries) == coords
    assert back.first_nonzero() == 0 and back.slot_weight(2) == 13


def test_frame_of_vhat():
    fc = frame_coords(v_hat(2))
    assert [e.to_list() for e in fc.entries] == [[0] * 30, [0] * 30, [1] + [0] * 29]


def test_frame_coords_reject_z():
    one = QSeries.constant(1, 5)
    F = VVForm(0, (ZPoly.monomial(3, one), ZPoly([one])), 1)
    with pytest.raises(ResidualZDependence):
        frame_coords(F)


@pytest.mark.parametrize("g", [S, ST, GroupElt(2, 1, 1, 1)])
def test_conjugation_identity(g):
    n = 3
    z = Z0
    gz = g.act(z)
    L = lambda w: sym_power_numeric(1, w, 0, 1, n)  # noqa: E731
    inv_Lgz = sym_power_numeric(1, -gz, 0, 1, n)
    rho = sym_rep(g, n).to_complex()
    prod = [[sum(inv_Lgz[i][a] * rho[a][b] * L(z)[b][j] for a in range(n + 1) for b in range(n + 1))
             for j in range(n + 1)] for i in range(n + 1)]
    expect = conjugation_matrix(g, z, n)
    assert max(abs(prod[i][j] - expect[i][j]) for i in range(n + 1) for j in range(n + 1)) < 1e-12
    J = cocycle_J(g, z)
    assert expect[0][0] == pytest.approx(J ** (-n))


@pytest.mark.parametrize("n,nu", [(1, 1), (2, 1), (2, 2), (3, 2), (4, 3)])
def test_derivative_law(n, nu):
    for g in (S, ST):
        assert verify_derivative_law(n, nu, g, Z0).passed


def test_derivatives_of_vhat_are_constant_vectors():
    v = v_hat(3).derive(3)
    assert all(c.is_z_free() for c in v.components)
    assert v.components[0].constant_term().to_list()[0] == math.factorial(3)


def test_transform_detects_wrong_weight():
    wrong = VVForm(0, v_hat(2).components, 2)
    assert not verify_vv_transform(wrong, S, Z0).passed


def test_binomial_weights():
    assert [binomial_weights(4).entries[i][i] for i in range(5)] == [Fraction(math.comb(4, i)) for i in range(5)]
