from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import TAU, delta_coeffs, eisenstein_coeffs, euler_power

from symforms.errors import NotInImage, UnsupportedWeight, WeightMismatch
from symforms.modular import (
    DELTA,
    E2,
    E4,
    E6,
    ONE,
    QuasiElement,
    basis_Mk,
    delta,
    dim_Mk,
    eisenstein,
    elements_span,
    eta,
    identify,
    is_modular_series,
    quasi_basis,
)
from symforms.series import PiPoly

N = 30


@pytest.mark.parametrize("k", [2, 4, 6])
def test_eisenstein_matches_bernoulli_oracle(k):
    assert eisenstein(k, N).to_list() == eisenstein_coeffs(k, N)


def test_unsupported_weight():
    with pytest.raises(UnsupportedWeight):
        eisenstein(8, 10)


def test_tau():
    assert delta(11).to_list()[1:] == TAU
    assert delta(N).to_list() == delta_coeffs(N)


def test_discriminant_identity():
    e4, e6 = eisenstein(4, N), eisenstein(6, N)
    assert (e4 ** 3 - e6 ** 2).agrees(delta(N).scale(1728))


def test_eta_power():
    e = eta(N)
    assert (e ** 24).agrees(delta(N))
    assert e.coeff(Fraction(25, 24)) == PiPoly.coerce(-1)
    assert [e.coeff(Fraction(1 + 24 * i, 24)) for i in range(10)] == [PiPoly.coerce(c) for c in euler_power(1, 10)]


def test_ramanujan_system_on_qexpansions():
    e2, e4, e6 = (eisenstein(k, N) for k in (2, 4, 6))
    n = N - 1
    assert e2.theta().agrees((e2 * e2 - e4).scale(Fraction(1, 12)), n)
    assert e4.theta().agrees((e2 * e4 - e6).scale(Fraction(1, 3)), n)
    assert e6.theta().agrees((e2 * e6 - e4 * e4).scale(Fraction(1, 2)), n)


def test_delta_is_annihilated_by_serre_derivative():
    # theta Delta = E2 Delta
    assert DELTA.theta() == E2 * DELTA


def test_symbolic_derivative_matches_qexp():
    f = E4 * E6 + E2 ** 5 * 3
    assert f.derive(2).to_qexp(20) == f.to_qexp(22).derivative().derivative().truncate(20)


@st.composite
def quasi(draw, weight=8):
    basis = quasi_basis(weight, 4)
    coeffs = draw(st.lists(st.integers(-5, 5), min_size=len(basis), max_size=len(basis)))
    return sum((b * c for b, c in zip(basis, coeffs)), QuasiElement.zero(weight))


@given(quasi(), quasi(weight=6))
def test_theta_is_derivation_symbolically(f, g):
    assert (f * g).theta() == f.theta() * g + f * g.theta()


@given(quasi(weight=10))
def test_identify_recovers(f):
    s = f.to_qexp(25)
    assert identify(s, 10, 4) == f


def test_identify_pi_parts():
    f = E4 * PiPoly.pi(2, 3) + E4 * 5
    assert identify(f.to_qexp(10), 4) == f


def test_not_in_image():
    with pytest.raises(NotInImage):
        identify(eisenstein(2, 20), 2, 0)
    assert not is_modular_series(eisenstein(2, 20), 2)
    assert is_modular_series(delta(20), 12)


def test_inhomogeneous_rejected():
    with pytest.raises(WeightMismatch):
        E4 + E6
    with pytest.raises(WeightMismatch):
        QuasiElement({(0, 1, 0): 1, (0, 0, 1): 1})


@pytest.mark.parametrize("k,d", [(0, 1), (2, 0), (4, 1), (12, 2), (14, 1), (24, 3), (26, 2), (-2, 0), (7, 0)])
def test_dimensions(k, d):
    assert dim_Mk(k) == d


def test_basis_spans():
    for k in range(0, 28, 2):
        assert elements_span(basis_Mk(k).elements(), 30) == dim_Mk(k)
        assert elements_span(quasi_basis(k, k // 2), 30) == len(quasi_basis(k, k // 2))


def test_one_and_repr():
    assert ONE.to_qexp(3).to_list() == [1, 0, 0]
    assert "E4" in repr(E4 * 2)
