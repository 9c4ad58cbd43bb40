from fractions import Fraction

import pytest
from oracles import E41_BY_DISCRIMINANT, E61_BY_DISCRIMINANT

from symforms.correspondences import V_map, V_sum
from symforms.errors import WeightMismatch
from symforms.jacobi import (
    JacSeries,
    P_map,
    Psi_map,
    is_zeta_symmetric,
    jacobi_eisenstein,
    phi_tilde,
    phi_tilde_from_theta,
    support_violations,
    theta_series,
    verify_jacobi_transform,
)
from symforms.modular import DELTA, E4, E6, basis_Mk, delta, eisenstein, eta
from symforms.series import ST, GroupElt, PiPoly, S, T

ORDER = 12
POINTS = [(0.1 + 1.1j, 0.2 + 0.1j), (-0.3 + 0.9j, 0.35 - 0.2j)]


def rational(c: PiPoly):
    assert set(c.terms) == {0}
    return c.terms[0]


def ints(row):
    return {r: rational(c) for r, c in row.items()}


def test_phi_m2_rows():
    p = phi_tilde(-2, ORDER)
    assert ints(p.row(0)) == {1: 1, 0: -2, -1: 1}
    assert ints(p.row(1)) == {2: -2, 1: 8, 0: -12, -1: 8, -2: -2}


def test_phi_0_rows():
    p = phi_tilde(0, ORDER)
    assert ints(p.row(0)) == {1: 1, 0: 10, -1: 1}
    assert ints(p.row(1)) == {2: 10, 1: -64, 0: 108, -1: -64, -2: 10}


def test_phi_m2_from_thetas():
    assert phi_tilde(-2, ORDER).agrees(phi_tilde_from_theta(-2, ORDER))


def test_eisenstein_rows():
    e4, e6 = jacobi_eisenstein(4, ORDER), jacobi_eisenstein(6, ORDER)
    assert ints(e4.row(0)) == {0: 1}
    assert ints(e4.row(1)) == {2: 1, 1: 56, 0: 126, -1: 56, -2: 1}
    assert ints(e4.row(2)) == {2: 126, 1: 576, 0: 756, -1: 576, -2: 126}
    assert ints(e6.row(1)) == {2: 1, 1: -88, 0: -330, -1: -88, -2: 1}


@pytest.mark.parametrize("k,table", [(4, E41_BY_DISCRIMINANT), (6, E61_BY_DISCRIMINANT)])
def test_coefficients_depend_on_discriminant(k, table):
    e = jacobi_eisenstein(k, ORDER)
    seen = 0
    for n, row in e.rows().items():
        for r, c in row.items():
            D = 4 * n - r * r
            if D in table:
                assert rational(c) == table[D], (n, r)
                seen += 1
    assert seen >= 10


def test_delta_identities():
    pm2, p0 = phi_tilde(-2, ORDER), phi_tilde(0, ORDER)
    e4, e6 = eisenstein(4, ORDER), eisenstein(6, ORDER)
    E41, E61 = jacobi_eisenstein(4, ORDER), jacobi_eisenstein(6, ORDER)
    d144 = delta(ORDER).scale(144)
    assert (E41.times_scalar(e6, 6) - E61.times_scalar(e4, 4)).agrees(pm2.times_scalar(d144, 12))
    assert (E41.times_scalar(e4 * e4, 8) - E61.times_scalar(e6, 6)).agrees(p0.times_scalar(d144, 12))


def test_theta_squares():
    t3 = theta_series(3, ORDER, squared=True)
    assert t3.weight == 1 and t3.index == 1
    with pytest.raises(ValueError):
        theta_series(1, ORDER)


def test_phi_m2_is_minus_theta1_squared_over_eta6():
    t1 = theta_series(1, ORDER + 1, squared=True)
    e6 = eta(ORDER + 1) ** 6
    assert (-t1.divide_scalar(e6, 3).with_weight(-2, 1)).agrees(phi_tilde(-2, ORDER), ORDER - 1)


@pytest.mark.parametrize("phi", [phi_tilde(-2, 20), phi_tilde(0, 20), jacobi_eisenstein(4, 20),
                                 jacobi_eisenstein(6, 20)], ids=["phi-2", "phi0", "E41", "E61"])
def test_symmetry_and_support(phi):
    assert is_zeta_symmetric(phi)
    assert support_violations(phi) == []


def test_index_and_weight_add():
    p = phi_tilde(-2, ORDER) * phi_tilde(0, ORDER)
    assert (p.weight, p.index) == (-2, 2)
    assert support_violations(p) == []
    with pytest.raises(WeightMismatch):
        phi_tilde(-2, ORDER) + phi_tilde(0, ORDER)


@pytest.mark.parametrize("phi", [phi_tilde(-2, 40), phi_tilde(0, 40), jacobi_eisenstein(4, 40),
                                 jacobi_eisenstein(6, 40)], ids=["phi-2", "phi0", "E41", "E61"])
def test_numeric_laws(phi):
    for g in (T, S, ST, GroupElt(2, 1, 1, 1)):
        for z, w in POINTS:
            if abs(g.act(z).imag) < 0.3:
                continue
            rep = verify_jacobi_transform(phi, g, z, w)
            assert rep.passed, rep


def test_numeric_law_detects_wrong_weight():
    phi = phi_tilde(0, 40).with_weight(2, 1)
    assert not verify_jacobi_transform(phi, S, 0.1 + 1.1j, 0.2 + 0.1j).passed


def test_p_map_recovers_eisenstein():
    # E41 = (E4 phi0 - E6 phi-2)/12 is P of (E4/12, -E6/12) at n = 1, k = 5
    P = P_map([E4 * Fraction(1, 12), E6 * Fraction(-1, 12)], 1, 5, ORDER)
    assert P.with_weight(4, 1).agrees(jacobi_eisenstein(4, ORDER))
    with pytest.raises(WeightMismatch):
        P_map([E6, E6], 1, 5, ORDER)


def test_psi_of_v_sum():
    gs = [E4 * E6 * 2, DELTA, E4 ** 2 * E6 * PiPoly.pi(1)]
    F = V_sum(gs, 12, 2, ORDER)
    assert Psi_map(F, 2, 12).agrees(P_map(gs, 2, 12, ORDER))


def test_psi_output_is_jacobi():
    F = V_map(basis_Mk(10).elements()[0], 12, 2, 0, 40)
    psi = Psi_map(F, 2, 12)
    assert (psi.weight, psi.index) == (10, 2)
    assert verify_jacobi_transform(psi, S, 0.1 + 1.1j, 0.2 + 0.1j).passed


def test_from_scalar_and_rows():
    j = JacSeries.from_scalar(delta(5), 12)
    assert j.index == 0 and j.row(1) == {0: PiPoly.coerce(1)}
    k = JacSeries.from_rows({0: {1: 1, -1: 1}}, 0, 1, 3)
    assert is_zeta_symmetric(k)
