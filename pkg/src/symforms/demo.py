"""End-to-end run of the weight-14, n = 2 example built from the discriminant.

delta goes to a rho_2-valued form by the order-2 bracket with v_hat_2, and
inverting the U map on that form must return

    1/2 delta'' + 13 delta' X + 78 delta X^2

coefficient for coefficient, Pi-powers included.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .correspondences import U_inverse, V_map
from .errors import AssertionFailure
from .modular import DELTA
from .series import PiPoly, QSeries, ZPoly
from .symtensor import frame_coords


def first_mismatch(got: QSeries, want: QSeries):
    """(exponent, got, want) of the lowest differing coefficient, or None."""
    diff = got - want
    exps = diff.exponents()
    if not exps:
        return None
    e = exps[0]
    return e, got.coeff(e), want.coeff(e)


def _fmt(s: QSeries, terms: int = 4) -> str:
    parts = []
    for e in s.exponents()[:terms]:
        parts.append(f"({s.coeff(e)})q^{e}")
    return " + ".join(parts) + " + ..."


@dataclass
class DemoReport:
    q_order: int
    lines: list = field(default_factory=list)
    passed: bool = False

    def say(self, text: str):
        self.lines.append(text)

    def text(self) -> str:
        return "\n".join(self.lines)


def _require(label: str, got: QSeries, want: QSeries):
    bad = first_mismatch(got, want)
    if bad is not None:
        e, g, w = bad
        raise AssertionFailure(f"{label}: first mismatch at q^{e}: got {g}, expected {w}")


def demo_delta(q_order: int = 30, perturb: tuple | None = None) -> DemoReport:
    """Run the example; ``perturb = (slot, exponent, delta)`` corrupts one expected coefficient."""
    rep = DemoReport(q_order)
    d0 = DELTA.to_qexp(q_order)
    d1 = DELTA.derive(1).to_qexp(q_order)
    d2 = DELTA.derive(2).to_qexp(q_order)
    rep.say(f"delta = {_fmt(d0)}")

    V = V_map(DELTA, 14, 2, 0, q_order)
    rep.say("V = [delta, v_hat_2]_2 with weights (12, -2): bracket coefficients 78, 13, 1")
    # coefficient lists are indexed by the power of Z
    direct = [ZPoly([d0.scale(156), d1.scale(26), d2]), ZPoly([d1.scale(13), d2]), ZPoly([d2])]
    for i, (a, b) in enumerate(zip(V.components, direct)):
        for deg in range(max(a.degree, b.degree) + 1):
            _require(f"component {i}, Z^{deg}", a.coeff(deg), b.coeff(deg))
    rep.say("V = delta''(z^2, z, 1) + 13 delta'(2z, 1, 0) + 78 delta(2, 0, 0)   [exact]")

    fc = frame_coords(V)
    for got, want, label in zip(fc.entries, (d0.scale(156), d1.scale(13), d2), ("156 delta", "13 delta'", "delta''")):
        _require(f"frame coordinate {label}", got, want)
    rep.say("frame coordinates L_2(z)^-1 V = (156 delta, 13 delta', delta'')   [exact]")

    F = U_inverse(V, 14, 2, as_elements=False)
    expected = [d2.scale(Fraction(1, 2)), d1.scale(13), d0.scale(78)]
    if perturb is not None:
        slot, exponent, delta_c = perturb
        expected[slot] = expected[slot] + QSeries.monomial(exponent, PiPoly.coerce(delta_c), q_order)
    for r, (got, want) in enumerate(zip(F.coeffs, expected)):
        _require(f"X^{r} coefficient of U_2^-1(V)", got, want)
    rep.say("U_2^-1(V) = 1/2 delta'' + 13 delta' X + 78 delta X^2   [exact]")
    rep.say(f"  X^2 coefficient: 78*({_fmt(d0)})")
    rep.say(f"  X^1 coefficient: {_fmt(F.coeffs[1])}   (carries Pi^1)")
    rep.say(f"  X^0 coefficient: {_fmt(F.coeffs[0])}   (carries Pi^2)")
    rep.passed = True
    rep.say(f"PASS at q-order {q_order}")
    return rep


__all__ = ["demo_delta", "DemoReport", "first_mismatch"]
