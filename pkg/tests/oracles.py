"""Reference values computed without the package's own machinery.

Everything here uses sympy or plain integer loops written from the textbook
definitions, so agreement with the package is a genuine cross-check.
"""
from fractions import Fraction

import sympy

# Ramanujan tau(1..10)
TAU = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]

# Fourier coefficients of the index-one Jacobi Eisenstein series, indexed by 4n - r^2
E41_BY_DISCRIMINANT = {0: 1, 3: 56, 4: 126, 7: 576, 8: 756, 11: 1512, 12: 2072}
E61_BY_DISCRIMINANT = {0: 1, 3: -88, 4: -330, 7: -4224, 8: -7524}


def eisenstein_coeffs(k: int, n: int) -> list[Fraction]:
    """1 - (2k / B_k) sum sigma_{k-1}(m) q^m, from sympy's Bernoulli numbers and divisor sums."""
    c = Fraction(-2 * k) / Fraction(str(sympy.bernoulli(k)))
    return [Fraction(1)] + [c * int(sympy.divisor_sigma(m, k - 1)) for m in range(1, n)]


def euler_power(e: int, n: int) -> list[int]:
    """prod_{m >= 1} (1 - q^m)^e as a dense list of length n, one factor at a time."""
    out = [1] + [0] * (n - 1)
    for m in range(1, n):
        for _ in range(e):
            for i in range(n - 1, m - 1, -1):
                out[i] -= out[i - m]
    return out


def delta_coeffs(n: int) -> list[int]:
    return [0] + euler_power(24, n - 1) if n > 1 else [0]


def sym_power_matrix(a, b, c, d, n: int) -> list[list[int]]:
    """Row i: coefficients of (a x + b y)^(n-i) (c x + d y)^i on x^(n-j) y^j."""
    x, y = sympy.symbols("x y")
    rows = []
    for i in range(n + 1):
        p = sympy.Poly(sympy.expand((a * x + b * y) ** (n - i) * (c * x + d * y) ** i), x, y)
        rows.append([int(p.coeff_monomial(x ** (n - j) * y ** j)) for j in range(n + 1)])
    return rows


def theta_coeff_list(s: list) -> list:
    return [i * c for i, c in enumerate(s)]
