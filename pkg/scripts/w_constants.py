"""Measure W_m(V_ell(g)) for every slot and compare with the fitted closed form.

Prints one line per (k, n, ell): the measured constant c with W_ell(V_ell(g)) = c g,
whether the off-diagonal entries vanish, and whether c matches
n! C(k+ell-1, n-ell) C(k-n+2ell-2, ell).
"""
import argparse
import math

from symforms.correspondences import V_map, W_map
from symforms.modular import basis_Mk


def fitted(k, n, ell):
    return math.factorial(n) * math.comb(k + ell - 1, n - ell) * math.comb(k - n + 2 * ell - 2, ell)


def measure(k, n, ell, order):
    g = basis_Mk(k - n + 2 * ell).elements()[0]
    gs = g.to_qexp(order)
    ws = W_map(V_map(g, k, n, ell, order), k, n)
    lead = gs.exponents()[0]
    c = ws[ell].coeff(lead) / gs.coeff(lead)
    diagonal = ws[ell].agrees(gs.scale(c)) and all(w.is_zero() for m, w in enumerate(ws) if m != ell)
    return c, diagonal


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--k-max", type=int, default=18)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--order", type=int, default=12)
    args = p.parse_args()
    bad = 0
    for n in range(1, args.n_max + 1):
        for k in range(n + 1, args.k_max + 1):
            for ell in range(n + 1):
                if not basis_Mk(k - n + 2 * ell).dim:
                    continue
                c, diagonal = measure(k, n, ell, args.order)
                match = c == fitted(k, n, ell)
                bad += not (diagonal and match)
                print(f"k={k:>2} n={n} ell={ell}  c={c}  diagonal={diagonal}  fit={match}")
    print("all constants match the fit" if not bad else f"{bad} slots disagree")


if __name__ == "__main__":
    main()
