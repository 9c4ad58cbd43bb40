"""Tabulate sum_ell dim M_(k-n+2ell) against the rank of the constructed forms."""
import argparse

from symforms import linalg
from symforms.correspondences import Lambda_map, U_map, V_map, modular_polynomial_basis
from symforms.modular import basis_Mk, dim_Mk
from symforms.symtensor import flatten_vv


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--k-max", type=int, default=20)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--order", type=int, default=12)
    args = p.parse_args()
    print(f"{'k':>3} {'n':>2} {'sum dim':>8} {'rank V':>7} {'rank U':>7}")
    for n in range(1, args.n_max + 1):
        for k in range(n + 1, args.k_max + 1):
            expected = sum(dim_Mk(k - n + 2 * ell) for ell in range(n + 1))
            vs = [V_map(b, k, n, ell, args.order) for ell in range(n + 1) for b in basis_Mk(k - n + 2 * ell).elements()]
            us = [U_map(Lambda_map(P, n, k + n), k, n, args.order) for P in modular_polynomial_basis(n, k - n)]
            rv = linalg.rank([flatten_vv(F, args.order) for F in vs]) if vs else 0
            ru = linalg.rank([flatten_vv(F, args.order) for F in us]) if us else 0
            flag = "" if rv == ru == expected else "  MISMATCH"
            print(f"{k:>3} {n:>2} {expected:>8} {rv:>7} {ru:>7}{flag}")


if __name__ == "__main__":
    main()
