"""Numeric transformation-law residuals for the generators, at every configured sample."""
import argparse

from symforms.config import JobConfig
from symforms.correspondences import V_map
from symforms.jacobi import jacobi_eisenstein, phi_tilde, verify_jacobi_transform
from symforms.jacobi_like import ck_lift_vhat, verify_jl_transform
from symforms.modular import DELTA, delta, eisenstein
from symforms.symtensor import verify_scalar_transform, verify_vv_transform


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--order", type=int, default=40)
    p.add_argument("--tol", type=float, default=1e-8)
    args = p.parse_args()
    cfg = JobConfig(q_order=args.order, tol=args.tol)
    cfg.check_numeric()
    N = cfg.q_order
    checks = {
        "E4": lambda g, z: verify_scalar_transform(eisenstein(4, N), 4, g, z, cfg.tol).max_residual,
        "E6": lambda g, z: verify_scalar_transform(eisenstein(6, N), 6, g, z, cfg.tol).max_residual,
        "delta": lambda g, z: verify_scalar_transform(delta(N), 12, g, z, cfg.tol).max_residual,
        "V(14,2,0;delta)": lambda g, z: verify_vv_transform(V_map(DELTA, 14, 2, 0, N), g, z).max_residual,
        "phi-2,1": lambda g, z: verify_jacobi_transform(phi_tilde(-2, N), g, z, 0.2 + 0.1j).max_residual,
        "phi0,1": lambda g, z: verify_jacobi_transform(phi_tilde(0, N), g, z, 0.2 + 0.1j).max_residual,
        "E4,1": lambda g, z: verify_jacobi_transform(jacobi_eisenstein(4, N), g, z, 0.2 + 0.1j).max_residual,
        "E6,1": lambda g, z: verify_jacobi_transform(jacobi_eisenstein(6, N), g, z, 0.2 + 0.1j).max_residual,
    }
    for n in range(4):
        checks[f"lift vhat({n})"] = (lambda n: lambda g, z: verify_jl_transform(
            ck_lift_vhat(n, order=N), g, z, powers=range(n + 1)).max_residual)(n)
    for name, fn in checks.items():
        worst = max(fn(g, z) for g in cfg.gammas() for z in cfg.sample_points)
        print(f"{name:<18} max residual {worst:.2e}")


if __name__ == "__main__":
    main()
