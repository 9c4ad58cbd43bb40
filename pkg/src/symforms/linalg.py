"""Exact rational linear algebra on small dense matrices (sympy DomainMatrix over QQ)."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def _qq(x) -> object:
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def to_domain_matrix(rows: Sequence[Sequence]) -> DomainMatrix:
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    return DomainMatrix([[_qq(x) for x in r] for r in rows], (len(rows), ncols), QQ)


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        return 0
    return to_domain_matrix(rows).rank()


def pivot_columns(rows: Sequence[Sequence]) -> tuple[int, ...]:
    if not rows or not rows[0]:
        return ()
    return tuple(to_domain_matrix(rows).rref()[1])


def determinant(rows: Sequence[Sequence]) -> Fraction:
    return _frac(to_domain_matrix(rows).det())


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    inv = to_domain_matrix(rows).inv()
    return [[_frac(x) for x in r] for r in inv.to_list()]


def solve(columns: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve ``sum_j x_j * columns[j] == rhs`` exactly.

    Returns None when the system is inconsistent.  The columns must be
    linearly independent; otherwise ValueError.
    """
    n = len(columns)
    m = len(rhs)
    if n == 0:
        return [] if all(Fraction(v) == 0 for v in rhs) else None
    aug = [[columns[j][i] for j in range(n)] + [rhs[i]] for i in range(m)]
    red, pivots = to_domain_matrix(aug).rref()
    if n in pivots:
        return None
    if len(pivots) < n:
        raise ValueError(f"columns are dependent on the sampled rows (rank {len(pivots)} < {n})")
    sol = [Fraction(0)] * n
    red_rows = red.to_list()
    for r, c in enumerate(pivots):
        sol[c] = _frac(red_rows[r][n])
    return sol
