"""Run settings shared by the CLI and the experiment scripts."""
from __future__ import annotations

import os
from dataclasses import dataclass, field

from .series import GroupElt

MIN_NUMERIC_ORDER = 8


@dataclass
class JobConfig:
    q_order: int = 30
    x_order: int | None = None
    tol: float = 1e-8
    sample_points: tuple = (1j, 0.25 + 1j, 2j)
    sample_gammas: tuple = ("T", "S", "ST")
    cache_dir: str | None = field(default_factory=lambda: os.environ.get("SYMFORMS_CACHE") or None)

    def x_order_for(self, n: int) -> int:
        return n + 5 if self.x_order is None else self.x_order

    def gammas(self) -> list[GroupElt]:
        return [GroupElt.parse(g) for g in self.sample_gammas]

    def check_numeric(self):
        if self.q_order < MIN_NUMERIC_ORDER:
            raise ValueError(f"numeric checks need q-order >= {MIN_NUMERIC_ORDER}, got {self.q_order}")
