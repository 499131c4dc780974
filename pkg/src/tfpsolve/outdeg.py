"""Solver parameterized by how many players the favorite beats.

The champion of a single-elimination bracket on n players wins log2(n)
matches against distinct opponents, so a favorite with fewer wins than that
in the head-to-head table cannot be crowned by any seeding.  Conversely,
whenever the favorite's out-degree reaches log2(n) we have n <= 2**ell, so
the whole instance is already small in the parameter and an exact search
settles it.
"""

from __future__ import annotations

from .arborescence import lba_to_seeding
from .core import Seeding, Tournament
from .embed import solve_exact

__all__ = ["solve_outdeg"]


def solve_outdeg(t: Tournament, *, limit: int = 16) -> Seeding | None:
    """Winning seeding for the favorite, or None; fast NO when ell < log2(n).

    When the degree test does not fire, n is at most 2**ell and the exact
    solver runs; ``limit`` is its player cap.
    """
    if t.ell < t.num_rounds:
        return None
    lba = solve_exact(t, limit=limit)
    if lba is None:
        return None
    return lba_to_seeding(lba)
