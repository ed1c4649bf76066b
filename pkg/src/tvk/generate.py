"""Seeded random rational point sets in guaranteed general position."""
from __future__ import annotations

import random
from itertools import combinations
from typing import Optional

from .errors import PerturbationFailed
from .geometry import Point, PointSet, mk_point, orientation


def random_point_set(
    d: int,
    n: int,
    seed: int,
    bound: int = 10000,
    extra: Optional[Point] = None,
    max_tries: int = 10000,
) -> PointSet:
    """n integer-coordinate points in R^d, no d+1 on a common hyperplane.

    Candidates are drawn uniformly from [-bound, bound]^d and rejected when
    they would violate general position against the accepted points (and the
    optional extra point, e.g. the origin). Deterministic for a fixed seed.
    """
    rng = random.Random(seed)
    fixed = [mk_point(extra)] if extra is not None else []
    pts: list = []
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > max_tries:
            raise PerturbationFailed(
                f"could not place {n} general-position points (seed={seed})"
            )
        cand = mk_point(tuple(rng.randint(-bound, bound) for _ in range(d)))
        pool = fixed + pts
        if any(cand == p for p in pool):
            continue
        if len(pool) >= d and _violates(cand, pool, d):
            continue
        pts.append(cand)
    return PointSet(d, pts)


def _violates(cand, pool, d) -> bool:
    for idx in combinations(range(len(pool)), d):
        if orientation([pool[i] for i in idx] + [cand]) == 0:
            return True
    return False


def random_extension(
    ps: PointSet, k: int, seed: int, bound: int = 10000, max_tries: int = 10000
) -> PointSet:
    """ps plus k fresh points, keeping the whole set in general position."""
    rng = random.Random(seed)
    pts = list(ps.points)
    target = len(pts) + k
    tries = 0
    while len(pts) < target:
        tries += 1
        if tries > max_tries:
            raise PerturbationFailed(
                f"could not extend by {k} general-position points (seed={seed})"
            )
        cand = mk_point(tuple(rng.randint(-bound, bound) for _ in range(ps.dim)))
        if any(cand == p for p in pts):
            continue
        if len(pts) >= ps.dim and _violates(cand, pts, ps.dim):
            continue
        pts.append(cand)
    return PointSet(ps.dim, pts)
