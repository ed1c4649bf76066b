"""Size-bounded Tverberg partitions and extension to oversized inputs.

The brute-force search enumerates canonical partitions and keeps the first
one certified by the exact LP; the planar fast path builds a partition
around an exactly computed centerpoint and verifies it post hoc. Results
are always independently checkable: every returned partition carries a
witness whose certificates re-verify by exact arithmetic.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Sequence

from . import linalg
from .errors import DimensionMismatch, GeneralPositionViolated, SizeOutOfRange
from .geometry import (
    Containment,
    Point,
    PointSet,
    angular_order,
    barycentric_coordinates,
    caratheodory_reduce,
    mk_point,
    point_in_simplex,
    vsub,
)
from .lp import Witness, common_point, hull_contains

BRUTE_FORCE_MAX_POINTS = 14


@dataclass
class Partition:
    """Disjoint index sets over a PointSet, optionally with a witness.

    Parts are kept canonical: each part sorted ascending, parts ordered by
    smallest element. `size_bounded` records whether the partition claims
    the at-most-(d+1) size bound.
    """

    parts: list
    witness: Optional[Witness] = None
    size_bounded: bool = True

    def __post_init__(self):
        self.parts = canonical_parts(self.parts)

    def indices(self):
        return sorted(i for part in self.parts for i in part)


def canonical_parts(parts) -> list:
    out = [tuple(sorted(p)) for p in parts]
    out.sort(key=lambda p: p[0])
    return out


def part_weights(o: Point, parts, ps: PointSet) -> list:
    """Exact barycentric weights of o for every part (simplex parts only)."""
    weights = []
    for part in parts:
        coords = barycentric_coordinates(o, [ps.points[i] for i in part])
        if coords is None or any(c < 0 for c in coords):
            raise GeneralPositionViolated(
                f"witness is not in the hull of part {part}"
            )
        weights.append(coords)
    return weights


def radon_partition(ps: PointSet) -> Partition:
    """Radon partition of d+2 points from an exact affine dependence."""
    d = ps.dim
    n = len(ps)
    if n != d + 2:
        raise SizeOutOfRange(f"radon_partition needs exactly d+2={d + 2} points, got {n}")
    rows = [[ps.points[j][c] for j in range(n)] for c in range(d)]
    rows.append([Fraction(1)] * n)
    kernel = linalg.nullspace(rows, n)
    assert kernel, "d+2 points always carry an affine dependence"
    alpha = kernel[0]
    lead = next(a for a in alpha if a != 0)
    if lead < 0:
        alpha = [-a for a in alpha]
    pos = tuple(i for i in range(n) if alpha[i] >= 0)
    neg = tuple(i for i in range(n) if alpha[i] < 0)
    assert pos and neg, "dependence must have both signs"
    total = sum(alpha[i] for i in pos)
    o = tuple(
        sum((alpha[i] / total) * ps.points[i][c] for i in pos) for c in range(d)
    )
    w_pos = [alpha[i] / total for i in pos]
    w_neg = [-alpha[i] / total for i in neg]
    parts = [pos, neg]
    weights = [w_pos, w_neg]
    order = sorted(range(2), key=lambda k: parts[k][0])
    return Partition(
        [parts[k] for k in order],
        Witness(o, [weights[k] for k in order]),
    )


def iter_bounded_partitions(n: int, r: int, max_size: int) -> Iterator[tuple]:
    """Unordered partitions of 0..n-1 into r nonempty parts of size <= max_size.

    Canonical order: parts anchored at their smallest element, candidate
    parts enumerated in lexicographic tuple order.
    """

    def rec(remaining, parts_left):
        if not remaining:
            if parts_left == 0:
                yield ()
            return
        if parts_left == 0:
            return
        if len(remaining) > parts_left * max_size or len(remaining) < parts_left:
            return
        anchor = remaining[0]
        rest = remaining[1:]

        def extend(prefix, start):
            part = (anchor,) + prefix
            left = [x for x in rest if x not in prefix]
            yield from (
                (part,) + tail for tail in rec(tuple(left), parts_left - 1)
            )
            if len(part) < max_size:
                for i in range(start, len(rest)):
                    yield from extend(prefix + (rest[i],), i + 1)

        yield from extend((), 0)

    yield from rec(tuple(range(n)), r)


def _boxes_intersect(parts, ps: PointSet) -> bool:
    d = ps.dim
    for c in range(d):
        lo = max(min(ps.points[i][c] for i in part) for part in parts)
        hi = min(max(ps.points[i][c] for i in part) for part in parts)
        if lo > hi:
            return False
    return True


def _first_valid(ps, candidates):
    for parts in candidates:
        if not _boxes_intersect(parts, ps):
            continue
        witness = common_point(parts, ps)
        if witness is not None:
            return Partition(list(parts), witness)
    return None


def _worker_count() -> int:
    raw = os.environ.get("TVK_THREADS", "1")
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"TVK_THREADS must be an integer >= 1, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"TVK_THREADS must be an integer >= 1, got {raw!r}")
    return value


def tverberg_partition_bruteforce(
    ps: PointSet, r: int, workers: Optional[int] = None
) -> Partition:
    """First canonical size-bounded partition whose hulls share a point.

    Existence is guaranteed for (d+1)(r-1)+1 <= n <= (d+1)r points. Gated at
    desk scale (n <= 14); larger planar inputs should take the fast path.
    """
    d = ps.dim
    n = len(ps)
    if r < 1:
        raise SizeOutOfRange("r must be at least 1")
    if not ((d + 1) * (r - 1) + 1 <= n <= (d + 1) * r):
        raise SizeOutOfRange(
            f"need (d+1)(r-1)+1 <= n <= (d+1)r, got n={n}, d={d}, r={r}"
        )
    if n > BRUTE_FORCE_MAX_POINTS:
        raise SizeOutOfRange(
            f"brute force is gated at {BRUTE_FORCE_MAX_POINTS} points (got {n}); "
            "use the planar fast path for larger inputs"
        )
    if workers is None:
        workers = _worker_count()
    gen = iter_bounded_partitions(n, r, d + 1)
    if workers <= 1:
        found = _first_valid(ps, gen)
    else:
        found = _parallel_first_valid(ps, r, d, workers)
    assert found is not None, "Tverberg partition must exist in the stated range"
    return found


def _search_block(args):
    ps_data, dim, block = args
    ps = PointSet(dim, ps_data)
    res = _first_valid(ps, block)
    if res is None:
        return None
    return res.parts, res.witness.point, res.witness.weights


def _parallel_first_valid(ps, r, d, workers):
    """Split the canonical enumeration into first-part blocks and scan them
    in batches; the earliest block with a hit wins, so the result matches
    the sequential canonical-first contract."""
    from concurrent.futures import ProcessPoolExecutor

    all_parts = list(iter_bounded_partitions(len(ps), r, d + 1))
    blocks = []
    for parts in all_parts:
        if blocks and blocks[-1][0][0] == parts[0]:
            blocks[-1].append(parts)
        else:
            blocks.append([parts])
    ps_data = list(ps.points)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for start in range(0, len(blocks), workers):
            chunk = blocks[start : start + workers]
            for result in pool.map(
                _search_block, [(ps_data, ps.dim, blk) for blk in chunk]
            ):
                if result is not None:
                    parts, point, weights = result
                    return Partition(list(parts), Witness(point, weights))
    return None


# --- planar centerpoint fast path -------------------------------------------


def _scaled_int_points(ps: PointSet):
    denom = 1
    for p in ps.points:
        for c in p:
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
    return [(int(p[0] * denom), int(p[1] * denom)) for p in ps.points], denom


def _depth_at_least(qx: int, qy: int, qd: int, pts, m: int) -> bool:
    """Exact halfplane depth >= m for homogeneous candidate (qx/qd, qy/qd)."""
    vs = []
    zeros = 0
    for x, y in pts:
        v = (x * qd - qx, y * qd - qy)
        if v == (0, 0):
            zeros += 1
        else:
            vs.append(v)
    if not vs:
        return len(pts) >= m
    dirs = set()
    for vx, vy in vs:
        g = math.gcd(abs(vx), abs(vy))
        dirs.add((-vy // g, vx // g))
        dirs.add((vy // g, -vx // g))
    for wx, wy in dirs:
        count = zeros
        for vx, vy in vs:
            s = vx * wx + vy * wy
            if s > 0 or (s == 0 and wx * vy - wy * vx > 0):
                count += 1
        if count < m:
            return False
    return True


def _homogeneous_candidate(q: Point, denom: int):
    """Express q in the scaled integer frame as (qx, qy, qd) with qd > 0."""
    a, b = q[0] * denom, q[1] * denom
    qd = (a.denominator * b.denominator) // math.gcd(a.denominator, b.denominator)
    return int(a * qd), int(b * qd), qd


def halfplane_depth(q: Point, ps: PointSet) -> int:
    """Exact halfplane depth of q: min points in a closed halfplane containing q."""
    if ps.dim != 2:
        raise DimensionMismatch("halfplane_depth is planar only")
    q = mk_point(q)
    pts, denom = _scaled_int_points(ps)
    qx, qy, qd = _homogeneous_candidate(q, denom)
    vs = []
    zeros = 0
    for x, y in pts:
        v = (x * qd - qx, y * qd - qy)
        if v == (0, 0):
            zeros += 1
        else:
            vs.append(v)
    if not vs:
        return len(ps)
    dirs = set()
    for vx, vy in vs:
        g = math.gcd(abs(vx), abs(vy))
        dirs.add((-vy // g, vx // g))
        dirs.add((vy // g, -vx // g))
    best = len(ps)
    for wx, wy in dirs:
        count = zeros
        for vx, vy in vs:
            s = vx * wx + vy * wy
            if s > 0 or (s == 0 and wx * vy - wy * vx > 0):
                count += 1
        best = min(best, count)
    return best


def centerpoint_planar(ps: PointSet, exclude_input_points: bool = False) -> Point:
    """First candidate point of halfplane depth >= ceil(n/3).

    Candidates are the input points (in index order) followed by all
    pairwise line intersections in lexicographic line-pair order.
    """
    if ps.dim != 2:
        raise DimensionMismatch("centerpoint_planar requires d=2")
    n = len(ps)
    if n == 0:
        raise SizeOutOfRange("empty point set has no centerpoint")
    m = -(-n // 3)  # ceil
    pts, denom = _scaled_int_points(ps)
    input_set = set(pts)

    def ok(qx, qy, qd):
        if exclude_input_points and qd == 1 and (qx, qy) in input_set:
            return None
        if _depth_at_least(qx, qy, qd, pts, m):
            return (Fraction(qx, qd * denom), Fraction(qy, qd * denom))
        return None

    seen = set()
    if not exclude_input_points:
        for x, y in pts:
            if (x, y, 1) in seen:
                continue
            seen.add((x, y, 1))
            hit = ok(x, y, 1)
            if hit:
                return hit
    lines = list(combinations(range(n), 2))
    for li, lj in combinations(range(len(lines)), 2):
        a, b = (pts[k] for k in lines[li])
        c, d = (pts[k] for k in lines[lj])
        ux, uy = b[0] - a[0], b[1] - a[1]
        vx, vy = d[0] - c[0], d[1] - c[1]
        den = ux * vy - uy * vx
        if den == 0:
            continue
        t_num = (c[0] - a[0]) * vy - (c[1] - a[1]) * vx
        qx = a[0] * den + t_num * ux
        qy = a[1] * den + t_num * uy
        qd = den
        if qd < 0:
            qx, qy, qd = -qx, -qy, -qd
        g = math.gcd(math.gcd(abs(qx), abs(qy)), qd)
        key = (qx // g, qy // g, qd // g)
        if key in seen:
            continue
        seen.add(key)
        hit = ok(*key)
        if hit:
            return hit
    raise GeneralPositionViolated(
        "no candidate centerpoint found (degenerate configuration)"
    )


def birch_partition_planar(ps: PointSet, r: int) -> Partition:
    """Partition 3r planar points into r triples around an exact centerpoint.

    Points are sorted by angle around the centerpoint o and grouped as
    {i, i+r, i+2r}; containment of o in every triple is verified exactly,
    with a brute-force fallback on failure.
    """
    if ps.dim != 2:
        raise DimensionMismatch("birch_partition_planar requires d=2")
    n = len(ps)
    if n != 3 * r:
        raise SizeOutOfRange(f"need exactly 3r points, got n={n}, r={r}")
    try:
        o = centerpoint_planar(ps, exclude_input_points=True)
        vectors = [vsub(p, o) for p in ps.points]
        order = angular_order(vectors)
        parts = canonical_parts(
            (order[i], order[i + r], order[i + 2 * r]) for i in range(r)
        )
        for part in parts:
            status = point_in_simplex(o, [ps.points[i] for i in part])
            if status == Containment.OUTSIDE:
                raise GeneralPositionViolated("centerpoint fell outside a triple")
        weights = part_weights(o, parts, ps)
        return Partition(parts, Witness(o, weights))
    except GeneralPositionViolated:
        return tverberg_partition_bruteforce(ps, r)


def balance_parts(partition: Partition, ps: PointSet) -> Partition:
    """Shrink oversized parts around the witness and refill small ones.

    Oversized parts are reduced to at most d+1 points still containing the
    witness (Caratheodory search); removed points top up parts below d+1 in
    canonical order. The witness point is unchanged and stays valid.
    """
    if partition.witness is None:
        raise ValueError("balance_parts needs a witness")
    d = ps.dim
    o = partition.witness.point
    total = sum(len(p) for p in partition.parts)
    if total > (d + 1) * len(partition.parts):
        raise SizeOutOfRange("more points than r*(d+1); the bound is unreachable")
    reduced = []
    pool = []
    for part in partition.parts:
        if len(part) <= d + 1:
            reduced.append(tuple(part))
            continue
        keep = caratheodory_reduce(part, o, ps)
        reduced.append(tuple(keep))
        pool.extend(sorted(set(part) - set(keep)))
    pool.sort()
    filled = []
    for part in canonical_parts(reduced):
        room = (d + 1) - len(part)
        if room > 0 and pool:
            take, pool = pool[:room], pool[room:]
            part = tuple(sorted(part + tuple(take)))
        filled.append(part)
    assert not pool, "removed points exceed refill capacity"
    parts = canonical_parts(filled)
    weights = []
    for part in parts:
        coords = barycentric_coordinates(o, [ps.points[i] for i in part])
        if coords is None:
            # refilled part may exceed the witness's affine span only when
            # degenerate; certify via the reduced core instead
            raise GeneralPositionViolated("witness left a refilled part's hull")
        weights.append(coords)
    return Partition(parts, Witness(o, weights))


def extend_partition(partition: Partition, leftover: Sequence[int], ps: PointSet) -> Partition:
    """Insert leftover points one at a time, preserving pairwise crossings.

    A point inside some hull joins the first such part; otherwise it joins
    a part whose grown hull is inclusion-minimal (smallest index on ties).
    Crossings are re-verified exactly after every insertion.
    """
    from .fixing import hull_pair_verdict

    if partition.witness is None:
        raise ValueError("extend_partition needs a witness")
    d = ps.dim
    o = partition.witness.point
    parts = [tuple(p) for p in partition.parts]
    weights = [list(w) for w in partition.witness.weights]
    for idx in sorted(leftover):
        p = ps.points[idx]
        target = None
        for i, part in enumerate(parts):
            if hull_contains(p, part, ps):
                target = i
                break
        if target is None:
            grown = [part + (idx,) for part in parts]
            contains = [
                [
                    i != j
                    and all(hull_contains(ps.points[v], grown[i], ps) for v in grown[j])
                    for j in range(len(parts))
                ]
                for i in range(len(parts))
            ]
            # i is inclusion-minimal iff no grown hull is a proper subset of it
            minimal = [
                i
                for i in range(len(parts))
                if not any(
                    contains[i][j] and not contains[j][i]
                    for j in range(len(parts))
                    if j != i
                )
            ]
            target = minimal[0]
        parts[target] = tuple(sorted(parts[target] + (idx,)))
        weights[target] = _weights_with_zero(parts[target], idx, weights[target])
        full = [i for i, part in enumerate(parts) if len(part) >= d + 1]
        for a in range(len(full)):
            for b in range(a + 1, len(full)):
                verdict = hull_pair_verdict(parts[full[a]], parts[full[b]], ps, o)
                if verdict.kind != "crossing":
                    from .errors import CrossingLost

                    raise CrossingLost(
                        f"inserting point {idx} broke crossing of parts "
                        f"{parts[full[a]]} / {parts[full[b]]} ({verdict.kind})"
                    )
    order = sorted(range(len(parts)), key=lambda i: parts[i][0])
    return Partition(
        [parts[i] for i in order],
        Witness(o, [weights[i] for i in order]),
        size_bounded=False,
    )


def _weights_with_zero(new_part, new_idx, old_weights):
    pos = new_part.index(new_idx)
    out = list(old_weights)
    out.insert(pos, Fraction(0))
    return out
