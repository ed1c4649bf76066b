"""End-to-end pipelines and self-contained verifications.

`crossing_tverberg` chains: size gates, general-position gate, a bounded
partition (planar fast path or brute force), witness refinement to a
generic interior common point, the fixing loop, and optional extension
with leftover points. `verify_crossing_partition` re-checks everything
from scratch using only the exact predicates, with no pipeline state.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from . import linalg
from .errors import (
    GeneralPositionViolated,
    SizeOutOfRange,
    TrianglesIntersect,
)
from .fixing import (
    FixTrace,
    enumerate_origin_pairs,
    fix_all,
    hull_pair_verdict,
)
from .geometry import (
    Containment,
    Point,
    PointSet,
    bounding_box,
    gp_violations_with_extra,
    in_general_position,
    mk_point,
    point_in_simplex,
    triangles_linked,
    vsub,
)
from .lp import Witness, hull_membership, relative_interior_witness, witness_violations
from .tverberg import (
    Partition,
    birch_partition_planar,
    extend_partition,
    tverberg_partition_bruteforce,
)


@dataclass
class CrossingReport:
    """Pipeline output: partition, per-pair verdicts, trace, wall times."""

    partition: Partition
    verdicts: list  # r x r matrix of verdict strings ("crossing" | None)
    trace: FixTrace
    timings: dict = field(default_factory=dict)
    discarded: list = field(default_factory=list)


def _pair_verdict_matrix(partition: Partition, ps: PointSet) -> list:
    d = ps.dim
    parts = partition.parts
    o = partition.witness.point
    r = len(parts)
    matrix = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            if len(parts[i]) < d + 1 or len(parts[j]) < d + 1:
                continue
            verdict = hull_pair_verdict(parts[i], parts[j], ps, o)
            matrix[i][j] = matrix[j][i] = verdict.kind
    return matrix


def refine_witness(parts, ps: PointSet, seed: int = 0) -> Witness:
    """Generic common point: strictly positive weights, and general position
    together with the union of the full-dimensional parts.

    Starts from a relative-interior witness and, when the point still lies
    on a hyperplane spanned by d of the relevant points, nudges it inside
    the feasible region along seeded rational directions (restricted to the
    affine hulls of any sub-dimensional parts).
    """
    d = ps.dim
    witness = relative_interior_witness(parts, ps)
    if witness is None:
        raise GeneralPositionViolated(
            "the parts have no full-dimensional common region; "
            "the input is degenerate for the crossing pipeline"
        )
    full_union = sorted(i for p in parts if len(p) == d + 1 for i in p)
    anchor_points = [ps.points[i] for i in full_union]
    if not gp_violations_with_extra(anchor_points, witness.point):
        return witness
    small = [p for p in parts if len(p) < d + 1]
    directions = _nudge_directions(small, ps)
    if not directions:
        raise GeneralPositionViolated(
            "witness is pinned to a degenerate affine subspace"
        )
    mins, maxs = bounding_box(ps.points)
    scale = max((hi - lo for lo, hi in zip(mins, maxs)), default=Fraction(1)) or Fraction(1)
    rng = random.Random(seed)
    o = witness.point
    for attempt in range(512):
        eps = Fraction(1, 2 ** (12 + attempt // 8))
        coeffs = [rng.randint(-9, 9) for _ in directions]
        if all(c == 0 for c in coeffs):
            continue
        cand = tuple(
            oc + eps * scale * sum(c * v[k] for c, v in zip(coeffs, directions))
            for k, oc in enumerate(o)
        )
        if any(
            point_in_simplex(cand, [ps.points[i] for i in part]) == Containment.OUTSIDE
            for part in parts
        ):
            continue
        if gp_violations_with_extra(anchor_points, cand):
            continue
        weights = []
        for part in parts:
            from .geometry import barycentric_coordinates

            weights.append(barycentric_coordinates(cand, [ps.points[i] for i in part]))
        return Witness(cand, weights)
    raise GeneralPositionViolated(
        "no generic common point found after 512 seeded attempts"
    )


def _nudge_directions(small_parts, ps: PointSet) -> list:
    """Basis of the intersection of the small parts' affine-hull directions."""
    d = ps.dim
    if not small_parts:
        return [
            tuple(Fraction(1) if k == i else Fraction(0) for k in range(d))
            for i in range(d)
        ]
    normal_rows = []
    for part in small_parts:
        base = ps.points[part[0]]
        dirs = [list(vsub(ps.points[i], base)) for i in part[1:]]
        for normal in linalg.nullspace(dirs, d) if dirs else []:
            normal_rows.append(normal)
        if not dirs:
            # single-point part pins the witness completely
            return []
    if not normal_rows:
        return [
            tuple(Fraction(1) if k == i else Fraction(0) for k in range(d))
            for i in range(d)
        ]
    return [tuple(v) for v in linalg.nullspace(normal_rows, d)]


def crossing_tverberg(
    ps: PointSet,
    r: int,
    measure: str = "volume",
    budget: Optional[int] = None,
    seed: int = 0,
    workers: Optional[int] = None,
) -> CrossingReport:
    """Partition into r parts sharing a point, all full-dimensional hulls
    pairwise crossing; oversized inputs are handled by extending a crossing
    partition of the first (d+1)r points."""
    d = ps.dim
    n = len(ps)
    if r < 1 or n < (d + 1) * (r - 1) + 1:
        raise SizeOutOfRange(
            f"need at least (d+1)(r-1)+1={(d + 1) * (r - 1) + 1} points, got {n}"
        )
    t0 = time.perf_counter()
    violations = in_general_position(ps)
    if violations:
        raise GeneralPositionViolated(
            f"{len(violations)} affinely dependent (d+1)-subsets; "
            "perturb the input or fix the data",
            violations,
        )
    timings = {"gp_check": time.perf_counter() - t0}
    cap = (d + 1) * r
    core = list(range(min(n, cap)))
    leftover = list(range(cap, n))
    core_ps = ps if not leftover else ps.take(core)
    t1 = time.perf_counter()
    if d == 2 and len(core) == 3 * r:
        partition = birch_partition_planar(core_ps, r)
    else:
        partition = tverberg_partition_bruteforce(core_ps, r, workers=workers)
    timings["partition"] = time.perf_counter() - t1
    t2 = time.perf_counter()
    witness = refine_witness(partition.parts, core_ps, seed=seed)
    partition = Partition(partition.parts, witness)
    timings["witness"] = time.perf_counter() - t2
    t3 = time.perf_counter()
    fixed, trace = fix_all(partition, core_ps, measure=measure, budget=budget)
    timings["fixing"] = time.perf_counter() - t3
    if leftover:
        t4 = time.perf_counter()
        fixed = extend_partition(fixed, leftover, ps)
        timings["extension"] = time.perf_counter() - t4
    verdicts = _pair_verdict_matrix(fixed, ps)
    report = CrossingReport(fixed, verdicts, trace, timings)
    check = verify_crossing_partition(ps, fixed)
    assert check.ok, f"pipeline output failed verification: {check.violations}"
    timings["total"] = time.perf_counter() - t0
    return report


def crossing_simplices(
    ps: PointSet,
    measure: str = "volume",
    budget: Optional[int] = None,
    seed: int = 0,
    discard: Optional[Sequence[int]] = None,
    workers: Optional[int] = None,
) -> CrossingReport:
    """floor(n/(d+1)) vertex-disjoint pairwise crossing simplices.

    Removes n mod (d+1) points (highest indices unless specified) and runs
    the crossing pipeline with r = floor(n/(d+1)).
    """
    d = ps.dim
    n = len(ps)
    r = n // (d + 1)
    if r < 1:
        raise SizeOutOfRange(f"need at least d+1={d + 1} points, got {n}")
    spare = n % (d + 1)
    if discard is None:
        discard = list(range(n - spare, n))
    else:
        discard = sorted(set(discard))
        if len(discard) != spare:
            raise SizeOutOfRange(
                f"must discard exactly n mod (d+1) = {spare} points, got {len(discard)}"
            )
    keep = [i for i in range(n) if i not in set(discard)]
    sub = ps.take(keep)
    report = crossing_tverberg(
        sub, r, measure=measure, budget=budget, seed=seed, workers=workers
    )
    remap = {k: keep[k] for k in range(len(keep))}
    parts = [tuple(remap[i] for i in part) for part in report.partition.parts]
    witness = Witness(report.partition.witness.point, report.partition.witness.weights)
    partition = Partition(parts, witness, size_bounded=True)
    out = CrossingReport(
        partition, report.verdicts, report.trace, report.timings, list(discard)
    )
    check = verify_crossing_partition(ps, partition)
    assert check.ok, f"remapped output failed verification: {check.violations}"
    return out


# --- linking -----------------------------------------------------------------


class FaceLinkVerdict(Enum):
    LINKED = "linked"
    UNLINKED = "unlinked"
    FACES_INTERSECT = "faces_intersect"


def tetrahedra_face_linked(a, b, ps: PointSet) -> FaceLinkVerdict:
    """Whether some 2-face boundary of one tetrahedron links a 2-face of the
    other; meeting boundary curves yield the distinct FACES_INTERSECT verdict."""
    if ps.dim != 3:
        raise SizeOutOfRange("face linking is defined in R^3 only")
    a, b = tuple(sorted(a)), tuple(sorted(b))
    any_linked = False
    for fa in combinations(a, 3):
        for fb in combinations(b, 3):
            try:
                if triangles_linked(
                    [ps.points[i] for i in fa], [ps.points[i] for i in fb]
                ):
                    any_linked = True
            except TrianglesIntersect:
                return FaceLinkVerdict.FACES_INTERSECT
    return FaceLinkVerdict.LINKED if any_linked else FaceLinkVerdict.UNLINKED


# Eight integer points whose complementary tetrahedra pairs around the origin
# are never face-linked; used as the built-in negative example for the
# stronger-linking question.
LINKING_COUNTEREXAMPLE_POINTS = [
    (3, -2, 2),
    (2, -5, 3),
    (-3, 0, -4),
    (-1, 2, 0),
    (1, -5, -4),
    (4, 1, -2),
    (-2, -5, -4),
    (-3, 1, 3),
]


@dataclass
class LinkingCounterexampleReport:
    origin_pair_count: int
    origin_pairs: list
    linked_pairs: int
    faces_intersect_pairs: int
    falsified: bool


def verify_linking_counterexample(
    points=None, o: Point = (0, 0, 0)
) -> LinkingCounterexampleReport:
    """Check the built-in 8-point set: origin-containing complementary
    tetrahedra pairs exist in even number, and none of them is face-linked."""
    ps = PointSet(3, points if points is not None else LINKING_COUNTEREXAMPLE_POINTS)
    o = mk_point(o)
    pairs = enumerate_origin_pairs(ps, o)
    linked = 0
    intersecting = 0
    for f, g in pairs:
        verdict = tetrahedra_face_linked(f, g, ps)
        if verdict == FaceLinkVerdict.LINKED:
            linked += 1
        elif verdict == FaceLinkVerdict.FACES_INTERSECT:
            intersecting += 1
    falsified = not pairs or len(pairs) % 2 != 0 or linked > 0
    return LinkingCounterexampleReport(
        origin_pair_count=len(pairs),
        origin_pairs=pairs,
        linked_pairs=linked,
        faces_intersect_pairs=intersecting,
        falsified=falsified,
    )


# --- independent verification -------------------------------------------------


@dataclass
class VerificationReport:
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_crossing_partition(ps: PointSet, partition: Partition) -> VerificationReport:
    """Re-check a claimed crossing partition from primitives only.

    Checks disjointness, index range, the size bound when claimed, witness
    certificates and hull membership, and a crossing verdict for every pair
    of full-dimensional parts. No state from any producing pipeline is used.
    """
    d = ps.dim
    n = len(ps)
    out = []
    seen = set()
    for part in partition.parts:
        if not part:
            out.append("empty part")
            continue
        if any(i < 0 or i >= n for i in part):
            out.append(f"part {part} has out-of-range indices")
        overlap = seen & set(part)
        if overlap:
            out.append(f"index {sorted(overlap)} appears in two parts")
        seen |= set(part)
        if partition.size_bounded and len(part) > d + 1:
            out.append(f"part {part} exceeds the size bound d+1={d + 1}")
    if partition.witness is None:
        out.append("partition has no witness")
        return VerificationReport(out)
    witness = partition.witness
    out.extend(witness_violations(witness, partition.parts, ps))
    o = witness.point
    for part in partition.parts:
        if len(part) <= d + 1:
            try:
                status = point_in_simplex(o, [ps.points[i] for i in part])
                inside = status != Containment.OUTSIDE
            except Exception:
                inside = hull_membership(o, part, ps)
        else:
            inside = hull_membership(o, part, ps)
        if not inside:
            out.append(f"witness point is outside the hull of part {part}")
    full = [p for p in partition.parts if len(p) >= d + 1]
    for a, b in combinations(full, 2):
        verdict = hull_pair_verdict(a, b, ps, o)
        if verdict.kind != "crossing":
            out.append(f"parts {a} and {b} do not cross ({verdict.kind})")
    return VerificationReport(out)
