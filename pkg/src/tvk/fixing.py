"""Pair classification, parity and cocycle checks, unnesting, and the
terminating fixing loop.

Two simplices whose hulls share a point either cross (their boundaries
meet) or are nested; the fixing loop repeatedly repartitions the 2(d+1)
points of a nested pair into a crossing pair with the same common point,
and instruments the strictly decreasing measure that forces termination.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import (
    BudgetExceeded,
    GeneralPositionViolated,
    ParityViolated,
)
from .geometry import (
    Containment,
    Point,
    PointSet,
    angular_order,
    barycentric_coordinates,
    in_general_position,
    mk_point,
    point_in_simplex,
    simplex_volume,
    vsub,
)
from .lp import Witness, hull_contains
from .tverberg import Partition, canonical_parts


@dataclass
class PairClass:
    """Trichotomy verdict for two hulls sharing (or not) a common point."""

    kind: str  # "crossing" | "nested" | "no_common_point"
    inner: Optional[tuple] = None
    outer: Optional[tuple] = None


def classify_pair(a, b, ps: PointSet, o: Point) -> PairClass:
    """Classify two disjoint (d+1)-simplices relative to a candidate point o.

    NoCommonPoint when o misses either hull; Nested when one simplex's
    vertices all lie in the other's closed hull; Crossing otherwise (for
    simplices sharing a point this exhausts the possibilities).
    """
    a, b = tuple(sorted(a)), tuple(sorted(b))
    o = mk_point(o)
    pa = [ps.points[i] for i in a]
    pb = [ps.points[i] for i in b]
    if (
        point_in_simplex(o, pa) == Containment.OUTSIDE
        or point_in_simplex(o, pb) == Containment.OUTSIDE
    ):
        return PairClass("no_common_point")
    if all(point_in_simplex(p, pb) != Containment.OUTSIDE for p in pa):
        return PairClass("nested", inner=a, outer=b)
    if all(point_in_simplex(p, pa) != Containment.OUTSIDE for p in pb):
        return PairClass("nested", inner=b, outer=a)
    return PairClass("crossing")


def hull_pair_verdict(a, b, ps: PointSet, o: Point) -> PairClass:
    """classify_pair generalized to hulls with more than d+1 vertices."""
    a, b = tuple(sorted(a)), tuple(sorted(b))
    d = ps.dim
    if len(a) == d + 1 and len(b) == d + 1:
        return classify_pair(a, b, ps, o)
    o = mk_point(o)
    if not (hull_contains(o, a, ps) and hull_contains(o, b, ps)):
        return PairClass("no_common_point")
    if all(hull_contains(ps.points[i], b, ps) for i in a):
        return PairClass("nested", inner=a, outer=b)
    if all(hull_contains(ps.points[i], a, ps) for i in b):
        return PairClass("nested", inner=b, outer=a)
    return PairClass("crossing")


def _require_origin_setup(ps: PointSet, o: Point):
    d = ps.dim
    if len(ps) != 2 * (d + 1):
        raise GeneralPositionViolated(
            f"need exactly 2(d+1)={2 * (d + 1)} points, got {len(ps)}"
        )
    violations = in_general_position(ps, extra=o)
    if violations:
        raise GeneralPositionViolated(
            "point set with the candidate point is not in general position",
            violations,
        )


def enumerate_origin_pairs(ps: PointSet, o: Point) -> list:
    """All complementary (d+1)-set partitions {F, G} with o in both hulls.

    Canonical order: F is the side containing index 0, listed by F's
    lexicographic order.
    """
    o = mk_point(o)
    _require_origin_setup(ps, o)
    d = ps.dim
    n = len(ps)
    out = []
    for rest in combinations(range(1, n), d):
        f = (0,) + rest
        g = tuple(i for i in range(n) if i not in f)
        if point_in_simplex(o, [ps.points[i] for i in f]) == Containment.OUTSIDE:
            continue
        if point_in_simplex(o, [ps.points[i] for i in g]) == Containment.OUTSIDE:
            continue
        out.append((f, g))
    return out


def parity_check(ps: PointSet, o: Point):
    """Count origin-containing complementary pairs; the count must be even.

    Returns (count, True); an odd count raises ParityViolated since it would
    indicate a predicate bug.
    """
    count = len(enumerate_origin_pairs(ps, o))
    if count % 2 != 0:
        raise ParityViolated(f"odd origin-pair count {count}")
    return count, True


@dataclass
class CocycleResult:
    ok: bool
    offending: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def cocycle_check(ps: PointSet, o: Point) -> CocycleResult:
    """For every (d+2)-subset M, the number of (d+1)-subsets of M whose hull
    contains o must be 0 or 2."""
    o = mk_point(o)
    violations = in_general_position(ps, extra=o)
    if violations:
        raise GeneralPositionViolated(
            "point set with the candidate point is not in general position",
            violations,
        )
    d = ps.dim
    n = len(ps)
    member = {}
    for f in combinations(range(n), d + 1):
        member[f] = (
            point_in_simplex(o, [ps.points[i] for i in f]) != Containment.OUTSIDE
        )
    for m in combinations(range(n), d + 2):
        count = sum(1 for f in combinations(m, d + 1) if member[f])
        if count not in (0, 2):
            return CocycleResult(False, m)
    return CocycleResult(True)


# --- abstract cocycles -------------------------------------------------------


def delta_cocycle(universe: Sequence[int], d_set: Sequence[int]) -> frozenset:
    """Generator cocycle: all k-sets containing the fixed (k-1)-set."""
    d_set = frozenset(d_set)
    k = len(d_set) + 1
    rest = [v for v in universe if v not in d_set]
    return frozenset(d_set | {v} for v in rest) if rest else frozenset()


def is_cocycle(family: Iterable[frozenset], universe: Sequence[int], k: int) -> bool:
    fam = set(frozenset(f) for f in family)
    for m in combinations(universe, k + 1):
        count = sum(1 for f in combinations(m, k) if frozenset(f) in fam)
        if count % 2 != 0:
            return False
    return True


def generated_cocycles(universe: Sequence[int], k: int):
    """All symmetric-difference sums of delta generators, as frozensets of k-sets."""
    gens = [
        delta_cocycle(universe, d) for d in combinations(universe, k - 1)
    ]
    seen = set()
    for mask in range(2 ** len(gens)):
        fam = frozenset()
        for i, g in enumerate(gens):
            if mask >> i & 1:
                fam = fam ^ g
        if fam not in seen:
            seen.add(fam)
            yield fam

def disjoint_pair_count(family: Iterable[frozenset], universe: Sequence[int]) -> int:
    """Number of unordered pairs {F, G} in the family with F, G disjoint."""
    fam = set(frozenset(f) for f in family)
    total = 0
    for f, g in combinations(sorted(fam, key=sorted), 2):
        if not (f & g):
            total += 1
    return total


def cocycle_generator_masks(n: int, k: int):
    """Bitmask form of the generator cocycles over universe range(n).

    Returns (subsets, gens): `subsets` lists all k-subsets, and each
    generator is an int whose bits select the k-sets containing one fixed
    (k-1)-set. XOR of generators is symmetric difference of families.
    """
    subsets = list(combinations(range(n), k))
    index = {s: i for i, s in enumerate(subsets)}
    gens = []
    for d in combinations(range(n), k - 1):
        mask = 0
        for v in range(n):
            if v not in d:
                mask |= 1 << index[tuple(sorted(d + (v,)))]
        gens.append(mask)
    return subsets, gens


def mask_disjoint_pair_count(mask: int, subsets, n: int) -> int:
    """Complementary-pair count of a bitmask family on a 2k-element universe."""
    index = {s: i for i, s in enumerate(subsets)}
    full = frozenset(range(n))
    total = 0
    for i, s in enumerate(subsets):
        comp = tuple(sorted(full - frozenset(s)))
        j = index[comp]
        if i < j and (mask >> i & 1) and (mask >> j & 1):
            total += 1
    return total


def mask_to_family(mask: int, subsets):
    return frozenset(frozenset(subsets[i]) for i in range(len(subsets)) if mask >> i & 1)


# --- unnesting ---------------------------------------------------------------


def unnest_pair(t1, t2, ps: PointSet, o: Point):
    """Repartition two origin-sharing (d+1)-sets into a crossing pair.

    Already-crossing inputs are returned unchanged. For a nested input, the
    parity of origin pairs guarantees a second pair over the same 2(d+1)
    points, and only one pair can realize the unique outer hull, so a
    crossing pair exists; the canonically first one is returned.
    """
    t1, t2 = tuple(sorted(t1)), tuple(sorted(t2))
    o = mk_point(o)
    verdict = classify_pair(t1, t2, ps, o)
    if verdict.kind == "no_common_point":
        raise GeneralPositionViolated("common point missing; unnesting undefined")
    if verdict.kind == "crossing":
        return t1, t2
    union = sorted(t1 + t2)
    sub = ps.take(union)
    local = {j: union[j] for j in range(len(union))}
    input_pair = frozenset((frozenset(t1), frozenset(t2)))
    for f, g in enumerate_origin_pairs(sub, o):
        fa = tuple(local[j] for j in f)
        ga = tuple(local[j] for j in g)
        if frozenset((frozenset(fa), frozenset(ga))) == input_pair:
            continue
        if classify_pair(fa, ga, ps, o).kind == "crossing":
            first = min(fa[0], ga[0])
            return (fa, ga) if fa[0] == first else (ga, fa)
    raise AssertionError(
        "no crossing repartition exists: contradicts the parity argument"
    )


def swap_witness_planar(ps: PointSet, o: Point):
    """Two angularly consecutive same-side points and the swap matching.

    Mirrors the six points through o; two circularly consecutive directions
    of the same color must exist, and swapping the corresponding original
    points between parts matches the counted origin partitions in pairs.
    Returns (p, p_prime, matching) with the matching as a dict on canonical
    (F, G) pairs.
    """
    if ps.dim != 2:
        raise GeneralPositionViolated("swap construction is planar only")
    o = mk_point(o)
    _require_origin_setup(ps, o)
    n = len(ps)
    vectors = []
    owner = []  # (original index, is_mirror)
    for i, p in enumerate(ps.points):
        vectors.append(vsub(p, o))
        owner.append((i, False))
    for i, p in enumerate(ps.points):
        vectors.append(tuple(-c for c in vsub(p, o)))
        owner.append((i, True))
    order = angular_order(vectors)
    pair = None
    for k in range(len(order)):
        a, b = order[k], order[(k + 1) % len(order)]
        if owner[a][1] == owner[b][1]:
            pair = (owner[a][0], owner[b][0])
            break
    assert pair is not None, "alternating colors would force mirrored duplicates"
    p, p_prime = sorted(pair)
    counted = enumerate_origin_pairs(ps, o)
    matching = {}
    key = {frozenset((frozenset(f), frozenset(g))): (f, g) for f, g in counted}
    for f, g in counted:
        fs, gs = set(f), set(g)
        if p in fs and p_prime in fs or p in gs and p_prime in gs:
            raise AssertionError(
                "consecutive same-side points inside one origin triple: predicate bug"
            )
        fs2 = (fs - {p}) | {p_prime} if p in fs else (fs - {p_prime}) | {p}
        gs2 = (gs - {p_prime}) | {p} if p_prime in gs else (gs - {p}) | {p_prime}
        image = key.get(frozenset((frozenset(fs2), frozenset(gs2))))
        if image is None:
            raise AssertionError("swap left the counted set: predicate bug")
        matching[(f, g)] = image
    return p, p_prime, matching


# --- fixing loop -------------------------------------------------------------


def count_interior_points(simplex, ps: PointSet) -> int:
    """Points of ps strictly inside the simplex's hull (vertices never count)."""
    verts = [ps.points[i] for i in simplex]
    return sum(
        1
        for i in range(len(ps))
        if i not in simplex
        and point_in_simplex(ps.points[i], verts) == Containment.INTERIOR
    )


@dataclass
class FixStep:
    fixed: tuple  # part indices at the time of the fix
    before: list
    after: list


@dataclass
class FixTrace:
    measure: str = "volume"
    steps: list = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.steps)


def _measure_vector(parts, ps: PointSet, measure: str) -> list:
    d = ps.dim
    full = [p for p in parts if len(p) == d + 1]
    if measure == "volume":
        values = [simplex_volume([ps.points[i] for i in p]) for p in full]
    elif measure == "point-count":
        values = [Fraction(count_interior_points(p, ps)) for p in full]
    else:
        raise ValueError(f"unknown measure {measure!r}")
    return sorted(values, reverse=True)


def fix_all(
    partition: Partition,
    ps: PointSet,
    measure: str = "volume",
    budget: Optional[int] = None,
):
    """Unnest nested pairs until every full-dimensional pair crosses.

    The witness point is left untouched and part sizes are preserved. Each
    step must strictly decrease the sorted measure vector in lexicographic
    order; a violation is a bug and raises AssertionError. An explicit
    budget that runs out raises BudgetExceeded with the partial trace.
    """
    if partition.witness is None:
        raise ValueError("fix_all needs a witness")
    d = ps.dim
    o = partition.witness.point
    parts = canonical_parts(partition.parts)
    trace = FixTrace(measure=measure)
    while True:
        full = [i for i, p in enumerate(parts) if len(p) == d + 1]
        nested_at = None
        for a in range(len(full)):
            for b in range(a + 1, len(full)):
                i, j = full[a], full[b]
                verdict = classify_pair(parts[i], parts[j], ps, o)
                if verdict.kind == "no_common_point":
                    raise AssertionError(
                        "witness missing from a part during fixing: invalid input"
                    )
                if verdict.kind == "nested":
                    nested_at = (i, j, verdict)
                    break
            if nested_at:
                break
        if nested_at is None:
            break
        if budget is not None and trace.iterations >= budget:
            raise BudgetExceeded(
                f"fixing needs more than {budget} steps",
                partition=Partition(parts, _rebuild_witness(parts, o, ps)),
                trace=trace,
            )
        i, j, verdict = nested_at
        before = _measure_vector(parts, ps, measure)
        outer_value = (
            simplex_volume([ps.points[k] for k in verdict.outer])
            if measure == "volume"
            else Fraction(count_interior_points(verdict.outer, ps))
        )
        s1, s2 = unnest_pair(parts[i], parts[j], ps, o)
        if measure == "volume":
            for s in (s1, s2):
                assert (
                    simplex_volume([ps.points[k] for k in s]) < outer_value
                ), "replacement simplex not smaller than the outer one"
        parts[i], parts[j] = s1, s2
        parts = canonical_parts(parts)
        after = _measure_vector(parts, ps, measure)
        assert after < before, (
            f"measure vector did not drop lexicographically: {before} -> {after}"
        )
        trace.steps.append(FixStep((i, j), before, after))
    witness = _rebuild_witness(parts, o, ps)
    return Partition(parts, witness, size_bounded=partition.size_bounded), trace


def _rebuild_witness(parts, o, ps):
    weights = []
    for part in parts:
        coords = barycentric_coordinates(o, [ps.points[i] for i in part])
        assert coords is not None and all(c >= 0 for c in coords), (
            "witness must stay inside every part during fixing"
        )
        weights.append(coords)
    return Witness(o, weights)
