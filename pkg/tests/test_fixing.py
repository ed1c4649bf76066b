import random
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tvk.errors import BudgetExceeded, GeneralPositionViolated
from tvk.generate import random_point_set
from tvk.geometry import Containment, PointSet, point_in_simplex, simplex_volume
from tvk.lp import hull_membership
from tvk.fixing import (
    classify_pair,
    cocycle_check,
    cocycle_generator_masks,
    count_interior_points,
    delta_cocycle,
    disjoint_pair_count,
    enumerate_origin_pairs,
    fix_all,
    generated_cocycles,
    hull_pair_verdict,
    is_cocycle,
    mask_disjoint_pair_count,
    mask_to_family,
    parity_check,
    swap_witness_planar,
    unnest_pair,
)
from tvk.tverberg import Partition
from tvk.apps import refine_witness

from conftest import HEXAGON, NESTED_SIX, NINE_ONE_FIX

ORIGIN2 = (F(0), F(0))

# six points in an open halfplane off the origin: no triple collinear, no two
# on a line through the origin
HALFPLANE_SIX = [(5, 1), (7, 2), (4, 3), (9, 5), (6, 7), (3, 8)]


def nested_six_ps():
    return PointSet(2, NESTED_SIX)


# --- classification ---------------------------------------------------------


def test_classify_nested_spec_triangles():
    # collinear-with-origin apexes are fine for classification
    ps = PointSet(2, [(10, -10), (-10, -10), (0, 10), (1, -1), (-1, -1), (0, 1)])
    v = classify_pair((0, 1, 2), (3, 4, 5), ps, ORIGIN2)
    assert v.kind == "nested"
    assert v.inner == (3, 4, 5) and v.outer == (0, 1, 2)


def test_classify_crossing_mirror():
    ps = PointSet(2, [(4, 0), (-2, 3), (-2, -3), (-4, 0), (2, 3), (2, -3)])
    assert classify_pair((0, 1, 2), (3, 4, 5), ps, ORIGIN2).kind == "crossing"


def test_classify_no_common_point():
    ps = PointSet(2, [(10, 10), (11, 10), (10, 11), (-10, -10), (-11, -10), (-10, -11)])
    assert classify_pair((0, 1, 2), (3, 4, 5), ps, ORIGIN2).kind == "no_common_point"


# --- origin pairs / parity -----------------------------------------------------


def oracle_origin_pairs(ps, o):
    """Independent enumeration via LP hull membership (no barycentric path)."""
    d = ps.dim
    n = len(ps)
    out = []
    for rest in combinations(range(1, n), d):
        f = (0,) + rest
        g = tuple(i for i in range(n) if i not in f)
        if hull_membership(o, f, ps) and hull_membership(o, g, ps):
            out.append((f, g))
    return out


def test_enumerate_hexagon_pairs():
    ps = PointSet(2, HEXAGON)
    pairs = enumerate_origin_pairs(ps, ORIGIN2)
    assert ((0, 2, 4), (1, 3, 5)) in pairs
    assert len(pairs) % 2 == 0 and len(pairs) >= 2
    assert pairs == oracle_origin_pairs(ps, ORIGIN2)


def test_enumerate_nested_six_pairs():
    ps = nested_six_ps()
    pairs = enumerate_origin_pairs(ps, ORIGIN2)
    assert ((0, 1, 2), (3, 4, 5)) in pairs
    assert pairs == oracle_origin_pairs(ps, ORIGIN2)
    assert len(pairs) % 2 == 0


def test_parity_empty_when_halfplane():
    ps = PointSet(2, HALFPLANE_SIX)
    count, even = parity_check(ps, ORIGIN2)
    assert count == 0 and even


def test_parity_requires_general_position():
    ps = PointSet(2, [(1, 1), (2, 2), (-1, 3), (5, 1), (1, 5), (-2, -3)])
    with pytest.raises(GeneralPositionViolated):
        parity_check(ps, ORIGIN2)  # (1,1),(2,2) collinear with origin


@settings(max_examples=50)
@given(st.integers(min_value=0, max_value=10**6))
def test_parity_random_d2(seed):
    ps = random_point_set(2, 6, seed=seed, bound=300, extra=(0, 0))
    count, even = parity_check(ps, ORIGIN2)
    assert even and count % 2 == 0


# --- cocycle -------------------------------------------------------------------


def test_cocycle_hexagon():
    assert cocycle_check(PointSet(2, HEXAGON), ORIGIN2).ok


def test_cocycle_halfplane_all_zero():
    ps = PointSet(2, HALFPLANE_SIX)
    assert cocycle_check(ps, ORIGIN2).ok


@settings(max_examples=25)
@given(st.integers(min_value=2, max_value=3), st.integers(min_value=0, max_value=10**6))
def test_cocycle_random(d, seed):
    rng = random.Random(seed)
    n = rng.randint(d + 2, 9)
    ps = random_point_set(d, n, seed=seed, bound=300, extra=(0,) * d)
    assert cocycle_check(ps, (0,) * d).ok


# --- abstract cocycles ------------------------------------------------------------


def test_delta_generator_is_cocycle():
    universe = list(range(6))
    fam = delta_cocycle(universe, (0, 1))
    assert is_cocycle(fam, universe, 3)
    assert len(fam) == 4


def test_generated_families_are_cocycles_k2():
    universe = list(range(4))
    for fam in generated_cocycles(universe, 2):
        assert is_cocycle(fam, universe, 2)
        assert disjoint_pair_count(fam, universe) % 2 == 0


def test_mask_helpers_agree_with_sets():
    n, k = 6, 3
    subsets, gens = cocycle_generator_masks(n, k)
    rng = random.Random(0)
    for _ in range(50):
        mask = 0
        for g in gens:
            if rng.random() < 0.5:
                mask ^= g
        fam = mask_to_family(mask, subsets)
        assert is_cocycle(fam, range(n), k)
        assert mask_disjoint_pair_count(mask, subsets, n) == disjoint_pair_count(
            fam, range(n)
        )


# --- unnesting ---------------------------------------------------------------------


def test_unnest_nested_pair():
    ps = nested_six_ps()
    s1, s2 = unnest_pair((0, 1, 2), (3, 4, 5), ps, ORIGIN2)
    assert sorted(s1 + s2) == [0, 1, 2, 3, 4, 5]
    assert classify_pair(s1, s2, ps, ORIGIN2).kind == "crossing"
    for part in (s1, s2):
        assert point_in_simplex(ORIGIN2, [ps.points[i] for i in part]) != Containment.OUTSIDE
    outer_vol = simplex_volume([ps.points[i] for i in (0, 1, 2)])
    for part in (s1, s2):
        assert simplex_volume([ps.points[i] for i in part]) < outer_vol


def test_unnest_idempotent_on_crossing():
    ps = nested_six_ps()
    s1, s2 = unnest_pair((0, 1, 2), (3, 4, 5), ps, ORIGIN2)
    assert unnest_pair(s1, s2, ps, ORIGIN2) == (s1, s2)


def test_unnest_concrete_repartition():
    # nested (red) pair turns into a crossing (blue) pair over the same points
    ps = nested_six_ps()
    s1, s2 = unnest_pair((0, 1, 2), (3, 4, 5), ps, ORIGIN2)
    assert {frozenset(s1), frozenset(s2)} != {frozenset((0, 1, 2)), frozenset((3, 4, 5))}


# --- planar swap construction ---------------------------------------------------------


def test_swap_witness_hexagon():
    ps = PointSet(2, HEXAGON)
    p, pp, matching = swap_witness_planar(ps, ORIGIN2)
    counted = enumerate_origin_pairs(ps, ORIGIN2)
    assert set(matching) == set(counted)
    for k, v in matching.items():
        assert v != k and matching[v] == k


def test_swap_witness_halfplane_empty_matching():
    ps = PointSet(2, HALFPLANE_SIX)
    p, pp, matching = swap_witness_planar(ps, ORIGIN2)
    assert matching == {}
    assert 0 <= p < 6 and 0 <= pp < 6 and p != pp


@settings(max_examples=40)
@given(st.integers(min_value=0, max_value=10**6))
def test_swap_witness_involution_random(seed):
    ps = random_point_set(2, 6, seed=seed, bound=200, extra=(0, 0))
    p, pp, matching = swap_witness_planar(ps, ORIGIN2)
    counted = enumerate_origin_pairs(ps, ORIGIN2)
    assert len(matching) == len(counted)
    for k, v in matching.items():
        assert v != k and matching[v] == k
    # the matching is an independent proof that the count is even
    assert parity_check(ps, ORIGIN2) == (len(counted), True)


# --- fixing loop ------------------------------------------------------------------------


def _partition_with_witness(parts, ps, seed=0):
    w = refine_witness(parts, ps, seed=seed)
    return Partition(list(parts), w)


def test_fix_all_identity_on_crossing():
    ps = PointSet(2, [(4, 0), (-2, 3), (-2, -3), (-4, 0), (2, 3), (2, -3)])
    part = _partition_with_witness([(0, 1, 2), (3, 4, 5)], ps)
    fixed, trace = fix_all(part, ps)
    assert trace.iterations == 0
    assert fixed.parts == part.parts
    assert fixed.witness.point == part.witness.point


def test_fix_all_single_step_nested_pair():
    ps = nested_six_ps()
    part = _partition_with_witness([(0, 1, 2), (3, 4, 5)], ps)
    fixed, trace = fix_all(part, ps)
    assert trace.iterations == 1
    assert classify_pair(*fixed.parts, ps, fixed.witness.point).kind == "crossing"
    assert fixed.witness.point == part.witness.point  # witness untouched
    step = trace.steps[0]
    assert step.after < step.before


def test_fix_all_nine_points_one_fix():
    ps = PointSet(2, NINE_ONE_FIX)
    part = _partition_with_witness([(0, 1, 2), (3, 4, 5), (6, 7, 8)], ps)
    fixed, trace = fix_all(part, ps)
    assert trace.iterations == 1
    o = fixed.witness.point
    for a, b in combinations(fixed.parts, 2):
        assert classify_pair(a, b, ps, o).kind == "crossing"


def test_fix_all_point_count_measure():
    ps = PointSet(2, NINE_ONE_FIX)
    part = _partition_with_witness([(0, 1, 2), (3, 4, 5), (6, 7, 8)], ps)
    fixed, trace = fix_all(part, ps, measure="point-count")
    assert trace.measure == "point-count"
    assert trace.iterations >= 1
    for step in trace.steps:
        assert step.after < step.before
    o = fixed.witness.point
    for a, b in combinations(fixed.parts, 2):
        assert classify_pair(a, b, ps, o).kind == "crossing"


def test_fix_all_budget_exceeded():
    ps = nested_six_ps()
    part = _partition_with_witness([(0, 1, 2), (3, 4, 5)], ps)
    with pytest.raises(BudgetExceeded) as err:
        fix_all(part, ps, budget=0)
    assert err.value.trace.iterations == 0
    fixed, trace = fix_all(part, ps, budget=1)
    assert trace.iterations == 1


def test_fix_all_triple_nested_needs_three_fixes():
    from conftest import NINE_TRIPLE_NESTED

    ps = PointSet(2, NINE_TRIPLE_NESTED)
    parts = [(0, 1, 2), (3, 4, 5), (6, 7, 8)]
    for a, b in combinations(parts, 2):
        assert classify_pair(a, b, ps, ORIGIN2).kind == "nested"
    part = _partition_with_witness(parts, ps)
    for measure in ("volume", "point-count"):
        fixed, trace = fix_all(part, ps, measure=measure)
        assert trace.iterations == 3
        o = fixed.witness.point
        for a, b in combinations(fixed.parts, 2):
            assert classify_pair(a, b, ps, o).kind == "crossing"
    # a budget of 1 leaves a partial single-step trace
    with pytest.raises(BudgetExceeded) as err:
        fix_all(part, ps, budget=1)
    assert err.value.trace.iterations == 1


def test_fix_all_preserves_part_sizes():
    # sizes (3, 3, 1): the singleton pins the witness; only full parts are fixed
    single = (F(1, 13), F(1, 19))
    ps = PointSet(2, NINE_ONE_FIX[:6] + [single])
    parts = [(0, 1, 2), (3, 4, 5), (6,)]
    from tvk.lp import common_point

    w = common_point(parts, ps)
    assert w is not None and w.point == single
    fixed, trace = fix_all(Partition(parts, w), ps)
    assert trace.iterations == 1
    assert sorted(len(p) for p in fixed.parts) == [1, 3, 3]
    assert fixed.witness.point == single


# --- interior counts ----------------------------------------------------------------------


def test_count_interior_points():
    ps = PointSet(2, [(0, 0), (1, 0), (0, 1)])
    assert count_interior_points((0, 1, 2), ps) == 0
    ps2 = nested_six_ps()
    assert count_interior_points((0, 1, 2), ps2) >= 3  # inner vertices inside outer


def test_hull_pair_verdict_matches_classify_for_simplices():
    ps = nested_six_ps()
    assert hull_pair_verdict((0, 1, 2), (3, 4, 5), ps, ORIGIN2).kind == "nested"
