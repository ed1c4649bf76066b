"""Exact rational feasibility LP and convex-hull intersection certificates.

The solver is a phase-1 simplex over Fractions with Bland's rule, so it
terminates on every input and is deterministic for a fixed variable order.
Only feasibility is supported; nothing here optimizes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch
from .geometry import Containment, Point, PointSet, mk_point, point_in_simplex

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class FeasibilityProblem:
    """Equality system A x = b with x >= 0 on every variable."""

    a: list
    b: list

    def __post_init__(self):
        width = {len(row) for row in self.a}
        if len(width) > 1:
            raise DimensionMismatch("ragged constraint matrix")
        if len(self.a) != len(self.b):
            raise DimensionMismatch("matrix/rhs row count mismatch")
        self.a = [[Fraction(v) for v in row] for row in self.a]
        self.b = [Fraction(v) for v in self.b]


@dataclass
class LPResult:
    feasible: bool
    x: Optional[list] = None


def solve_feasibility(prob: FeasibilityProblem) -> LPResult:
    """Phase-1 simplex with Bland's rule; exact, never cycles."""
    m = len(prob.a)
    n = len(prob.a[0]) if m else 0
    if m == 0:
        return LPResult(True, [])
    # rows with b >= 0, artificial identity appended
    tab = []
    for i in range(m):
        row = list(prob.a[i]) + [ZERO] * m + [prob.b[i]]
        if prob.b[i] < 0:
            row = [-v for v in row]
        row[n + i] = ONE
        tab.append(row)
    basis = [n + i for i in range(m)]
    width = n + m
    # net reduced-cost row r_j = z_j - c_j for minimizing the artificial sum;
    # artificials may not re-enter once they leave (safe for feasibility)
    rrow = [sum(tab[i][j] for i in range(m)) for j in range(width + 1)]
    for j in range(n, width):
        rrow[j] -= ONE
    while True:
        entering = None
        for j in range(n):  # Bland: smallest improving original column
            if rrow[j] > 0:
                entering = j
                break
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(m):
            coef = tab[i][entering]
            if coef > 0:
                ratio = tab[i][width] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            raise AssertionError("phase-1 objective unbounded: malformed tableau")
        piv = tab[leaving][entering]
        tab[leaving] = [v / piv for v in tab[leaving]]
        for i in range(m):
            if i != leaving and tab[i][entering] != 0:
                f = tab[i][entering]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leaving])]
        f = rrow[entering]
        if f:
            rrow = [a - f * b for a, b in zip(rrow, tab[leaving])]
        basis[leaving] = entering
    remaining = sum(tab[i][width] for i in range(m) if basis[i] >= n)
    if remaining != 0:
        return LPResult(False, None)
    x = [ZERO] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tab[i][width]
    return LPResult(True, x)


@dataclass
class Witness:
    """Common point of several hulls with per-part barycentric certificates."""

    point: Point
    weights: list  # one weight list per part, aligned with the part's indices

    def __post_init__(self):
        self.point = mk_point(self.point)
        self.weights = [[Fraction(w) for w in ws] for ws in self.weights]


def witness_violations(witness: Witness, parts: Sequence[Sequence[int]], ps: PointSet) -> list:
    """Exact re-check of a witness certificate; empty list means valid."""
    out = []
    if len(witness.weights) != len(parts):
        return [f"witness has {len(witness.weights)} weight rows for {len(parts)} parts"]
    for i, (part, ws) in enumerate(zip(parts, witness.weights)):
        if len(ws) != len(part):
            out.append(f"part {i}: {len(ws)} weights for {len(part)} points")
            continue
        if any(w < 0 for w in ws):
            out.append(f"part {i}: negative weight")
        if sum(ws) != 1:
            out.append(f"part {i}: weights sum to {sum(ws)}, not 1")
        recon = tuple(
            sum(w * ps.points[j][c] for w, j in zip(ws, part)) for c in range(ps.dim)
        )
        if recon != witness.point:
            out.append(f"part {i}: weighted combination does not reproduce the point")
    return out


def _common_point_problem(parts, ps: PointSet, shift: Fraction = ZERO) -> FeasibilityProblem:
    """Encode intersection of hulls; with shift t the solution is mu = lambda - t."""
    d = ps.dim
    cols = sum(len(p) for p in parts)
    offsets = []
    pos = 0
    for p in parts:
        offsets.append(pos)
        pos += len(p)
    a = []
    b = []
    for i, part in enumerate(parts):
        row = [ZERO] * cols
        for k in range(len(part)):
            row[offsets[i] + k] = ONE
        a.append(row)
        b.append(ONE - shift * len(part))
    for i in range(1, len(parts)):
        for c in range(d):
            row = [ZERO] * cols
            for k, j in enumerate(parts[0]):
                row[offsets[0] + k] = ps.points[j][c]
            for k, j in enumerate(parts[i]):
                row[offsets[i] + k] = -ps.points[j][c]
            a.append(row)
            rhs = shift * (
                sum(ps.points[j][c] for j in parts[i])
                - sum(ps.points[j][c] for j in parts[0])
            )
            b.append(rhs)
    return FeasibilityProblem(a, b)


def _split_weights(x, parts, shift: Fraction = ZERO):
    weights = []
    pos = 0
    for part in parts:
        weights.append([x[pos + k] + shift for k in range(len(part))])
        pos += len(part)
    return weights


def common_point(parts: Sequence[Sequence[int]], ps: PointSet) -> Optional[Witness]:
    """Witness for a common point of the parts' convex hulls, or None.

    The witness point is read off the first basic feasible solution; no
    interiority is attempted here.
    """
    parts = [tuple(p) for p in parts]
    seen = set()
    for p in parts:
        if not p:
            raise ValueError("empty part")
        if seen & set(p):
            raise ValueError("parts are not disjoint")
        seen |= set(p)
    res = solve_feasibility(_common_point_problem(parts, ps))
    if not res.feasible:
        return None
    weights = _split_weights(res.x, parts)
    o = tuple(
        sum(w * ps.points[j][c] for w, j in zip(weights[0], parts[0]))
        for c in range(ps.dim)
    )
    return Witness(o, weights)


def relative_interior_witness(parts, ps: PointSet, max_halvings: int = 64) -> Optional[Witness]:
    """Witness with every barycentric weight strictly positive.

    Feasibility of {lambda >= t} is monotone in t, so a shrinking-t loop
    finds a strictly positive certificate whenever one exists (down to
    2^-max_halvings of the starting threshold).
    """
    parts = [tuple(p) for p in parts]
    biggest = max(len(p) for p in parts)
    t = Fraction(1, 2 * biggest)
    for _ in range(max_halvings):
        res = solve_feasibility(_common_point_problem(parts, ps, shift=t))
        if res.feasible:
            weights = _split_weights(res.x, parts, shift=t)
            o = tuple(
                sum(w * ps.points[j][c] for w, j in zip(weights[0], parts[0]))
                for c in range(ps.dim)
            )
            return Witness(o, weights)
        t /= 2
    return None


def hull_membership(p: Point, indices: Sequence[int], ps: PointSet) -> bool:
    """Exact test p in conv({ps[i] : i in indices}) via LP feasibility."""
    p = mk_point(p)
    idx = tuple(indices)
    a = [[ps.points[j][c] for j in idx] for c in range(ps.dim)]
    a.append([ONE] * len(idx))
    b = list(p) + [ONE]
    return solve_feasibility(FeasibilityProblem(a, b)).feasible


def hull_contains(p: Point, indices: Sequence[int], ps: PointSet) -> bool:
    """Hull membership using the barycentric fast path for simplices."""
    from .errors import DegenerateSimplex

    idx = tuple(indices)
    if len(idx) <= ps.dim + 1:
        try:
            return point_in_simplex(p, [ps.points[i] for i in idx]) != Containment.OUTSIDE
        except DegenerateSimplex:
            return hull_membership(p, idx, ps)
    return hull_membership(p, idx, ps)
