"""Convex-mixture monotones for encodings.

All four members of the weight/robustness family are minimizations of a
mixing coefficient over exact LPs; the free polytope for
distinguishability is the set of constant encodings (all columns equal).
``weight_fmk`` refines weight by rank strata of deterministic encodings.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import BadStratumBounds, EnumerationTooLarge, ShapeMismatch
from .exactmath import F0, F1, LpBuilder, Matrix, OPTIMAL, lp_solve, rank
from .majorize import Encoding, enumeration_guard
from .monotone import PLUS_INF


def cva(x: Encoding, y: Encoding, z: Encoding):
    """Least mixing weight placing x on the segment from z to y.

    inf { lam in [0,1] : x = lam*y + (1-lam)*z }; the affine system pins
    lam from any coordinate where y and z differ, so no LP is needed.
    """
    shape = (x.outcomes, x.hypotheses)
    if (y.outcomes, y.hypotheses) != shape or (z.outcomes, z.hypotheses) != shape:
        raise ShapeMismatch("cva arguments must share outcome/hypothesis counts")
    lam = None
    for i in range(x.outcomes):
        for c in range(x.hypotheses):
            dy = y.matrix[i, c] - z.matrix[i, c]
            dx = x.matrix[i, c] - z.matrix[i, c]
            if dy == 0:
                if dx != 0:
                    return PLUS_INF
            else:
                cand = dx / dy
                if lam is None:
                    lam = cand
                elif lam != cand:
                    return PLUS_INF
    if lam is None:  # y = z: feasible only when x = z, with weight 0
        return F0
    return lam if 0 <= lam <= 1 else PLUS_INF


def _lam_lp(build_constraints) -> object:
    """min lam over constraints added by the callback; returns the outcome."""
    b = LpBuilder()
    lam = b.nonneg("lam")
    build_constraints(b, lam)
    b.minimize({lam: F1})
    return lp_solve(b.build()), lam


def weight(x: Encoding) -> Fraction:
    """Least total mass of a general encoding in a mixture producing x.

    x = lam*g + (1-lam)*s with g an arbitrary encoding and s constant;
    substituting G = lam*g, u = (1-lam)*s keeps it one LP.
    """
    n, h = x.outcomes, x.hypotheses

    def constraints(b, lam):
        g = [[b.nonneg(f"G[{i},{c}]") for c in range(h)] for i in range(n)]
        u = [b.nonneg(f"u[{i}]") for i in range(n)]
        for i in range(n):
            for c in range(h):
                b.add_eq({g[i][c]: F1, u[i]: F1}, x.matrix[i, c])
        for c in range(h):
            b.add_eq({g[i][c]: F1 for i in range(n)} | {lam: -F1}, F0)
        b.add_eq({u[i]: F1 for i in range(n)} | {lam: F1}, F1)

    outcome, _ = _lam_lp(constraints)
    assert outcome.status == OPTIMAL  # lam = 1 is always feasible
    return outcome.primal[0]


def robustness(z: Encoding) -> Fraction:
    """Least mass of an arbitrary encoding whose mixture with z is free.

    lam*y + (1-lam)*z constant-columned, minimized over lam and y.
    """
    n, h = z.outcomes, z.hypotheses

    def constraints(b, lam):
        y = [[b.nonneg(f"Y[{i},{c}]") for c in range(h)] for i in range(n)]
        u = [b.nonneg(f"u[{i}]") for i in range(n)]
        for i in range(n):
            for c in range(h):
                # Y[i,c] + (1-lam) z[i,c] = u[i]
                b.add_eq({y[i][c]: F1, lam: -z.matrix[i, c], u[i]: -F1}, -z.matrix[i, c])
        for c in range(h):
            b.add_eq({y[i][c]: F1 for i in range(n)} | {lam: -F1}, F0)
        b.add_eq({u[i]: F1 for i in range(n)}, F1)
        b.add_le({lam: F1}, F1)

    outcome, _ = _lam_lp(constraints)
    assert outcome.status == OPTIMAL  # lam = 1 with y free is always feasible
    return outcome.primal[0]


def free_robustness(z: Encoding):
    """Like robustness, but the mixing partner must itself be free; +inf if
    no mixture within the free polytope reaches it."""
    n, h = z.outcomes, z.hypotheses

    def constraints(b, lam):
        w = [b.nonneg(f"w[{i}]") for i in range(n)]
        u = [b.nonneg(f"u[{i}]") for i in range(n)]
        for i in range(n):
            for c in range(h):
                b.add_eq({w[i]: F1, lam: -z.matrix[i, c], u[i]: -F1}, -z.matrix[i, c])
        b.add_eq({w[i]: F1 for i in range(n)} | {lam: -F1}, F0)
        b.add_eq({u[i]: F1 for i in range(n)}, F1)
        b.add_le({lam: F1}, F1)

    outcome, _ = _lam_lp(constraints)
    assert outcome.status == OPTIMAL  # lam = 1 hides z entirely, so always feasible
    lam = outcome.primal[0]
    # lam = 1 corresponds to unbounded partner mass in the unnormalized scale;
    # the feasible mass set is upward closed, so any finite witness gives lam < 1
    return PLUS_INF if lam == F1 else lam


def nonconvexity(x: Encoding):
    """Least weight on the first component when writing x as a mixture of two
    free encodings; 0 on the free set, +inf outside its (convex) hull."""
    n, h = x.outcomes, x.hypotheses

    def constraints(b, lam):
        w = [b.nonneg(f"w[{i}]") for i in range(n)]
        u = [b.nonneg(f"u[{i}]") for i in range(n)]
        for i in range(n):
            for c in range(h):
                b.add_eq({w[i]: F1, u[i]: F1}, x.matrix[i, c])
        b.add_eq({w[i]: F1 for i in range(n)} | {lam: -F1}, F0)
        b.add_eq({u[i]: F1 for i in range(n)} | {lam: F1}, F1)

    outcome, _ = _lam_lp(constraints)
    if outcome.status != OPTIMAL:
        return PLUS_INF
    return outcome.primal[0]


# --------------------------------------------------------------------------
# Vertex-description mixtures and the rank-weight family
# --------------------------------------------------------------------------


def convex_combination_weight(x: Encoding, primary: Sequence[Encoding],
                              base: Sequence[Encoding]):
    """min sum of weights on ``primary`` vertices over all convex combinations
    of primary + base vertices equal to x; +inf when x is outside the hull.

    This is the vertex-description form of the weight LP: any polytope
    pair (costly resources, free set) given by vertices plugs in here.
    """
    n, h = x.outcomes, x.hypotheses
    for e in itertools.chain(primary, base):
        if (e.outcomes, e.hypotheses) != (n, h):
            raise ShapeMismatch("mixture vertices must match the target's shape")
    b = LpBuilder()
    lams = [b.nonneg(f"lam[{i}]") for i in range(len(primary))]
    nus = [b.nonneg(f"nu[{j}]") for j in range(len(base))]
    for i in range(n):
        for c in range(h):
            coeffs = {lams[t]: primary[t].matrix[i, c] for t in range(len(primary))}
            for j in range(len(base)):
                coeffs[nus[j]] = coeffs.get(nus[j], F0) + base[j].matrix[i, c]
            b.add_eq(coeffs, x.matrix[i, c])
    b.add_eq({v: F1 for v in lams + nus}, F1)
    b.minimize({v: F1 for v in lams})
    outcome = lp_solve(b.build())
    if outcome.status != OPTIMAL:
        return PLUS_INF
    return sum((outcome.primal[i] for i in range(len(lams))), F0)


def deterministic_encodings(n: int, h: int) -> List[Encoding]:
    """All n^h encodings with delta columns, lexicographic in the outcome
    assignment."""
    total = n ** h
    if total > enumeration_guard():
        raise EnumerationTooLarge(
            f"{n}^{h} = {total} deterministic encodings exceed the guard")
    out = []
    for assignment in itertools.product(range(n), repeat=h):
        cols = [[F1 if i == a else F0 for i in range(n)] for a in assignment]
        out.append(Encoding.from_columns(cols))
    return out


def hull_member(x: Encoding, vertices: Sequence[Encoding]) -> bool:
    """Exact membership of x in the convex hull of the given encodings."""
    return convex_combination_weight(x, [], vertices) == 0


def weight_fmk(x: Encoding, m: int, k: int):
    """Rank-stratified weight: least total mass on deterministic encodings of
    rank in (m, k] when decomposing x over all deterministic encodings of
    rank at most k; +inf when x lies outside that hull.
    """
    h, n = x.hypotheses, x.outcomes
    if not (1 <= m < k <= h):
        raise BadStratumBounds(f"need 1 <= m < k <= {h}, got m={m}, k={k}")
    primary, base = [], []
    for e in deterministic_encodings(n, h):
        r = rank(e.matrix)
        if r <= m:
            base.append(e)
        elif r <= k:
            primary.append(e)
    return convex_combination_weight(x, primary, base)
