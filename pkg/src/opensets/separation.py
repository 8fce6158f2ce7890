"""Constructive separation and extension for exactly-presented closed sets:
distance functions, the separation gap, a piecewise-linear separating
function, and linear-bridge extension of functions off a closed domain.

Everything here works on finite unions of closed rational intervals, where
the constructions are exact: evaluation, range bounds and all the advertised
identities are decided in rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    CauchyReal,
    EmptySetError,
    FinClosed,
    NotDisjoint,
    ZERO,
    ONE,
    distance_to_closed_at,
)


@dataclass(frozen=True)
class PLFunction:
    """A piecewise-linear function given by breakpoints.

    Strictly increasing breakpoint abscissae; linear in between, constant
    beyond the extremes.  Evaluation is exact, and because linear pieces take
    their extremes at breakpoints, range questions reduce to breakpoint
    inspection.
    """

    breakpoints: tuple[tuple[Fraction, Fraction], ...]

    @staticmethod
    def of(points: Sequence[tuple[Fraction, Fraction]]) -> PLFunction:
        pts = tuple((Fraction(x), Fraction(v)) for x, v in points)
        if not pts:
            raise ValueError("a piecewise-linear function needs a breakpoint")
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if x0 >= x1:
                raise ValueError("breakpoints must be strictly increasing")
        return PLFunction(pts)

    @staticmethod
    def constant(v) -> PLFunction:
        return PLFunction.of([(ZERO, Fraction(v))])

    def __call__(self, q) -> Fraction:
        q = Fraction(q)
        pts = self.breakpoints
        if q <= pts[0][0]:
            return pts[0][1]
        if q >= pts[-1][0]:
            return pts[-1][1]
        lo, hi = 0, len(pts) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if pts[mid][0] <= q:
                lo = mid
            else:
                hi = mid
        (x0, v0), (x1, v1) = pts[lo], pts[hi]
        return v0 + (v1 - v0) * (q - x0) / (x1 - x0)

    def value_bounds(self) -> tuple[Fraction, Fraction]:
        vals = [v for _, v in self.breakpoints]
        return min(vals), max(vals)

    def sup_abs(self) -> Fraction:
        return max(abs(v) for _, v in self.breakpoints)


def distance_closed(c: FinClosed, x: CauchyReal, k: int) -> Fraction:
    """2**-k-approximation of d(x, C) for nonempty C, from endpoint geometry
    at the stage-(k+3) approximation of x."""
    if c.is_empty():
        raise EmptySetError("distance to the empty set is undefined")
    return distance_to_closed_at(x.approx(k + 3), c)


def separation_gap(c0: FinClosed, c1: FinClosed) -> Fraction | float:
    """The exact infimum of |x - y| over x in c0, y in c1.

    Zero when the sets touch or overlap; +inf (float infinity sentinel) when
    either set is empty.
    """
    if c0.is_empty() or c1.is_empty():
        return math.inf
    best: Fraction | None = None
    for a in c0.pieces:
        for b in c1.pieces:
            d = max(ZERO, b.lo - a.hi, a.lo - b.hi)
            if best is None or d < best:
                best = d
    return best


def urysohn(c0: FinClosed, c1: FinClosed) -> PLFunction:
    """A continuous g: [0,1] -> [0,1] with g = 0 exactly on c0 and g = 1
    exactly on c1.

    Anchors a breakpoint at every endpoint of every piece, valued by the set
    it belongs to.  Between consecutive anchors of equal value the function
    is constant; between anchors of different sets it is the straight
    connecting line; beyond the extreme anchors it keeps the nearest
    constant, which covers the one-sided and the both-empty cases (g = 0).
    """
    for a in c0.pieces:
        for b in c1.pieces:
            if max(a.lo, b.lo) <= min(a.hi, b.hi):
                raise NotDisjoint(f"sets overlap near {max(a.lo, b.lo)}")
    anchors: dict[Fraction, Fraction] = {}
    for p in c0.pieces:
        anchors[p.lo] = ZERO
        anchors[p.hi] = ZERO
    for p in c1.pieces:
        anchors[p.lo] = ONE
        anchors[p.hi] = ONE
    if not anchors:
        return PLFunction.constant(0)
    return PLFunction.of(sorted(anchors.items()))


def tietze_extend(d: FinClosed, f: PLFunction) -> PLFunction:
    """Extend f, given on the closed domain d, to all of [0,1].

    Requires f to carry a breakpoint at every endpoint of every piece of d.
    The extension keeps exactly the breakpoints lying in d: inside the domain
    nothing changes, across each gap the function is the line joining the
    adjacent domain endpoint values, and beyond the extremes it is constant.
    The set of breakpoint values can only shrink, so the sup norm over [0,1]
    equals the sup norm of f over d exactly.
    """
    if d.is_empty():
        raise EmptySetError("cannot extend off the empty domain")
    have = {x for x, _ in f.breakpoints}
    for p in d.pieces:
        if p.lo not in have or p.hi not in have:
            raise ValueError(f"f lacks a breakpoint at a domain endpoint of {p}")
    kept = [(x, v) for x, v in f.breakpoints if d.contains(x)]
    return PLFunction.of(kept)
