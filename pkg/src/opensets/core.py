"""Exact numeric core: rationals, Cauchy-real oracles, rational intervals,
and the endpoint sweep that verifies finite covers and computes measures.

All set semantics are relative to the unit interval: an interval is free to
carry endpoints outside [0, 1], but membership, measure, covering and
normalisation treat it as intersected with [0, 1].  Every comparison in this
module is exact rational arithmetic; there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class OracleUnsound(RuntimeError):
    """A caller-supplied oracle returned mutually inconsistent answers."""


class NotDisjoint(ValueError):
    """Two closed sets required to be disjoint actually intersect."""


class EmptySetError(ValueError):
    """An operation that needs a nonempty set was given an empty one."""


def pow2(n: int) -> Fraction:
    """2**n as an exact rational, n may be negative."""
    if n >= 0:
        return Fraction(1 << n)
    return Fraction(1, 1 << (-n))


# ---------------------------------------------------------------------------
# Cauchy reals


class CauchyReal:
    """A real number as a stage-indexed rational approximation oracle.

    The supplied function must satisfy the fast-convergence modulus

        |approx(n) - approx(n + i)| <= 2**-n        for all n, i >= 0,

    which also bounds the distance to the limit by 2**-n.  Constructors that
    build a real from per-stage estimates should therefore hand in values
    within 2**-(n+1) of the limit (see ``from_midpoints``).  Results are
    memoised, so repeated queries at a stage return the same rational and the
    underlying oracle is consulted at most once per stage.
    """

    __slots__ = ("_fn", "_cache", "_name")

    def __init__(self, fn: Callable[[int], Fraction], name: str | None = None):
        self._fn = fn
        self._cache: dict[int, Fraction] = {}
        self._name = name

    def approx(self, n: int) -> Fraction:
        """The stage-n rational approximation, within 2**-n of the value."""
        if n < 0:
            raise ValueError("approximation stage must be >= 0")
        got = self._cache.get(n)
        if got is None:
            got = Fraction(self._fn(n))
            self._cache[n] = got
        return got

    @staticmethod
    def constant(q: Fraction | int | str) -> CauchyReal:
        """The real equal to the rational q (constant sequence)."""
        q = Fraction(q)
        return CauchyReal(lambda n: q, name=f"{q}")

    @staticmethod
    def from_midpoints(fn: Callable[[int], Fraction], name: str | None = None) -> CauchyReal:
        """Wrap fn where fn(n) is within 2**-(n+1) of the limit.

        The half-stage accuracy makes the pairwise modulus hold:
        |fn(n) - fn(n+i)| <= 2**-(n+1) + 2**-(n+i+1) <= 2**-n.
        """
        return CauchyReal(fn, name=name)

    def __repr__(self) -> str:
        if self._name is not None:
            return f"CauchyReal({self._name})"
        return f"CauchyReal(~{self.approx(10)})"


class Cmp(Enum):
    LESS = "less"
    GREATER = "greater"
    WITHIN = "within"


def compare(x: CauchyReal, y: CauchyReal, k: int) -> Cmp:
    """Three-valued comparison using stage-(k+3) approximations only.

    LESS implies x < y and GREATER implies x > y, both certified.  WITHIN
    means the stage-(k+3) approximations differ by at most 2**-(k+2), which
    bounds |x - y| by 2**-(k+1); equal reals always land here.
    """
    if k < 0:
        raise ValueError("precision must be >= 0")
    a = x.approx(k + 3)
    b = y.approx(k + 3)
    tol = pow2(-(k + 2))
    if a - b > tol:
        return Cmp.GREATER
    if b - a > tol:
        return Cmp.LESS
    return Cmp.WITHIN


# ---------------------------------------------------------------------------
# Rational intervals

OPEN = "open"
CLOSED = "closed"


@dataclass(frozen=True)
class Interval:
    """A rational interval, open or closed, read relative to [0, 1]."""

    lo: Fraction
    hi: Fraction
    kind: str  # OPEN or CLOSED

    def is_empty(self) -> bool:
        """Empty as a plain interval (not yet clipped to the unit interval)."""
        if self.kind == OPEN:
            return self.lo >= self.hi
        return self.lo > self.hi

    def is_empty_in_unit(self) -> bool:
        if self.kind == OPEN:
            return self.lo >= self.hi or self.hi <= 0 or self.lo >= 1
        return self.lo > self.hi or self.hi < 0 or self.lo > 1

    def contains(self, q: Fraction) -> bool:
        """Exact membership of a rational, relative to [0, 1]."""
        if q < 0 or q > 1:
            return False
        if self.kind == OPEN:
            return self.lo < q < self.hi
        return self.lo <= q <= self.hi

    def span_in_unit(self) -> Fraction:
        s = max(self.lo, ZERO)
        e = min(self.hi, ONE)
        return e - s if e > s else ZERO


def openiv(lo, hi) -> Interval:
    return Interval(Fraction(lo), Fraction(hi), OPEN)


def closediv(lo, hi) -> Interval:
    return Interval(Fraction(lo), Fraction(hi), CLOSED)


# Canonical "sticks out of the unit interval" endpoints.  Open pieces that
# reach below 0 or above 1 denote the same subset of [0,1] whatever the
# overhang is, so normalisation pins the overhang to -1 and 2.
MARGIN_LO = Fraction(-1)
MARGIN_HI = Fraction(2)


def normalize_open(pieces: Iterable[Interval]) -> tuple[Interval, ...]:
    """Normal form of a finite union of open intervals.

    Drops pieces empty relative to [0,1], pins overhanging endpoints to the
    canonical margins, sorts, and merges strictly overlapping pieces.  Open
    intervals that merely touch are left separate (the shared endpoint is in
    neither).  Idempotent.
    """
    cleaned = []
    for p in pieces:
        if p.kind != OPEN:
            raise ValueError(f"expected open interval, got {p.kind}")
        if p.is_empty_in_unit():
            continue
        lo = MARGIN_LO if p.lo < 0 else p.lo
        hi = MARGIN_HI if p.hi > 1 else p.hi
        cleaned.append((lo, hi))
    cleaned.sort()
    merged: list[tuple[Fraction, Fraction]] = []
    for lo, hi in cleaned:
        if merged and lo < merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return tuple(Interval(lo, hi, OPEN) for lo, hi in merged)


def normalize_closed(pieces: Iterable[Interval]) -> tuple[Interval, ...]:
    """Normal form of a finite union of closed intervals, clipped to [0,1].

    Closed pieces that touch are merged; degenerate single points survive.
    """
    cleaned = []
    for p in pieces:
        if p.kind != CLOSED:
            raise ValueError(f"expected closed interval, got {p.kind}")
        lo = max(p.lo, ZERO)
        hi = min(p.hi, ONE)
        if lo > hi:
            continue
        cleaned.append((lo, hi))
    cleaned.sort()
    merged: list[tuple[Fraction, Fraction]] = []
    for lo, hi in cleaned:
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return tuple(Interval(lo, hi, CLOSED) for lo, hi in merged)


@dataclass(frozen=True)
class FinOpen:
    """A finite union of open rational intervals in normal form."""

    pieces: tuple[Interval, ...] = ()

    @staticmethod
    def of(pieces: Iterable[Interval]) -> FinOpen:
        return FinOpen(normalize_open(pieces))

    def contains(self, q: Fraction) -> bool:
        return any(p.contains(q) for p in self.pieces)

    def measure(self) -> Fraction:
        return measure(self.pieces)

    def complement(self) -> FinClosed:
        """[0,1] minus this set, as a finite union of closed intervals."""
        gaps: list[Interval] = []
        prev = ZERO
        for p in self.pieces:
            gap = closediv(max(prev, ZERO), min(p.lo, ONE))
            if not gap.is_empty():
                gaps.append(gap)
            prev = max(prev, p.hi)
            if prev > 1:
                break
        tail = closediv(max(prev, ZERO), ONE)
        if not tail.is_empty() and prev <= 1:
            gaps.append(tail)
        return FinClosed(normalize_closed(gaps))

    def is_full(self) -> bool:
        return not self.complement().pieces

    def union(self, other: FinOpen) -> FinOpen:
        return FinOpen.of(self.pieces + other.pieces)


@dataclass(frozen=True)
class FinClosed:
    """A finite union of closed rational intervals in normal form."""

    pieces: tuple[Interval, ...] = ()

    @staticmethod
    def of(pieces: Iterable[Interval]) -> FinClosed:
        return FinClosed(normalize_closed(pieces))

    @staticmethod
    def unit() -> FinClosed:
        return FinClosed((closediv(0, 1),))

    def contains(self, q: Fraction) -> bool:
        return any(p.contains(q) for p in self.pieces)

    def is_empty(self) -> bool:
        return not self.pieces

    def measure(self) -> Fraction:
        return measure(self.pieces)

    def complement(self) -> FinOpen:
        """[0,1] minus this set, as an interval union with margin overhangs."""
        gaps: list[Interval] = []
        prev = MARGIN_LO
        for p in self.pieces:
            gaps.append(openiv(prev, p.lo))
            prev = p.hi
        gaps.append(openiv(prev, MARGIN_HI))
        return FinOpen.of(gaps)


def measure(pieces: Sequence[Interval]) -> Fraction:
    """Exact Lebesgue measure of the union of pieces, clipped to [0,1]."""
    spans = []
    for p in pieces:
        s = max(p.lo, ZERO)
        e = min(p.hi, ONE)
        if e > s:
            spans.append((s, e))
    spans.sort()
    total = ZERO
    cur_s: Fraction | None = None
    cur_e = ZERO
    for s, e in spans:
        if cur_s is None:
            cur_s, cur_e = s, e
        elif s <= cur_e:
            cur_e = max(cur_e, e)
        else:
            total += cur_e - cur_s
            cur_s, cur_e = s, e
    if cur_s is not None:
        total += cur_e - cur_s
    return total


def covers(target: FinClosed, pieces: Sequence[Interval]) -> bool:
    """Exact check that every point of target lies in the union of pieces.

    The pieces must be open intervals.  The check is a left-to-right march:
    starting from the left end of each closed target piece, repeatedly jump
    to the furthest right endpoint among the open pieces strictly containing
    the current frontier point.  Each jump strictly increases the frontier,
    so the march ends after at most one step per piece.
    """
    usable = []
    for p in pieces:
        if p.kind != OPEN:
            raise ValueError("cover pieces must be open intervals")
        if not p.is_empty():
            usable.append(p)
    for t in target.pieces:
        cur = t.lo
        while True:
            best: Fraction | None = None
            for p in usable:
                if p.lo < cur < p.hi:
                    if best is None or p.hi > best:
                        best = p.hi
            if best is None:
                return False
            if best > t.hi:
                break
            cur = best
    return True


def closed_minus_open(target: FinClosed, pieces: Sequence[Interval]) -> FinClosed:
    """The exact set difference target \\ (union of open pieces).

    The result is again a finite union of closed intervals; endpoints of the
    removed open pieces survive as (possibly degenerate) closed remnants.
    """
    opens = normalize_open(pieces)
    out: list[Interval] = []
    for t in target.pieces:
        cur = t.lo
        for p in opens:
            if p.hi <= cur or p.lo > t.hi:
                continue
            if p.lo >= cur:
                out.append(closediv(cur, min(p.lo, t.hi)))
            cur = max(cur, p.hi)
            if cur > t.hi:
                break
        if cur <= t.hi:
            out.append(closediv(cur, t.hi))
    return FinClosed(normalize_closed(out))


def distance_to_closed_at(q: Fraction, closed: FinClosed) -> Fraction:
    """Exact distance from the rational point q to a nonempty closed set."""
    if not closed.pieces:
        raise EmptySetError("distance to the empty set is undefined")
    best: Fraction | None = None
    for p in closed.pieces:
        if p.lo <= q <= p.hi:
            return ZERO
        d = p.lo - q if q < p.lo else q - p.hi
        if best is None or d < best:
            best = d
    return best


def open_contained(p: Interval, u: FinOpen) -> bool:
    """Exact check that the open interval p, within [0,1], is a subset of u.

    Works by subtracting u from the closure of p: only the (excluded)
    endpoints of p may survive.
    """
    lo = max(p.lo, ZERO)
    hi = min(p.hi, ONE)
    if lo >= hi:
        return True
    rest = closed_minus_open(FinClosed.of([closediv(lo, hi)]), list(u.pieces))
    return all(piece.lo == piece.hi and piece.lo in (lo, hi) for piece in rest.pieces)


def punctured_unit(points: Iterable[Fraction]) -> FinOpen:
    """The open set [0,1] minus finitely many rational points."""
    pts = sorted({Fraction(p) for p in points})
    pieces = []
    prev = MARGIN_LO
    for p in pts:
        pieces.append(openiv(prev, p))
        prev = p
    pieces.append(openiv(prev, MARGIN_HI))
    return FinOpen.of(pieces)
