"""The four representations of an open subset of [0, 1] and the conversions
between them.

In order of increasing information content:

  * ``MemberOracle``  -- a bare value oracle; membership is value > 0 and is
    only ever semi-decidable (representation "r1").
  * ``RadiusOracle``  -- the same oracle with the radius promise: a positive
    value at x is the radius of an open ball around x inside the set ("r2").
  * ``LocatedSet``    -- the distance function to the complement, plus a flag
    for the full set, where the distance degenerates ("r3").
  * ``IntervalUnion`` -- an index-addressable stream of open rational
    intervals whose union is the set ("r4").

Conversions downward in information (r2 -> r3, r2 -> r4) are not algorithmic
from the oracle alone; they are parameterised by a caller-supplied uniform
lower-bound oracle (``ExactLowerBound`` is the exact instance for sets backed
by finite interval unions).  Conversions between r3 and r4 are effective and
implemented directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .core import (
    CauchyReal,
    Cmp,
    FinClosed,
    FinOpen,
    Interval,
    OPEN,
    OracleUnsound,
    ZERO,
    ONE,
    closediv,
    compare,
    covers,
    distance_to_closed_at,
    normalize_open,
    openiv,
    pow2,
)
from .enumeration import rational, unpair


class MemberOracle:
    """An open set presented only through a value oracle.

    ``value(x, k)`` returns a rational within 2**-k of the defining function
    at x.  The set is the points where the function is positive; nothing
    about the geometry of the set can be read off this surface directly.

    ``finopen`` (when set) records the exact finite-interval-union backing of
    the oracle; ``truth`` records the exact set an oracle *represents* even
    when the oracle itself is reticent about it (used by adversarial
    fixtures).  Exact capability oracles consult these fields; the numeric
    surface never does.
    """

    def __init__(
        self,
        value: Callable[[CauchyReal, int], Fraction],
        *,
        finopen: FinOpen | None = None,
        truth: FinOpen | None = None,
        name: str | None = None,
    ):
        self._value = value
        self.finopen = finopen
        self.truth = truth if truth is not None else finopen
        self.name = name

    def value(self, x: CauchyReal, k: int) -> Fraction:
        return Fraction(self._value(x, k))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name or '...'})"


class RadiusOracle(MemberOracle):
    """A value oracle with the radius promise.

    If the true value at x is v > 0 then (x - v, x + v) ∩ [0,1] is contained
    in the set.  The oracle still answers with approximations, so consumers
    must shrink an answer at precision k by 2**-k before trusting it as a
    radius (``inner_radius`` does exactly this).
    """


def radius_from_pieces(u: FinOpen) -> RadiusOracle:
    """The canonical radius oracle of an exactly-presented open set.

    The value function is the distance to the complement (constant 1 for the
    full set), answered exactly at the stage-(k+1) approximation of x, which
    keeps the error within 2**-k by 1-Lipschitzness.
    """
    comp = u.complement()
    if comp.is_empty():
        return RadiusOracle(lambda x, k: ONE, finopen=u, name="full")

    def value(x: CauchyReal, k: int) -> Fraction:
        return distance_to_closed_at(x.approx(k + 1), comp)

    return RadiusOracle(value, finopen=u, name=f"dist-to-{len(comp.pieces)}-pieces")


@dataclass
class LocatedSet:
    """An open set presented by the distance function of its complement.

    ``dist(x, k)`` returns a rational within 2**-k of d(x, [0,1] \\ O); when
    ``full`` is true the set is all of [0,1] and dist is constant 1.
    """

    dist: Callable[[CauchyReal, int], Fraction]
    full: bool = False


class IntervalUnion:
    """An open set as an index-addressable stream of open rational intervals.

    ``enum`` is total and deterministic; empty intervals are permitted
    entries.  Entries are memoised, so the stream is restartable and safe to
    probe out of order.
    """

    def __init__(self, enum: Callable[[int], Interval], name: str | None = None):
        self._enum = enum
        self._cache: dict[int, Interval] = {}
        self.name = name

    def enum(self, n: int) -> Interval:
        if n < 0:
            raise ValueError("stream index must be >= 0")
        got = self._cache.get(n)
        if got is None:
            got = self._enum(n)
            if got.kind != OPEN:
                raise ValueError("stream entries must be open intervals")
            self._cache[n] = got
        return got

    def prefix(self, n: int) -> list[Interval]:
        """The first n entries, empties dropped."""
        return [p for p in (self.enum(i) for i in range(n)) if not p.is_empty()]

    @staticmethod
    def from_pieces(u: FinOpen) -> IntervalUnion:
        pieces = u.pieces

        def fn(n: int) -> Interval:
            return pieces[n] if n < len(pieces) else openiv(0, 0)

        return IntervalUnion(fn, name=f"pieces[{len(pieces)}]")

    @staticmethod
    def constant(piece: Interval) -> IntervalUnion:
        return IntervalUnion(lambda n: piece, name=f"constant{(piece.lo, piece.hi)}")

    def __repr__(self) -> str:
        return f"IntervalUnion({self.name or '...'})"


@dataclass
class ClosedCode:
    """A closed subset of [0,1] presented by a stream enumerating its open
    complement."""

    complement: IntervalUnion

    @staticmethod
    def from_closed(c: FinClosed) -> ClosedCode:
        return ClosedCode(IntervalUnion.from_pieces(c.complement()))

    @staticmethod
    def unit() -> ClosedCode:
        return ClosedCode(IntervalUnion.from_pieces(FinOpen()))


# ---------------------------------------------------------------------------
# Membership and radius certification


def member_semidecide(u: IntervalUnion, x: CauchyReal, fuel: int):
    """Search for a stream entry certified to contain x.

    Probes pairs (entry n, precision k) along the diagonals n + k = d for
    d = 0 .. fuel-1, certifying strict containment with ``compare``.  Returns
    the entry index, or None when no certificate was found within fuel -- the
    None is *not* evidence of non-membership.
    """
    if fuel < 1:
        raise ValueError("fuel must be >= 1")
    for d in range(fuel):
        for n in range(d + 1):
            k = d - n
            piece = u.enum(n)
            if piece.is_empty():
                continue
            lo = CauchyReal.constant(piece.lo)
            hi = CauchyReal.constant(piece.hi)
            if compare(lo, x, k) is Cmp.LESS and compare(x, hi, k) is Cmp.LESS:
                return n
    return None


def inner_radius(y: MemberOracle, x: CauchyReal, fuel: int) -> Fraction | None:
    """A certified positive rational lower bound of the oracle value at x.

    Queries stages k = 1, 2, ... and returns value - 2**-k the first time
    that is positive; the bound is then a true lower bound of the value, and
    for a radius oracle it is a radius of a ball inside the set.  None after
    fuel stages.
    """
    for k in range(1, fuel + 1):
        r = y.value(x, k) - pow2(-k)
        if r > 0:
            return r
    return None


# ---------------------------------------------------------------------------
# r3 <-> r4


def stream_from_distance(d: LocatedSet) -> IntervalUnion:
    """Convert a distance-function presentation to an interval stream.

    Entry for the pair index (i, m) is centred at the i-th rational q and has
    radius dist(q) approximated at stage m and shrunk by the tolerance; the
    ball then sits inside the set, and as m grows the balls exhaust it (any
    point at distance d from the complement is caught by a nearby rational).
    """

    def fn(n: int) -> Interval:
        i, m = unpair(n)
        q = rational(i)
        lower = d.dist(CauchyReal.constant(q), m) - pow2(-m)
        if lower > 0:
            return openiv(q - lower, q + lower)
        return openiv(q, q)

    return IntervalUnion(fn, name="from-distance")


def distance_from_pieces(u: FinOpen) -> LocatedSet:
    """The exact distance-function presentation of a finite interval union."""
    comp = u.complement()
    if comp.is_empty():
        return LocatedSet(dist=lambda x, k: ONE, full=True)

    def dist(x: CauchyReal, k: int) -> Fraction:
        return distance_to_closed_at(x.approx(k + 1), comp)

    return LocatedSet(dist=dist, full=False)


def stage_distance(u: IntervalUnion, x: CauchyReal, k: int, m: int) -> Fraction:
    """Stage-m lower approximation of the distance function of a stream.

    Returns the largest radius r on the grid 2**-k * Z such that the first m
    stream entries cover [x~ - r, x~ + r] (x~ the stage-(k+3) approximation
    of x), deciding each candidate with the exact sweep.  Monotone
    non-decreasing in m and converging to the true distance from below.
    """
    centre = x.approx(k + 3)
    pieces = u.prefix(m)
    step = pow2(-k)

    def covered(j: int) -> bool:
        target = FinClosed.of([closediv(centre - j * step, centre + j * step)])
        return covers(target, pieces)

    if not covered(0):
        return ZERO
    lo, hi = 0, 1 << k  # r <= 1 suffices: distances in the unit interval
    if covered(hi):
        return hi * step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if covered(mid):
            lo = mid
        else:
            hi = mid
    return lo * step


# ---------------------------------------------------------------------------
# Uniform lower-bound oracles and the fullness test

FULL = "full"
NOT_FULL = "not-full"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class FlooredRadius:
    """The gadget that replaces zero values of a radius oracle by 2**-floor_exp.

    This is a symbolic construction: deciding where the base oracle is zero
    is not possible from its numeric surface, so the gadget carries the base
    and the floor for capability oracles to pattern-match on.
    """

    base: MemberOracle
    floor_exp: int


class OutsideRestricted(RadiusOracle):
    """The radius oracle of O ∪ {y : |y - centre| > radius}.

    Numerically this is max(base value, |y - centre| - radius), which keeps
    the radius promise: each operand's ball stays inside its own region.
    """

    def __init__(self, base: MemberOracle, centre: Fraction, radius: Fraction):
        self.base = base
        self.centre = Fraction(centre)
        self.radius = Fraction(radius)

        def value(x: CauchyReal, k: int) -> Fraction:
            ray = abs(x.approx(k + 1) - self.centre) - self.radius
            return max(base.value(x, k + 1), ray)

        backing = None
        if base.finopen is not None:
            backing = base.finopen.union(_rays(self.centre, self.radius))
        super().__init__(value, finopen=backing, name="outside-restricted")
        if base.truth is not None and backing is None:
            self.truth = base.truth.union(_rays(self.centre, self.radius))


def _rays(centre: Fraction, radius: Fraction) -> FinOpen:
    return FinOpen.of([openiv(-1, centre - radius), openiv(centre + radius, 2)])


def restrict_outside(y: MemberOracle, centre: Fraction, radius: Fraction) -> OutsideRestricted:
    return OutsideRestricted(y, centre, radius)


class ExactLowerBound:
    """The exact uniform lower-bound oracle for exactly-presented sets.

    For a gadget whose effective set (after peeling floors and outside
    restrictions) is a finite interval union, the optimal uniform bound is 1
    when the set is all of [0,1] and exactly the floor 2**-j otherwise: at a
    missing point only the floor constrains functions locally bounded away
    from zero, while every point sees at least the floor nearby.

    Fullness of an effective set is cached, so the floor sweep of a fullness
    test costs one exact sweep, not one per floor.
    """

    def __init__(self):
        self._full_cache: dict[tuple, bool] = {}

    def __call__(self, gadget) -> Fraction:
        floor_exp = None
        g = gadget
        rays = FinOpen()
        while True:
            if isinstance(g, FlooredRadius):
                if floor_exp is None or g.floor_exp > floor_exp:
                    floor_exp = g.floor_exp
                g = g.base
            elif isinstance(g, OutsideRestricted):
                rays = rays.union(_rays(g.centre, g.radius))
                g = g.base
            else:
                break
        truth = getattr(g, "truth", None)
        if truth is None:
            raise ValueError("exact lower-bound oracle needs an exactly-presented set")
        key = (truth.pieces, rays.pieces)
        full = self._full_cache.get(key)
        if full is None:
            full = truth.union(rays).is_full()
            self._full_cache[key] = full
        if full:
            return ONE
        if floor_exp is None:
            raise ValueError("set with zero values has no positive uniform bound")
        return pow2(-floor_exp)


def is_full(y: RadiusOracle, mu, depth: int) -> str:
    """Three-valued fullness test through a lower-bound oracle.

    Probes mu on the floored gadgets for floors 2**-j, j = 0..depth.  If the
    answers stay a factor two above the deepest floor, the set is certified
    FULL (a sound oracle can only exceed 2**-j on a set that misses no
    point).  If the answers track the floors all the way down -- halving each
    step and ending at or below 2**-depth -- the run is reported NOT_FULL.
    Anything else is UNDETERMINED.  The NOT_FULL verdict is definitive for
    the exact oracle; a merely sound but weak oracle never certifies either
    side (it fails the slack and the halving signature).
    """
    values = []
    for j in range(depth + 1):
        v = Fraction(mu(FlooredRadius(y, j)))
        if v <= 0:
            raise OracleUnsound("lower-bound oracle returned a nonpositive bound")
        values.append(v)
    if min(values) > pow2(-(depth - 1)):
        return FULL
    if depth >= 1 and values[depth] <= pow2(-depth):
        if all(values[j + 1] <= values[j] / 2 for j in range(depth)):
            return NOT_FULL
    return UNDETERMINED


# ---------------------------------------------------------------------------
# The distance functional for radius oracles


def located_distance(y: RadiusOracle, mu, x: CauchyReal, k: int) -> Fraction:
    """2**-k-approximation of d(x, O^c) from a radius oracle and a
    lower-bound oracle.

    Brackets the distance by binary search on r: the set O ∪ {y : |y - x~| > r}
    is all of [0,1] exactly when the distance at x~ exceeds r, and that
    fullness is decided through ``is_full``.  The caller is expected to have
    resolved is_full(y) to NOT_FULL already (for the full set the distance is
    constant 1 by convention); the initial probe re-checks this and raises
    OracleUnsound on contradiction, as does any UNDETERMINED probe inside the
    bracket.
    """
    centre = x.approx(k + 3)
    depth = 4  # enough to separate the exact oracle's FULL/NOT_FULL signatures

    def probe(r: Fraction) -> str:
        return is_full(restrict_outside(y, centre, r), mu, depth)

    if probe(Fraction(2)) != NOT_FULL:
        raise OracleUnsound("distance bracket broken: set reported full at radius 2")
    lo, hi = ZERO, Fraction(2)
    width = pow2(-(k + 2))
    while hi - lo > width:
        mid = (lo + hi) / 2
        verdict = probe(mid)
        if verdict == FULL:
            lo = mid
        elif verdict == NOT_FULL:
            hi = mid
        else:
            raise OracleUnsound("lower-bound oracle cannot resolve a bracket probe")
    return (lo + hi) / 2


def stream_from_radius(y: RadiusOracle, mu, *, depth: int = 6) -> IntervalUnion:
    """r2 -> r4: package ``located_distance`` as a distance function and
    convert that to a stream.  Raises OracleUnsound when the fullness of the
    set cannot be resolved at the given depth."""
    verdict = is_full(y, mu, depth)
    if verdict == FULL:
        return stream_from_distance(LocatedSet(dist=lambda x, k: ONE, full=True))
    if verdict == NOT_FULL:
        return stream_from_distance(
            LocatedSet(dist=lambda x, k: located_distance(y, mu, x, k), full=False)
        )
    raise OracleUnsound(f"fullness undetermined at depth {depth}")


# ---------------------------------------------------------------------------
# Deliberately incomplete rational probing


def probe_to_pieces(y: RadiusOracle, budget: int, *, stages: int = 24) -> FinOpen:
    """Probe the first ``budget`` rationals and keep the certified balls.

    For each enumerated rational with a certified positive lower bound l of
    the oracle value, the ball (q - l, q + l) is inside the set by the radius
    promise.  The union is always a subset of the set; completeness is not
    promised, and adversarial oracles keep the recovered measure small.
    """
    pieces = []
    for i in range(budget):
        q = rational(i)
        bound = inner_radius(y, CauchyReal.constant(q), stages)
        if bound is not None:
            pieces.append(openiv(q - bound, q + bound))
    return FinOpen.of(pieces)


# ---------------------------------------------------------------------------
# Maximal intervals


def components(u: FinOpen | Iterable[Interval]) -> list[Interval]:
    """The maximal open intervals whose union is the given open set.

    The normal form of a finite union is exactly its decomposition into
    maximal intervals: pieces are pairwise disjoint and only merge when they
    genuinely overlap; open pieces that merely touch stay separate, since the
    shared endpoint is in neither.
    """
    if isinstance(u, FinOpen):
        return list(u.pieces)
    return list(FinOpen.of(u).pieces)


def components_staged(u: IntervalUnion, m: int) -> FinOpen:
    """Maximal intervals of the first m stream entries; monotone in m."""
    return FinOpen.of(u.prefix(m))


# ---------------------------------------------------------------------------
# Greedy finite covers of closed balls


@dataclass
class CoverOracle:
    """A capability answering: which certified balls cover B-bar(q, 2**-n)?

    ``witness(q, n)`` returns a finite list of ball centres (as Cauchy reals)
    whose certified balls cover the closed ball, or None.
    """

    witness: Callable[[Fraction, int], list[CauchyReal] | None]


def cover_search(
    y: RadiusOracle, q: Fraction, n: int, fuel: int, *, stages: int = 24
) -> list[CauchyReal] | None:
    """Greedy left-to-right march covering [q - 2**-n, q + 2**-n] ∩ [0,1].

    At each uncovered frontier point the oracle value is certified and the
    frontier advances by the certified radius.  Returns the list of centres
    on success; None when the frontier stalls (no certificate) or fuel (the
    number of march steps) runs out.
    """
    lo = max(q - pow2(-n), ZERO)
    hi = min(q + pow2(-n), ONE)
    if lo > hi:
        return []
    cur = lo
    witnesses: list[CauchyReal] = []
    for _ in range(fuel):
        point = CauchyReal.constant(cur)
        r = inner_radius(y, point, stages)
        if r is None:
            return None
        witnesses.append(point)
        if cur + r > hi:
            return witnesses
        cur = cur + r
    return None


def greedy_cover_oracle(y: RadiusOracle, *, fuel: int = 10_000) -> CoverOracle:
    """The default cover oracle, backed by the greedy march."""
    return CoverOracle(witness=lambda q, n: cover_search(y, q, n, fuel))
