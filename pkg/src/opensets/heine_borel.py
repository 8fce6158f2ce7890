"""Finite-subcover realisers for countable covers of closed sets.

The closed set is presented by a stream enumerating its open complement, so
"the prefix covers C" becomes stage-decidable: test instead that the cover
prefix together with the complement prefix covers all of [0,1], which is an
exact sweep.  The test is sound at every stage and complete in the limit
because the complement stream exhausts the complement.

All searches here are fuel-bounded and deterministic: success at fuel f
yields the identical answer at any larger fuel, and None ("exhausted") is an
answer, not an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CauchyReal,
    FinClosed,
    FinOpen,
    Interval,
    ZERO,
    closed_minus_open,
    covers,
    measure,
    openiv,
    pow2,
)
from .enumeration import unpair
from .reps import ClosedCode, IntervalUnion, RadiusOracle, stream_from_radius


@dataclass(frozen=True)
class SubcoverCertificate:
    """A verified finite subcover: cover entries 0..n0 (with the complement
    prefix that discharged the rest of [0,1]) pass the exact sweep."""

    n0: int
    used_pieces: tuple[Interval, ...]
    complement_pieces: tuple[Interval, ...]
    verified: bool


def subcover_coded(c: ClosedCode, cover: IntervalUnion, fuel: int) -> SubcoverCertificate | None:
    """Least prefix of the cover that provably covers the coded closed set.

    For m = 0, 1, ..., fuel-1 tests whether cover(0..m) together with the
    first m+1 complement entries covers [0,1] exactly; any point of C avoids
    every complement entry, so a passing sweep certifies C ⊆ cover(0..m).
    Returns the least such m with the verified certificate, or None.
    """
    used: list[Interval] = []
    comp: list[Interval] = []
    for m in range(fuel):
        piece = cover.enum(m)
        if not piece.is_empty():
            used.append(piece)
        comp_piece = c.complement.enum(m)
        if not comp_piece.is_empty():
            comp.append(comp_piece)
        if covers(FinClosed.unit(), used + comp):
            return SubcoverCertificate(
                n0=m,
                used_pieces=tuple(used),
                complement_pieces=tuple(comp),
                verified=covers(FinClosed.unit(), used + comp),
            )
    return None


def shrink_real_interval(a: CauchyReal, b: CauchyReal, k: int) -> Interval:
    """Stage-k rational surrogate of an interval with Cauchy-real endpoints.

    The surrogate (a_k + 2**-k, b_k - 2**-k) is contained in (a, b), so any
    certificate sweeping the surrogates witnesses a subcover of the original
    cover.  It exhausts (a, b) as k grows.
    """
    return openiv(a.approx(k) + pow2(-k), b.approx(k) - pow2(-k))


def real_cover_to_rational(entries) -> IntervalUnion:
    """Adapt a stream of Cauchy-real-endpoint intervals to a rational stream.

    ``entries(i)`` must return a pair of Cauchy reals; stream entry with pair
    index (i, k) is the stage-k surrogate of the i-th interval.
    """

    def fn(n: int) -> Interval:
        i, k = unpair(n)
        a, b = entries(i)
        return shrink_real_interval(a, b, k)

    return IntervalUnion(fn, name="real-endpoint-surrogates")


def subcover_radius(sets, mu, fuel: int) -> int | None:
    """Finite subcover for a sequence of radius-oracle sets covering [0,1].

    Converts each set to an interval stream through the lower-bound oracle,
    interleaves the streams by the pairing (set, entry), and searches the
    flat stream against C = [0,1].  The flat certificate is then masked back
    to the least set-index bound whose entries alone still sweep.  Raises
    OracleUnsound from the conversions; None on fuel.
    """
    streams: dict[int, IntervalUnion] = {}
    empty = IntervalUnion.from_pieces(FinOpen())

    def stream(i: int) -> IntervalUnion:
        if i not in streams:
            if callable(sets):
                streams[i] = stream_from_radius(sets(i), mu)
            elif i < len(sets):
                streams[i] = stream_from_radius(sets[i], mu)
            else:
                streams[i] = empty
        return streams[i]

    flat = IntervalUnion(lambda n: stream(unpair(n)[0]).enum(unpair(n)[1]), name="interleaved")
    cert = subcover_coded(ClosedCode.unit(), flat, fuel)
    if cert is None:
        return None
    by_set: dict[int, list[Interval]] = {}
    for n in range(cert.n0 + 1):
        i, j = unpair(n)
        piece = flat.enum(n)
        if not piece.is_empty():
            by_set.setdefault(i, []).append(piece)
    for bound in sorted(by_set):
        pieces = [p for i in by_set if i <= bound for p in by_set[i]]
        if covers(FinClosed.unit(), pieces):
            return bound
    return max(by_set)  # unreachable: the full prefix sweeps


def subcover_budget(
    c: ClosedCode, cover: IntervalUnion, epsilon: Fraction, fuel: int
) -> tuple[int, list[Interval]] | None:
    """Subcover up to an open remainder of measure below epsilon.

    Dovetails pairs (prefix length m, patch depth d) along diagonals
    m + d = 0, 1, ...; for each pair, the remainder of the stage-m outer
    approximation of C not covered by cover(0..m) is patched with its pieces
    inflated by 2**-d.  The first pair whose patches have measure < epsilon
    and pass the exact sweep wins.  Each tested pair consumes one unit of
    fuel.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    spent = 0
    t = 0
    while spent < fuel:
        for m in range(t + 1):
            d = t - m
            spent += 1
            if spent > fuel:
                return None
            prefix = cover.prefix(m + 1)
            comp_prefix = c.complement.prefix(m + 1)
            outer = closed_minus_open(FinClosed.unit(), comp_prefix)
            remainder = closed_minus_open(outer, prefix)
            pad = pow2(-d)
            patches = [openiv(p.lo - pad, p.hi + pad) for p in remainder.pieces]
            if measure(patches) < epsilon and covers(outer, prefix + patches):
                return m, patches
        t += 1
    return None


def subcover_sequence(sets, fuel: int) -> int | None:
    """Finite subcover of [0,1] from a sequence of interval-union sets.

    Dovetails (set-index bound n0, per-stream depth) along diagonals; returns
    the first n0 such that pieces drawn from sets 0..n0 within the depth
    sweep [0,1] exactly.  Each tested pair consumes one unit of fuel.
    """
    if callable(sets):
        get = sets
    else:
        fixed = list(sets)
        empty = IntervalUnion.from_pieces(FinOpen())
        get = lambda i: fixed[i] if i < len(fixed) else empty
    spent = 0
    t = 0
    while spent < fuel:
        for n0 in range(t + 1):
            depth = t - n0
            spent += 1
            if spent > fuel:
                return None
            if depth == 0:
                continue
            pieces = [p for i in range(n0 + 1) for p in get(i).prefix(depth)]
            if covers(FinClosed.unit(), pieces):
                return n0
        t += 1
    return None
