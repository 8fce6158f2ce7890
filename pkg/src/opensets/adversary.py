"""Executable counterexample machinery: oracles that answer honestly but
reveal arbitrarily little, and harnesses that replay a candidate realiser
against a displaced input to catch it certifying something false.

The harnesses never report a refutation on trust: every emitted witness is
re-verified by the exact sweep or by direct oracle evaluation first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .core import CauchyReal, FinClosed, FinOpen, Interval, closediv, covers, openiv, pow2
from .enumeration import rationals
from .reps import (
    ExactLowerBound,
    IntervalUnion,
    RadiusOracle,
    inner_radius,
)

SNAPSHOT_STAGE = 20
_IDENT_TOL = pow2(-18)


class ProbeLog:
    """Arrival-order indices for distinct query points.

    Query identity uses the stage-20 rational snapshot of the argument: two
    queries are the same point when their snapshots are within 2**-18, which
    in particular merges all presentations of equal reals.  Indices are
    assigned 0, 1, 2, ... in arrival order and re-queries reuse the original
    index, so replayed runs see bit-identical answers.
    """

    def __init__(self):
        self.snapshots: list[Fraction] = []
        self._buckets: dict[int, list[tuple[Fraction, int]]] = {}

    @staticmethod
    def snapshot(x: CauchyReal) -> Fraction:
        return x.approx(SNAPSHOT_STAGE)

    def _bucket_key(self, snap: Fraction) -> int:
        return (snap.numerator << 18) // snap.denominator

    def lookup(self, snap: Fraction) -> int | None:
        key = self._bucket_key(snap)
        for k in (key - 1, key, key + 1):
            for s, e in self._buckets.get(k, ()):
                if abs(s - snap) <= _IDENT_TOL:
                    return e
        return None

    def index_of(self, snap: Fraction) -> int:
        got = self.lookup(snap)
        if got is not None:
            return got
        e = len(self.snapshots)
        self.snapshots.append(snap)
        self._buckets.setdefault(self._bucket_key(snap), []).append((snap, e))
        return e

    def __len__(self) -> int:
        return len(self.snapshots)


_FULL_SET = FinOpen.of([openiv(-1, 2)])


def adversary_full_radius(
    deleted: Fraction | None = None,
) -> tuple[RadiusOracle, ProbeLog]:
    """A radius oracle for [0,1] that concedes as little as possible.

    The e-th distinct queried point is assigned the value 2**-(e+3), a
    legitimate radius (every ball lies in [0,1]), yet the balls of any finite
    run have total measure at most sum 2**-(e+2) = 1/2.  With ``deleted``
    set, the value is additionally capped by the distance to that point, so
    the oracle presents [0,1] minus the point instead -- and agrees with the
    undeleted oracle on any query whose assigned ball avoids the point.
    """
    log = ProbeLog()

    def value(x: CauchyReal, k: int) -> Fraction:
        snap = ProbeLog.snapshot(x)
        e = log.index_of(snap)
        v = pow2(-(e + 3))
        if deleted is not None:
            v = min(v, abs(snap - deleted))
        return v

    truth = _FULL_SET
    if deleted is not None:
        truth = FinOpen.of([openiv(-1, deleted), openiv(deleted, 2)])
    oracle = RadiusOracle(value, truth=truth, name="adversarial-full")
    return oracle, log


def assigned_balls(log: ProbeLog, deleted: Fraction | None = None) -> list[Interval]:
    """The balls the oracle has committed to so far, in arrival order."""
    out = []
    for e, snap in enumerate(log.snapshots):
        v = pow2(-(e + 3))
        if deleted is not None:
            v = min(v, abs(snap - deleted))
        if v > 0:
            out.append(openiv(snap - v, snap + v))
    return out


@dataclass(frozen=True)
class RefutationWitness:
    """A certified wrong answer: the realiser answered ``answer`` on the
    displaced input, yet ``point`` belongs to the input and is not covered."""

    point: Fraction
    answer: int
    detail: str


# ---------------------------------------------------------------------------
# Countable-cover realisers for membership-presented closed sets


def tail_cover() -> IntervalUnion:
    """The cover (1/(n+2), 1): every positive point is caught eventually,
    0 never is."""
    return IntervalUnion(lambda n: openiv(Fraction(1, n + 2), 1), name="tail-cover")


def refute_subcover(beta: Callable, *, harness_fuel: int = 10_000) -> RefutationWitness | None:
    """Replay harness for subcover realisers over membership-presented
    closed sets.

    ``beta(member, cover)`` gets a membership predicate on rationals and the
    tail cover, and answers an index bound or None.  The harness runs beta on
    [1/3, 2/3], picks a rational x below 1/(answer+2) that beta never probed,
    reruns beta on the set enlarged by x (identical answers on all logged
    probes), and convicts beta if it repeats its answer -- x is then provably
    uncovered.  None means beta survived: it refused to answer, changed its
    answer, or (impossible for a finite-probe beta) probed x.
    """
    base = FinClosed.of([closediv(Fraction(1, 3), Fraction(2, 3))])
    cover = tail_cover()

    probed: set[Fraction] = set()

    def member1(q) -> bool:
        q = Fraction(q)
        probed.add(q)
        return base.contains(q)

    answer = beta(member1, cover)
    if answer is None:
        return None

    x = None
    for q in rationals():
        if 0 < q < Fraction(1, answer + 2) and q not in probed:
            x = q
            break
        if q.denominator > harness_fuel:
            return None
    if x is None:
        return None

    def member2(q) -> bool:
        q = Fraction(q)
        return q == x or base.contains(q)

    second = beta(member2, tail_cover())
    if second != answer:
        return None
    prefix = [cover.enum(n) for n in range(answer + 1)]
    uncovered = not covers(FinClosed.of([closediv(x, x)]), prefix)
    if not (uncovered and member2(x)):
        return None  # the candidate answer was actually fine; no refutation
    return RefutationWitness(
        point=x,
        answer=answer,
        detail=f"{x} joined the set unprobed; cover prefix 0..{answer} misses it",
    )


def beta_grid_subcover(member, cover: IntervalUnion, *, grid_exp: int = 10,
                       max_prefix: int = 2_000) -> int | None:
    """The naive realiser: pretends the dyadic grid is the whole set.

    Collects the grid points of the set by membership probes and returns the
    first prefix covering those points.  Sound-looking, and refutable: the
    set can always contain an unprobed off-grid point.
    """
    step = pow2(-grid_exp)
    pts = [i * step for i in range((1 << grid_exp) + 1) if member(i * step)]
    held: list[Interval] = []
    for m in range(max_prefix):
        piece = cover.enum(m)
        if not piece.is_empty():
            held.append(piece)
        if all(any(p.contains(q) for p in held) for q in pts):
            return m
    return None


# ---------------------------------------------------------------------------
# Cover realisers for radius-oracle sequences


def refute_radius_cover(beta: Callable, *, honest_oracles: bool = False,
                        harness_fuel: int = 10_000) -> RefutationWitness | None:
    """Replay harness for realisers of countable covers by radius oracles.

    Every set of the family is one shared adversarial presentation of [0,1].
    On an answer k, the harness picks a rational p outside every ball the
    oracle committed to (total measure <= 1/2, so an early enumeration
    rational qualifies), deletes p from sets 0..k+1, and replays: the capped
    values agree bit-for-bit on the logged queries, so a finite-probe beta
    repeats its answer and convicts itself -- p is in no set up to its bound.

    With ``honest_oracles`` the runs also hand beta the exact lower-bound
    oracle for the true sets; a realiser routing through the distance
    conversion then changes its answer on the replay and survives.
    """
    y1, log1 = adversary_full_radius()
    mu1 = ExactLowerBound() if honest_oracles else None
    answer = beta(lambda i: y1, mu1)
    if answer is None:
        return None

    balls = assigned_balls(log1)
    p = None
    for q in rationals():
        if not any(b.contains(q) for b in balls) and all(
            abs(q - s) > _IDENT_TOL for s in log1.snapshots
        ):
            p = q
            break
        if q.denominator > harness_fuel:
            return None
    if p is None:
        return None

    deleted_oracle, log2 = adversary_full_radius(deleted=p)
    plain_oracle = RadiusOracle(
        lambda x, k: pow2(-(log2.index_of(ProbeLog.snapshot(x)) + 3)),
        truth=_FULL_SET,
        name="adversarial-full-shared-log",
    )

    def sets2(i: int) -> RadiusOracle:
        return deleted_oracle if i <= answer + 1 else plain_oracle

    mu2 = ExactLowerBound() if honest_oracles else None
    second = beta(sets2, mu2)
    if second != answer:
        return None
    certified = inner_radius(deleted_oracle, CauchyReal.constant(p), 40)
    if certified is not None:
        return None  # p is in the replayed sets after all; not a witness
    run2_balls = assigned_balls(log2, deleted=p)
    if any(b.contains(p) for b in run2_balls):
        return None
    return RefutationWitness(
        point=p,
        answer=answer,
        detail=f"{p} was deleted from sets 0..{answer + 1}; the answer did not move",
    )


def beta_grid_radius(sets, mu=None, *, grid_exp: int = 6, stage: int = 10) -> int | None:
    """The naive realiser for radius-oracle covers: believes set 0 covers
    [0,1] as soon as the raw oracle value at every dyadic grid point is
    positive.  Taking approximations at face value is exactly what makes it
    refutable."""
    step = pow2(-grid_exp)
    for i in range((1 << grid_exp) + 1):
        if sets(0).value(CauchyReal.constant(i * step), stage) <= 0:
            return None
    return 0


def beta_pipeline_radius(sets, mu, *, fuel: int = 400) -> int | None:
    """The conversion-pipeline realiser: refuses without a lower-bound
    oracle, otherwise routes through the distance conversion and the coded
    subcover search, whose certificates are sweep-verified."""
    if mu is None:
        return None
    from .heine_borel import subcover_radius

    return subcover_radius(sets, mu, fuel)
