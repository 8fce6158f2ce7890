"""A point in the intersection of countably many dense open sets, built by
nested halving intervals, plus a finite-stage simulator of the inductive
attempt machine behind that construction.

Vocabulary: a *tag* is a centre-radius pair (r, eps); an *attempt* is a
chain of tags whose closed intervals nest strictly inside the previous open
interval while the radii at least halve.  The machine grows a set of
attempts one tag at a time; the realiser ``baire_point`` runs the same
construction straight down a single chain.

The machine is a finite-stage object: the limit cases of the inductive
definition are served by ``limit_audit`` (semi-decides membership of the
chain's limit point at a finite depth with finite fuel) and
``apply_limit_fail`` (the sideways move that halves the radius at the level
whose certification failed).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

from .core import CauchyReal, Interval, ZERO, ONE, closediv, openiv, pow2
from .reps import MemberOracle, RadiusOracle
from .enumeration import rationals, rationals_in

# Certification stage exponents are capped here; 2**-4096 is far beyond any
# radius the searches can produce.
_MAX_STAGE = 4096


@dataclass(frozen=True)
class Tag:
    """A centre-radius pair; open form (r-eps, r+eps), closed form [r-eps, r+eps]."""

    r: Fraction
    eps: Fraction

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError("tag radius must be positive")

    def open_iv(self) -> Interval:
        return openiv(self.r - self.eps, self.r + self.eps)

    def closed_iv(self) -> Interval:
        return closediv(self.r - self.eps, self.r + self.eps)


def tag_precedes(t1: Tag, t2: Tag) -> bool:
    """Same centre and at least a halving of the radius."""
    return t1.r == t2.r and t1.eps >= 2 * t2.eps


@dataclass(frozen=True)
class Attempt:
    """A nonempty chain of tags: each closed tag interval sits strictly
    inside the previous open one and each radius is at most half the
    previous."""

    tags: tuple[Tag, ...]

    @staticmethod
    def of(tags: Sequence[Tag]) -> Attempt:
        tags = tuple(tags)
        if not tags:
            raise ValueError("an attempt has at least one tag")
        for a, b in zip(tags, tags[1:]):
            if not (b.r - b.eps > a.r - a.eps and b.r + b.eps < a.r + a.eps):
                raise ValueError(f"tag {b} does not nest strictly inside {a}")
            if 2 * b.eps > a.eps:
                raise ValueError(f"tag {b} does not halve the radius of {a}")
        return Attempt(tags)

    def __len__(self) -> int:
        return len(self.tags)

    def last(self) -> Tag:
        return self.tags[-1]


def attempt_before(s: Attempt, t: Attempt) -> bool:
    """The strict order on attempts: proper prefix, or lexicographically
    earlier at the first differing tag (tags compared by ``tag_precedes``).

    Attempts whose first differing tags are not related by the tag order are
    simply not comparable; the machine reports such states instead of
    guessing.
    """
    if s.tags == t.tags:
        return False
    for a, b in zip(s.tags, t.tags):
        if a != b:
            return tag_precedes(a, b)
    return len(s.tags) < len(t.tags)


@dataclass(frozen=True)
class MachineState:
    """The attempt set in insertion order plus the run status.

    status is "running", "fixed" (a limit audit passed; ``point`` holds the
    certified point) or "stuck" (``reason`` says why); ``last_case`` records
    which case of the step relation produced this state.

    ``ordered`` caches that the attempt set is known totally ordered; states
    built by the machine carry it, externally assembled states get the full
    pairwise check on their first step.
    """

    attempts: tuple[Attempt, ...] = ()
    status: str = "running"
    point: CauchyReal | None = None
    reason: str | None = None
    last_case: str | None = None
    ordered: bool = field(default=False, compare=False)


def _totally_ordered(attempts: Sequence[Attempt]) -> bool:
    for i, s in enumerate(attempts):
        for t in attempts[i + 1:]:
            if not (attempt_before(s, t) or attempt_before(t, s)):
                return False
    return True


def _comparable_with_all(attempts: Sequence[Attempt], new: Attempt) -> bool:
    return all(attempt_before(a, new) or attempt_before(new, a) for a in attempts)


def _maximal(attempts: Sequence[Attempt]) -> Attempt:
    best = attempts[0]
    for a in attempts[1:]:
        if attempt_before(best, a):
            best = a
    return best


def _certified_search(oracle: MemberOracle, lo, hi, fuel: int):
    """First enumerated rational in (lo, hi) ∩ [0,1] (whole of [0,1] when lo
    is None) whose oracle value certifies positive.

    Each candidate gets a doubling stage schedule 1, 2, 4, ... up to the cap;
    every oracle evaluation consumes one unit of fuel.  Returns (q, certified
    lower bound) or None.
    """
    candidates = rationals() if lo is None else rationals_in(lo, hi)
    spent = 0
    for q in candidates:
        point = CauchyReal.constant(q)
        k = 1
        while k <= _MAX_STAGE:
            if spent >= fuel:
                return None
            v = oracle.value(point, k) - pow2(-k)
            spent += 1
            if v > 0:
                return q, v
            k *= 2
        # candidate never certified within the stage cap; try the next one
    return None


def _grid_eps(strict_bound: Fraction, halving_bound: Fraction | None) -> Fraction | None:
    """Largest dyadic-grid radius meeting the constraints.

    Scanning grids 2**-j upward, take the largest multiple of 2**-j that is
    strictly below strict_bound and at most halving_bound; the first grid
    with a positive such multiple wins.
    """
    if strict_bound <= 0:
        return None
    for j in range(_MAX_STAGE):
        g = pow2(-j)
        steps = -((-strict_bound) // g) - 1  # largest t with t*g < strict_bound
        if halving_bound is not None:
            steps = min(steps, halving_bound // g)
        if steps > 0:
            return steps * g
    return None


def machine_step(
    state: MachineState,
    sets: Callable[[int], MemberOracle],
    fuel: int,
    *,
    flood_limit: int | None = None,
    sink: Callable[[str, Attempt | None], None] | None = None,
) -> MachineState:
    """One application of the inductive step to a state.

    Case "o": a state that is not totally ordered is returned stuck.
    Case "i": an empty state is seeded with [(q, 1)] for the first rational q
    certified in sets(0).
    Case "iii": reported (stuck) when more than flood_limit attempts share
    one length -- undetectable any other way at a finite stage.
    Case "ii": otherwise the maximal attempt of length k is extended by the
    first certified rational in its last open interval under sets(k), with
    the largest grid radius honouring nesting, halving and the certified
    containment radius.

    The limit case is deliberately not here: callers run ``limit_audit`` and,
    on failure, ``apply_limit_fail``.  A failed frontier search returns the
    state stuck rather than silently looping.
    """

    def emit(case: str, attempt: Attempt | None, **kw) -> MachineState:
        if sink is not None:
            sink(case, attempt)
        if attempt is None:
            return replace(state, last_case=case, ordered=True, **kw)
        assert _comparable_with_all(state.attempts, attempt)
        return replace(
            state, attempts=state.attempts + (attempt,), last_case=case, ordered=True, **kw
        )

    if state.status != "running":
        return state
    if not state.ordered and not _totally_ordered(state.attempts):
        if sink is not None:
            sink("o", None)
        return replace(state, status="stuck", reason="not totally ordered", last_case="o")
    if not state.attempts:
        found = _certified_search(sets(0), None, None, fuel)
        if found is None:
            return emit("i", None, status="stuck", reason="frontier search exhausted")
        q, _ = found
        return emit("i", Attempt.of([Tag(q, Fraction(1))]))
    limit = flood_limit if flood_limit is not None else fuel
    lengths: dict[int, int] = {}
    for a in state.attempts:
        lengths[len(a)] = lengths.get(len(a), 0) + 1
        if lengths[len(a)] > limit:
            return emit("iii", None, status="stuck", reason="attempt flood at one length")
    top = _maximal(state.attempts)
    last = top.last()
    level = len(top)
    found = _certified_search(sets(level), last.r - last.eps, last.r + last.eps, fuel)
    if found is None:
        return emit("ii", None, status="stuck", reason="frontier search exhausted")
    q, radius = found
    strict = min(q - (last.r - last.eps), (last.r + last.eps) - q, radius)
    eps = _grid_eps(strict, last.eps / 2)
    if eps is None:
        return emit("ii", None, status="stuck", reason="no admissible radius")
    return emit("ii", Attempt.of(top.tags + (Tag(q, eps),)))


def maximal_chain(state: MachineState) -> list[Tag]:
    """The per-length maximal tags, asserted coherent.

    The maximal attempt of each length must be a prefix of the longest one;
    the machine only audits in states where this holds, and a violation
    raises rather than guessing a chain.
    """
    if not state.attempts:
        raise ValueError("empty state has no chain")
    by_len: dict[int, Attempt] = {}
    for a in state.attempts:
        cur = by_len.get(len(a))
        if cur is None or attempt_before(cur, a):
            by_len[len(a)] = a
    longest = by_len[max(by_len)]
    for length, a in by_len.items():
        if a.tags != longest.tags[:length]:
            raise ValueError("per-length maximal tags are not coherent")
    return list(longest.tags)


def chain_point(chain: Sequence[Tag]) -> CauchyReal:
    """The limit surrogate of a chain: stage n answers with the first centre
    whose radius is at most 2**-(n+1), clamped to the deepest centre.

    The nesting discipline makes the pairwise modulus hold; accuracy beyond
    the deepest radius is only as good as the chain is deep.
    """
    tags = tuple(chain)
    if not tags:
        raise ValueError("empty chain")

    def approx(n: int) -> Fraction:
        tol = pow2(-(n + 1))
        for t in tags:
            if t.eps <= tol:
                return t.r
        return tags[-1].r

    return CauchyReal(approx, name="chain-limit")


@dataclass(frozen=True)
class AuditResult:
    ok: bool
    point: CauchyReal | None = None
    failed_index: int | None = None


def limit_audit(chain: Sequence[Tag], sets, depth: int, fuel: int) -> AuditResult:
    """Semi-decide membership of the chain's limit point in sets 0..depth.

    Certification per level uses sequential stages up to fuel.  ok with the
    point when every level certifies; otherwise the least failing level, for
    the caller to apply the halving move at.
    """
    Attempt.of(chain)  # validate the chain invariants
    x = chain_point(chain)
    for i in range(depth + 1):
        r = _inner_radius_seq(sets(i), x, fuel)
        if r is None:
            return AuditResult(ok=False, failed_index=i)
    return AuditResult(ok=True, point=x)


def _inner_radius_seq(oracle: MemberOracle, x: CauchyReal, fuel: int) -> Fraction | None:
    for k in range(1, fuel + 1):
        v = oracle.value(x, k) - pow2(-k)
        if v > 0:
            return v
    return None


def apply_limit_fail(state: MachineState, failed_index: int) -> MachineState:
    """The sideways move: re-add the chain up to the failed level with the
    last radius halved.  The new attempt extends the order (the old tag
    precedes its halved copy), so total order is preserved."""
    chain = maximal_chain(state)
    if failed_index >= len(chain):
        raise ValueError("cannot halve a level the chain has not reached")
    t = chain[failed_index]
    tags = tuple(chain[:failed_index]) + (Tag(t.r, t.eps / 2),)
    return replace(
        state,
        attempts=state.attempts + (Attempt.of(tags),),
        last_case="iv.2",
    )


def run_machine(
    sets,
    steps: int,
    fuel: int,
    *,
    sink: Callable[[str, Attempt | None], None] | None = None,
) -> tuple[MachineState, list[str]]:
    """Drive the machine for a number of steps, recording the case labels."""
    get = sets if callable(sets) else (lambda i: sets[i])
    state = MachineState()
    cases: list[str] = []
    for _ in range(steps):
        state = machine_step(state, get, fuel, sink=sink)
        cases.append(state.last_case or "?")
        if state.status != "running":
            break
    return state, cases


def baire_point(
    sets,
    k: int,
    fuel: int,
    *,
    sink: Callable[[str, Tag], None] | None = None,
) -> tuple[CauchyReal, list[Tag]] | None:
    """A point in the intersection of a sequence of dense open sets, given
    radius-oracle presentations.

    Builds one tag per level: the first certified rational in the previous
    open tag interval under sets(m), with the largest grid radius keeping the
    closed tag inside both the previous open interval and the certified ball.
    Stops once the radius reaches 2**-(k+1); the limit surrogate then
    satisfies the Cauchy modulus and lies in every certified ball, hence in
    every consulted set.  None when some frontier search exhausts its fuel
    (failed density certification at that level, not a refutation).
    """
    get = sets if callable(sets) else (lambda i: sets[i])
    tags: list[Tag] = []
    target = pow2(-(k + 1))
    level = 0
    while True:
        if not tags:
            found = _certified_search(get(0), None, None, fuel)
        else:
            last = tags[-1]
            found = _certified_search(
                get(level), last.r - last.eps, last.r + last.eps, fuel
            )
        if found is None:
            return None
        q, radius = found
        if not tags:
            strict = radius
            halving = None
        else:
            last = tags[-1]
            strict = min(q - (last.r - last.eps), (last.r + last.eps) - q, radius)
            halving = last.eps / 2
        eps = _grid_eps(strict, halving)
        if eps is None:
            return None
        tag = Tag(q, eps)
        tags.append(tag)
        if sink is not None:
            sink("i" if level == 0 else "ii", tag)
        level += 1
        if eps <= target:
            return chain_point(tags), tags
