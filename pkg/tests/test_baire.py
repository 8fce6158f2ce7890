from fractions import Fraction as F

import pytest

from opensets import (
    Attempt,
    CauchyReal,
    FinOpen,
    MachineState,
    RadiusOracle,
    Tag,
    apply_limit_fail,
    attempt_before,
    baire_point,
    chain_point,
    inner_radius,
    limit_audit,
    machine_step,
    maximal_chain,
    openiv,
    pow2,
    punctured_unit,
    radius_from_pieces,
    rational,
    run_machine,
    tag_precedes,
)

FULL = radius_from_pieces(FinOpen.of([openiv(-1, 2)]))


def punct(q) -> RadiusOracle:
    return radius_from_pieces(punctured_unit([F(q)]))


def rational_complements(i: int) -> RadiusOracle:
    return punct(rational(i))


def all_full(i: int) -> RadiusOracle:
    return FULL


# ---------------------------------------------------------------------------
# tag and attempt orders


def test_tag_precedes_examples():
    assert tag_precedes(Tag(F(1, 2), F(1)), Tag(F(1, 2), F(1, 2)))
    assert not tag_precedes(Tag(F(1, 2), F(1)), Tag(F(1, 3), F(1, 2)))
    assert not tag_precedes(Tag(F(1, 2), F(1)), Tag(F(1, 2), F(2, 3)))


def test_attempt_before_examples():
    s = Attempt.of([Tag(F(1, 2), F(1))])
    t = Attempt.of([Tag(F(1, 2), F(1)), Tag(F(1, 2), F(1, 4))])
    assert attempt_before(s, t)  # prefix
    u = Attempt.of([Tag(F(1, 2), F(1, 2))])
    assert attempt_before(s, u)  # lexicographic via the tag order
    assert not attempt_before(s, s)  # strict


def test_attempt_invariants_enforced():
    with pytest.raises(ValueError):
        Attempt.of([])
    with pytest.raises(ValueError):  # halving violated
        Attempt.of([Tag(F(1, 2), F(1)), Tag(F(1, 2), F(2, 3))])
    with pytest.raises(ValueError):  # nesting violated
        Attempt.of([Tag(F(1, 2), F(1, 4)), Tag(F(7, 8), F(1, 16))])


def test_tag_positive_radius():
    with pytest.raises(ValueError):
        Tag(F(1, 2), F(0))


# ---------------------------------------------------------------------------
# machine steps


def test_machine_seed_case():
    state = machine_step(MachineState(), all_full, 1000)
    assert state.last_case == "i"
    assert state.attempts == (Attempt.of([Tag(F(0), F(1))]),)


def test_machine_extend_case():
    seeded = MachineState(attempts=(Attempt.of([Tag(F(0), F(1))]),))
    sets = lambda i: punct(0) if i == 1 else FULL
    state = machine_step(seeded, sets, 10_000)
    assert state.last_case == "ii"
    top = state.attempts[-1]
    assert len(top) == 2
    r2, e2 = top.tags[1].r, top.tags[1].eps
    assert 2 * e2 <= 1
    assert -1 < r2 - e2 and r2 + e2 < 1  # nests in the seed's open interval
    assert r2 != 0  # the deleted point cannot be certified
    assert abs(r2) > e2 or r2 - e2 > 0  # closed tag avoids the puncture


def test_machine_case_o_on_incomparable_fixture():
    bad = MachineState(
        attempts=(Attempt.of([Tag(F(1, 2), F(1))]), Attempt.of([Tag(F(1, 3), F(1))]))
    )
    state = machine_step(bad, all_full, 100)
    assert state.status == "stuck"
    assert state.last_case == "o"
    assert state.attempts == bad.attempts  # unchanged


def test_machine_seed_exhausts_on_empty_set():
    silent = RadiusOracle(lambda x, k: F(0))
    state = machine_step(MachineState(), lambda i: silent, 200)
    assert state.status == "stuck" and "exhausted" in state.reason


def test_machine_deterministic():
    a, _ = run_machine(rational_complements, 25, 10_000)
    b, _ = run_machine(rational_complements, 25, 10_000)
    assert a.attempts == b.attempts


def test_machine_attempt_invariants_along_run():
    state, cases = run_machine(rational_complements, 40, 10_000)
    assert set(cases) <= {"i", "ii"}
    for attempt in state.attempts:
        Attempt.of(attempt.tags)  # re-validate nesting and halving


# ---------------------------------------------------------------------------
# the limit machinery


def test_limit_audit_pass_on_full_run():
    state, _ = run_machine(all_full, 9, 1000)
    chain = maximal_chain(state)
    got = limit_audit(chain, all_full, 8, 50)
    assert got.ok
    assert got.point.approx(6) == 0  # the run never leaves the first rational


def test_limit_audit_fail_picks_least_level():
    # a constructed chain converging to 1/2; level 3 deletes exactly 1/2
    chain = [Tag(F(1, 2), pow2(-n)) for n in range(1, 9)]
    sets = lambda i: punct(F(1, 2)) if i == 3 else FULL
    got = limit_audit(chain, sets, 8, 60)
    assert not got.ok and got.failed_index == 3


def test_limit_audit_depth_zero():
    chain = [Tag(F(1, 2), F(1, 2))]
    assert limit_audit(chain, all_full, 0, 20).ok


def test_apply_limit_fail_halves_and_keeps_order():
    state, _ = run_machine(all_full, 6, 1000)
    chain = maximal_chain(state)
    failed = len(chain) - 1
    bumped = apply_limit_fail(state, failed)
    assert bumped.last_case == "iv.2"
    new = bumped.attempts[-1]
    assert len(new) == failed + 1
    assert new.tags[-1].eps == chain[failed].eps / 2
    # order is preserved: one more machine step still runs case ii
    after = machine_step(bumped, all_full, 1000)
    assert after.status == "running" and after.last_case == "ii"


def test_maximal_chain_rejects_incoherent_states():
    a = Attempt.of([Tag(F(0), F(1))])
    b = Attempt.of([Tag(F(0), F(1, 2)), Tag(F(0), F(1, 8))])
    state = MachineState(attempts=(a, b))
    with pytest.raises(ValueError):
        maximal_chain(state)


def test_chain_point_modulus():
    chain = [Tag(F(1, 3), pow2(-n)) for n in range(1, 12)]
    x = chain_point(chain)
    for n in range(10):
        for i in range(10):
            assert abs(x.approx(n) - x.approx(n + i)) <= pow2(-n)


# ---------------------------------------------------------------------------
# the realiser


def test_baire_point_all_full():
    x, nest = baire_point(all_full, 4, 1000)
    assert x.approx(10) == 0  # the first enumerated rational
    assert all(t.r == 0 for t in nest)
    for a, b in zip(nest, nest[1:]):
        assert b.eps == a.eps / 2  # radii halve step by step
    assert nest[-1].eps <= pow2(-5)


def test_baire_point_rational_complements():
    x, nest = baire_point(rational_complements, 10, 50_000)
    Attempt.of(nest)
    assert nest[-1].eps <= pow2(-11)
    # the closed tag at each level sits inside the certified ball of its set
    for m, t in enumerate(nest):
        v = rational_complements(m).value(CauchyReal.constant(t.r), 40)
        assert t.eps < v
    # the point is certified inside every consulted set
    for m in range(len(nest)):
        assert inner_radius(rational_complements(m), x, 60) is not None


def test_baire_point_exhausts_on_empty():
    silent = RadiusOracle(lambda x, k: F(0))
    assert baire_point(lambda i: silent, 6, 500) is None


def test_baire_point_cauchy_modulus():
    x, _ = baire_point(rational_complements, 12, 50_000)
    for n in range(12):
        for i in range(6):
            assert abs(x.approx(n) - x.approx(n + i)) <= pow2(-n)
