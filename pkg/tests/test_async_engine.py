from __future__ import annotations

from itertools import combinations

import pytest

from amflood.async_engine import (Adversary, AdversaryDecision,
                                  HoldSecondSenderAdversary, OUTCOME_CYCLE,
                                  OUTCOME_EXHAUSTED, OUTCOME_TERMINATED,
                                  UnfairScheduleError, ZeroDelayAdversary,
                                  fig6_adversary, run_async)
from amflood.graph import gen_named, parse_edge_list
from amflood.jsonio import dumps_stable
from amflood.sync_engine import run_sync

TRIANGLE = parse_edge_list("a b\nb c\nc a")  # a=0, b=1, c=2

GOLDEN = [
    ("hypercube", 3, 0), ("petersen", None, 0), ("path", 4, 1),
    ("cycle", 3, 1), ("cycle", 5, 0), ("cycle", 6, 0),
]


def _named(kind, param):
    return gen_named(kind, param) if param else gen_named(kind)


# ----------------------------------------------------------- zero-delay runs

@pytest.mark.parametrize("kind,param,source", GOLDEN)
def test_zero_delay_equals_sync_byte_for_byte(kind, param, source):
    g = _named(kind, param)
    verdict = run_async(g, source, ZeroDelayAdversary())
    assert verdict.outcome == OUTCOME_TERMINATED
    sync_bytes = dumps_stable(run_sync(g, source).to_json_obj())
    async_bytes = dumps_stable(verdict.to_sync_trace().to_json_obj())
    assert async_bytes == sync_bytes


def test_zero_delay_cycle6_terminates_in_three():
    v = run_async(gen_named("cycle", 6), 1, ZeroDelayAdversary())
    assert (v.outcome, v.termination_round) == (OUTCOME_TERMINATED, 3)


def test_fig6_on_even_cycle_degenerates_to_zero_delay():
    v = run_async(gen_named("cycle", 6), 1, fig6_adversary())
    assert (v.outcome, v.termination_round) == (OUTCOME_TERMINATED, 3)
    assert all(not rec.held for rec in v.rounds)


# --------------------------------------------------------- triangle schedule

def test_fig6_triangle_first_rounds_match_schedule():
    b = TRIANGLE.resolve("b")
    v = run_async(TRIANGLE, b, fig6_adversary(), max_rounds=16)
    r = v.rounds
    # round 1: b floods both neighbours
    assert r[0].delivered == frozenset({(1, 0, 0), (1, 2, 0)})
    # round 2: a and c exchange
    assert r[1].delivered == frozenset({(0, 2, 0), (2, 0, 0)})
    # round 3: a's message reaches b, c's waits a round
    assert r[2].delivered == frozenset({(0, 1, 0)})
    assert r[2].held == frozenset({(2, 1, 0)})
    # round 4: b answers c while c's held message arrives
    assert r[3].pool == frozenset({(1, 2, 0), (2, 1, 1)})
    assert r[3].receipts == frozenset({1, 2})


def test_fig6_triangle_detects_cycle():
    v = run_async(TRIANGLE, 1, fig6_adversary(), max_rounds=16)
    assert v.outcome == OUTCOME_CYCLE
    assert v.first_seen == 3 and v.period == 4
    # independent first-repeat scan over the recorded round-start pools
    seen = {}
    for idx, rec in enumerate(v.rounds, start=1):
        if rec.pool in seen:
            assert (seen[rec.pool], idx - seen[rec.pool]) == (3, 7 - 3)
            break
        seen[rec.pool] = idx
    else:
        pytest.fail("no repeated configuration in the record")


def test_fig6_triangle_every_source_and_budget():
    for source in range(3):
        v = run_async(gen_named("cycle", 3), source, fig6_adversary(),
                      max_rounds=64)
        assert v.outcome == OUTCOME_CYCLE
        first_repeat = v.first_seen + v.period
        assert first_repeat <= 16
        # cycle for every budget at or past the first repeat, never terminated
        for budget in (first_repeat, 16, 64):
            again = run_async(gen_named("cycle", 3), source, fig6_adversary(),
                              max_rounds=budget)
            assert again.outcome == OUTCOME_CYCLE
        short = run_async(gen_named("cycle", 3), source, fig6_adversary(),
                          max_rounds=first_repeat - 1)
        assert short.outcome == OUTCOME_EXHAUSTED


def test_fig6_replay_segment_repeats_exactly():
    v = run_async(TRIANGLE, 1, fig6_adversary(), max_rounds=16)
    first, period = v.first_seen, v.period
    assert len(v.rounds) >= first - 1 + 2 * period
    for k in range(period):
        a = v.rounds[first - 1 + k]
        b = v.rounds[first - 1 + period + k]
        assert a.pool == b.pool and a.held == b.held


def test_small_budget_exhausts_before_cycle():
    v = run_async(TRIANGLE, 1, fig6_adversary(), max_rounds=2)
    assert v.outcome == OUTCOME_EXHAUSTED
    assert v.termination_round is None


# ----------------------------------------------------------------- fairness

class _Stubborn(Adversary):
    deterministic = False

    def decide(self, round_no, config, history):
        # keep holding the lexicographically largest message forever
        if config:
            u, v, _ = max(config)
            return AdversaryDecision(hold=frozenset(((u, v),)))
        return AdversaryDecision()


def test_holding_past_cap_is_rejected():
    with pytest.raises(UnfairScheduleError):
        run_async(TRIANGLE, 1, _Stubborn(), hold_cap=1)


def test_holding_unknown_arc_is_rejected():
    class Bad(Adversary):
        def decide(self, round_no, config, history):
            return AdversaryDecision(hold=frozenset(((7, 8),)))

    with pytest.raises(UnfairScheduleError):
        run_async(TRIANGLE, 1, Bad())


# --------------------------------------------- every schedule ends on a tree

def _explore_all_schedules(g, source, hold_cap=1):
    """Independent exhaustion of every delay choice.

    Returns True when every reachable schedule drains, False when any choice
    sequence can revisit a configuration (which an adversary could repeat
    forever).
    """
    status: dict[frozenset, str] = {}

    def explore(state: frozenset) -> bool:
        if not state:
            return True
        st = status.get(state)
        if st == "done":
            return True
        if st == "open":
            return False
        status[state] = "open"
        holdable = [m for m in state if m[2] < hold_cap]
        for k in range(len(holdable) + 1):
            for held in combinations(holdable, k):
                heldset = set(held)
                inbox: dict[int, set[int]] = {}
                for (u, v, a) in state:
                    if (u, v, a) not in heldset:
                        inbox.setdefault(v, set()).add(u)
                nxt = {(u, v): a + 1 for (u, v, a) in heldset}
                for v, senders in inbox.items():
                    for w in g.adj[v]:
                        if w not in senders:
                            nxt.setdefault((v, w), 0)
                if not explore(frozenset((u, v, a) for (u, v), a in nxt.items())):
                    return False
        status[state] = "done"
        return True

    start = frozenset((source, w, 0) for w in g.adj[source])
    return explore(start)


def test_every_schedule_terminates_on_path4():
    g = gen_named("path", 4)
    assert _explore_all_schedules(g, 1)


def test_some_schedule_recurs_on_triangle():
    assert not _explore_all_schedules(TRIANGLE, 1)


def test_engine_agrees_on_scripted_path_schedules():
    g = gen_named("path", 4)

    class HoldMax(Adversary):
        deterministic = True

        def decide(self, round_no, config, history):
            fresh = [m for m in config if m[2] == 0]
            if fresh and len(config) > 1:
                u, v, _ = max(fresh)
                return AdversaryDecision(hold=frozenset(((u, v),)))
            return AdversaryDecision()

    v = run_async(g, 1, HoldMax(), max_rounds=64)
    assert v.outcome == OUTCOME_TERMINATED


# ------------------------------------------------------------------- export

def test_async_json_shape():
    v = run_async(TRIANGLE, 1, fig6_adversary(), max_rounds=16)
    obj = v.to_json_obj()
    assert set(obj) == {"source", "verdict", "rounds", "round_sets"}
    assert obj["verdict"]["outcome"] == "cycle"
    assert obj["verdict"]["first_seen"] == 3
    assert obj["verdict"]["period"] == 4
    rec = obj["rounds"][2]
    assert rec["held"] == [[2, 1, 0]]
    assert rec["pool"] == sorted(rec["pool"])


def test_to_sync_trace_refuses_held_runs():
    v = run_async(TRIANGLE, 1, fig6_adversary(), max_rounds=16)
    with pytest.raises(ValueError):
        v.to_sync_trace()
