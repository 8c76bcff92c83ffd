"""Synchronous amnesiac flooding.

Each round, every node that just received the token forwards it to all
neighbours except those it received it from, keeping no other state. A
configuration is the set of directed sends of one round; the empty
configuration is absorbing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import DisconnectedGraphError, Graph, is_connected

Arc = tuple[int, int]
Configuration = frozenset[Arc]


class InternalInvariantError(RuntimeError):
    """The engine produced a state that contradicts its own guarantees."""

    def __init__(self, message: str, trace: "Trace | None" = None):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class Trace:
    """Complete record of one synchronous run.

    rounds[i] is the set of directed sends of round i+1. round_sets[i] is the
    set of nodes receiving in round i, with round_sets[0] the source alone.
    termination_round is the index of the last non-empty round-set.
    """

    n: int
    source: int
    rounds: tuple[Configuration, ...]
    round_sets: tuple[frozenset[int], ...]
    termination_round: int

    @property
    def total_sends(self) -> int:
        return sum(len(c) for c in self.rounds)

    def to_json_obj(self) -> dict:
        return {
            "source": self.source,
            "rounds": [[[u, v] for u, v in sorted(c)] for c in self.rounds],
            "round_sets": [sorted(rs) for rs in self.round_sets],
            "termination_round": self.termination_round,
        }


def step(g: Graph, config: Configuration) -> Configuration:
    """One synchronous round: receivers of ``config`` forward to everyone who
    did not just send to them. Pure; consults no state besides its arguments."""
    inbox: dict[int, set[int]] = {}
    for u, v in config:
        e = (u, v) if u < v else (v, u)
        if e not in g.edge_set:
            raise InternalInvariantError(f"in-flight arc {(u, v)} is not an edge")
        inbox.setdefault(v, set()).add(u)
    out = set()
    for v, senders in inbox.items():
        for w in g.adj[v]:
            if w not in senders:
                out.add((v, w))
    return frozenset(out)


def run_sync(g: Graph, source: int, max_rounds: int | None = None) -> Trace:
    """Flood from ``source`` until no message is in flight.

    ``max_rounds`` defaults to 2n+2, one beyond the proven termination bound,
    so a run that would exceed it surfaces as an engine bug rather than being
    silently truncated. A node landing in more than two round-sets is likewise
    a hard error.
    """
    g.check_node(source)
    if not is_connected(g):
        raise DisconnectedGraphError("flooding needs a connected graph")
    if max_rounds is None:
        max_rounds = 2 * g.n + 2

    cur: Configuration = frozenset((source, w) for w in g.adj[source])
    rounds: list[Configuration] = []
    round_sets: list[frozenset[int]] = [frozenset((source,))]
    while cur:
        if len(rounds) >= max_rounds:
            partial = Trace(g.n, source, tuple(rounds), tuple(round_sets), len(rounds))
            raise InternalInvariantError(
                f"still active after {max_rounds} rounds on n={g.n}", partial)
        rounds.append(cur)
        round_sets.append(frozenset(v for _, v in cur))
        cur = step(g, cur)

    trace = Trace(g.n, source, tuple(rounds), tuple(round_sets), len(rounds))
    counts = round_multiplicity(trace)
    worst = max(counts, key=counts.get)
    if counts[worst] > 2:
        raise InternalInvariantError(
            f"node {worst} received in {counts[worst]} distinct round-sets", trace)
    return trace


def round_multiplicity(trace: Trace) -> dict[int, int]:
    """Number of distinct round-sets containing each node."""
    counts = {v: 0 for v in range(trace.n)}
    for rs in trace.round_sets:
        for v in rs:
            counts[v] += 1
    return counts
