"""Trace-level verification.

Classifies each run's termination round against the predicted window
(bipartite graphs stop exactly at the source eccentricity e, all others in
e < j <= e+d+1), audits recorded traces against the structural facts that
make the window hold, sweeps every small connected graph exhaustively, and
searches for runs attaining the worst-case bound e+d+1.
"""

from __future__ import annotations

import multiprocessing
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .graph import (DistanceProfile, EcReport, Edge, Graph, diameter,
                    distance_profile, ec_nodes, gen_named, is_bipartite)
from .sync_engine import InternalInvariantError, Trace, run_sync

BIPARTITE_EXACT = "bipartite_exact"
NONBIPARTITE_WINDOW = "nonbipartite_window"

_SWEEP_BLOCK = 4096  # masks per parallel work unit; fixed so output never depends on jobs


@dataclass(frozen=True)
class ClassificationReport:
    """Where one run's termination round lands relative to the predicted window."""

    source: int
    bipartite: bool
    eccentricity: int
    diameter: int
    termination_round: int
    window_ok: bool
    theorem_applied: str

    def to_json_obj(self) -> dict:
        return {
            "source": self.source,
            "bipartite": self.bipartite,
            "eccentricity": self.eccentricity,
            "diameter": self.diameter,
            "termination_round": self.termination_round,
            "window_ok": self.window_ok,
            "theorem_applied": self.theorem_applied,
        }


def _classify_from_parts(source: int, trace: Trace, prof: DistanceProfile,
                         diam: int, bipartite: bool) -> ClassificationReport:
    j, e = trace.termination_round, prof.eccentricity
    if bipartite:
        ok = j == e
        applied = BIPARTITE_EXACT
    else:
        ok = e < j <= e + diam + 1
        applied = NONBIPARTITE_WINDOW
    return ClassificationReport(source, bipartite, e, diam, j, ok, applied)


def classify(g: Graph, source: int) -> ClassificationReport:
    """Run the synchronous engine and place the outcome in its termination window."""
    trace = run_sync(g, source)
    prof = distance_profile(g, source)
    return _classify_from_parts(source, trace, prof, diameter(g),
                                is_bipartite(g).bipartite)


@dataclass(frozen=True)
class AuditCheck:
    name: str
    ok: bool
    node: int | None = None
    round: int | None = None
    detail: str = ""

    def to_json_obj(self) -> dict:
        return {"name": self.name, "ok": self.ok, "node": self.node,
                "round": self.round, "detail": self.detail}


@dataclass(frozen=True)
class TraceAudit:
    """Structural checks of one trace against the distance layering.

    A failing check on any connected graph is a bug in the engine or in the
    audit, never acceptable output; failures are reported, not raised.
    """

    checks: tuple[AuditCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> tuple[AuditCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)

    def to_json_obj(self) -> dict:
        return {"all_ok": self.all_ok,
                "checks": [c.to_json_obj() for c in self.checks]}


def audit_trace(g: Graph, source: int, trace: Trace) -> TraceAudit:
    """Audit a trace produced by run_sync(g, source)."""
    return _audit_from_parts(g, trace, distance_profile(g, source),
                             ec_nodes(g, source))


def _audit_from_parts(g: Graph, trace: Trace, prof: DistanceProfile,
                      ec: EcReport) -> TraceAudit:
    occ: list[list[int]] = [[] for _ in range(g.n)]
    for i, rs in enumerate(trace.round_sets):
        for v in rs:
            occ[v].append(i)
    dist = prof.dist
    checks: list[AuditCheck] = []

    # Every node's first receipt happens exactly at its BFS distance: the
    # layer at distance j is fully covered by round j and never touched earlier.
    ok, node, rnd, detail = True, None, None, ""
    for v in range(g.n):
        if not occ[v] or occ[v][0] != dist[v]:
            ok, node = False, v
            rnd = occ[v][0] if occ[v] else None
            detail = f"first receipt of {v} at {rnd}, distance {dist[v]}"
            break
    checks.append(AuditCheck("layer_containment", ok, node, rnd, detail))

    # Every edge from layer j to layer j+1 carries a send in round j+1.
    ok, node, rnd, detail = True, None, None, ""
    for u, v in g.edges:
        a, b = (u, v) if dist[u] < dist[v] else (v, u)
        if dist[b] - dist[a] != 1:
            continue
        r = dist[a]  # sends of round r+1 are stored at rounds[r]
        if r >= len(trace.rounds) or (a, b) not in trace.rounds[r]:
            ok, node, rnd = False, a, r + 1
            detail = f"edge ({a},{b}) carried no send in round {r + 1}"
            break
    checks.append(AuditCheck("frontier_sends", ok, node, rnd, detail))

    # An equidistantly-connected node at distance j receives again exactly in
    # round j+1.
    ok, node, rnd, detail = True, None, None, ""
    for v in sorted(ec.ec_nodes):
        if len(occ[v]) < 2 or occ[v][1] != dist[v] + 1:
            ok, node = False, v
            rnd = occ[v][1] if len(occ[v]) > 1 else None
            detail = f"ec node {v} second receipt at {rnd}, expected {dist[v] + 1}"
            break
    checks.append(AuditCheck("ec_second_receipt", ok, node, rnd, detail))

    # All nodes receive exactly once if and only if there are no ec nodes.
    single = all(len(o) == 1 for o in occ)
    ok = single == (not ec.ec_nodes)
    node, rnd, detail = None, None, ""
    if not ok:
        if ec.ec_nodes:
            node = min(ec.ec_nodes)
            detail = f"ec nodes exist ({node}) but every node received exactly once"
        else:
            node = next(v for v in range(g.n) if len(occ[v]) != 1)
            rnd = occ[node][1] if len(occ[node]) > 1 else None
            detail = f"no ec nodes but node {node} received {len(occ[node])} times"
    checks.append(AuditCheck("single_visit_iff_no_ec", ok, node, rnd, detail))

    # If a node receives a second time in round j, each neighbour's second
    # receipt falls in round j-1, j, or j+1. Nodes with a single receipt do
    # not trigger the check.
    ok, node, rnd, detail = True, None, None, ""
    for h in range(g.n):
        if len(occ[h]) < 2:
            continue
        j = occ[h][1]
        for w in g.adj[h]:
            if len(occ[w]) < 2 or not j - 1 <= occ[w][1] <= j + 1:
                ok, node = False, w
                rnd = occ[w][1] if len(occ[w]) > 1 else None
                detail = (f"neighbour {w} of {h} has second receipt {rnd}, "
                          f"outside rounds {j - 1}..{j + 1}")
                break
        if not ok:
            break
    checks.append(AuditCheck("neighbor_echo_window", ok, node, rnd, detail))

    return TraceAudit(tuple(checks))


def analyze(g: Graph, source: int) -> tuple[ClassificationReport, TraceAudit]:
    """Classification plus audit for one (graph, source), running the engine once."""
    trace = run_sync(g, source)
    prof = distance_profile(g, source)
    ec = ec_nodes(g, source)
    report = _classify_from_parts(source, trace, prof, diameter(g),
                                  is_bipartite(g).bipartite)
    return report, _audit_from_parts(g, trace, prof, ec)


def _pair_table(n: int) -> tuple[Edge, ...]:
    return tuple(combinations(range(n), 2))


def _mask_connected(n: int, mask: int, pairs: tuple[Edge, ...]) -> bool:
    adjm = [0] * n
    for idx, (u, v) in enumerate(pairs):
        if mask >> idx & 1:
            adjm[u] |= 1 << v
            adjm[v] |= 1 << u
    seen = frontier = 1
    while frontier:
        reach = 0
        w = frontier
        while w:
            b = w & -w
            reach |= adjm[b.bit_length() - 1]
            w ^= b
        frontier = reach & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def connected_graphs(n: int):
    """Yield every connected simple graph on the labeled vertex set 0..n-1."""
    pairs = _pair_table(n)
    for mask in range(1 << len(pairs)):
        if _mask_connected(n, mask, pairs):
            yield Graph(n=n, edges=tuple(p for i, p in enumerate(pairs)
                                         if mask >> i & 1))


@dataclass(frozen=True)
class SweepViolation:
    n: int
    edges: tuple[Edge, ...]
    source: int
    check: str
    detail: str
    trace: dict | None

    def to_json_obj(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges],
                "source": self.source, "check": self.check,
                "detail": self.detail, "trace": self.trace}


@dataclass(frozen=True)
class SweepSummary:
    n_max: int
    graphs: int
    runs: int
    max_termination_round: int
    j_minus_e_histogram: dict[int, int]
    bipartite_runs: int
    violations: tuple[SweepViolation, ...]

    def to_json_obj(self) -> dict:
        return {
            "n_max": self.n_max,
            "graphs": self.graphs,
            "runs": self.runs,
            "max_j": self.max_termination_round,
            "j_minus_e_histogram": {str(k): v for k, v in
                                    sorted(self.j_minus_e_histogram.items())},
            "violations": [v.to_json_obj() for v in self.violations],
        }


def _examine_graph(g: Graph):
    """All-sources verification of one connected graph.

    Returns (runs, max_j, j-e histogram, violations, bipartite_runs).
    """
    diam = diameter(g)
    bip = is_bipartite(g).bipartite
    runs = 0
    max_j = 0
    hist: Counter[int] = Counter()
    violations: list[SweepViolation] = []
    bipartite_runs = 0
    for source in range(g.n):
        runs += 1
        if bip:
            bipartite_runs += 1
        prof = distance_profile(g, source)
        ec = ec_nodes(g, source)
        try:
            trace = run_sync(g, source)
        except InternalInvariantError as exc:
            dump = exc.trace.to_json_obj() if exc.trace is not None else None
            violations.append(SweepViolation(g.n, g.edges, source,
                                             "engine_invariant", str(exc), dump))
            continue
        j = trace.termination_round
        max_j = max(max_j, j)
        hist[j - prof.eccentricity] += 1
        if j >= 2 * g.n + 1:
            violations.append(SweepViolation(
                g.n, g.edges, source, "termination_bound",
                f"j={j} not below 2n+1={2 * g.n + 1}", trace.to_json_obj()))
        report = _classify_from_parts(source, trace, prof, diam, bip)
        if not report.window_ok:
            violations.append(SweepViolation(
                g.n, g.edges, source, "termination_window",
                f"j={j} outside window for e={prof.eccentricity} d={diam} "
                f"bipartite={bip}", trace.to_json_obj()))
        audit = _audit_from_parts(g, trace, prof, ec)
        for c in audit.failures:
            violations.append(SweepViolation(
                g.n, g.edges, source, f"audit:{c.name}", c.detail,
                trace.to_json_obj()))
    return runs, max_j, hist, violations, bipartite_runs


def _sweep_block(args: tuple[int, int, int]):
    n, lo, hi = args
    pairs = _pair_table(n)
    graphs = runs = bipartite_runs = 0
    max_j = 0
    hist: Counter[int] = Counter()
    violations: list[SweepViolation] = []
    for mask in range(lo, hi):
        if not _mask_connected(n, mask, pairs):
            continue
        g = Graph(n=n, edges=tuple(p for i, p in enumerate(pairs)
                                   if mask >> i & 1))
        graphs += 1
        r, mj, h, v, b = _examine_graph(g)
        runs += r
        max_j = max(max_j, mj)
        hist.update(h)
        violations.extend(v)
        bipartite_runs += b
    return graphs, runs, max_j, dict(hist), violations, bipartite_runs


def sweep(n_max: int, jobs: int = 1) -> SweepSummary:
    """Run every (connected graph, source) pair for 2 <= n <= n_max and verify
    the termination bound, the receipt-multiplicity bound, the termination
    window, and all trace audits. Any violation is recorded with the
    counterexample graph, source, and full trace.

    Work is split into fixed-size mask blocks merged in order, so the summary
    is byte-identical for any ``jobs``.
    """
    if not 2 <= n_max <= 7:
        raise ValueError(f"n_max must be between 2 and 7, got {n_max}")
    blocks = []
    for n in range(2, n_max + 1):
        total = 1 << (n * (n - 1) // 2)
        blocks.extend((n, lo, min(lo + _SWEEP_BLOCK, total))
                      for lo in range(0, total, _SWEEP_BLOCK))
    if jobs > 1:
        with multiprocessing.Pool(processes=jobs) as pool:
            parts = pool.map(_sweep_block, blocks, chunksize=1)
    else:
        parts = [_sweep_block(b) for b in blocks]

    graphs = runs = bipartite_runs = 0
    max_j = 0
    hist: Counter[int] = Counter()
    violations: list[SweepViolation] = []
    for g_, r_, mj_, h_, v_, b_ in parts:
        graphs += g_
        runs += r_
        max_j = max(max_j, mj_)
        hist.update(h_)
        violations.extend(v_)
        bipartite_runs += b_
    return SweepSummary(n_max, graphs, runs, max_j,
                        dict(sorted(hist.items())), bipartite_runs,
                        tuple(violations))


@dataclass(frozen=True)
class SharpWitness:
    """A (graph, source) whose run attains the upper bound e + d + 1."""

    graph: Graph
    source: int
    eccentricity: int
    diameter: int
    termination_round: int

    @property
    def is_sharp(self) -> bool:
        return self.termination_round == self.eccentricity + self.diameter + 1

    def to_json_obj(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges],
            "source": self.source,
            "eccentricity": self.eccentricity,
            "diameter": self.diameter,
            "termination_round": self.termination_round,
        }


def _witness_rank(w: SharpWitness):
    return (w.graph.n, w.graph.m, w.graph.edges, w.source)


@dataclass(frozen=True)
class SharpSearchResult:
    """Outcome of the sharpness search.

    ``frontier`` maps each attained (eccentricity, diameter) pair to its
    minimal witness (by node count, then edge count, then edge list, then
    source). ``smallest`` is the minimal witness with eccentricity strictly
    below diameter; ``target`` is the first witness matching the requested
    (eccentricity, diameter). ``canonical`` holds the triangle and 5-cycle
    runs, which attain the bound on every search.
    """

    n_searched: int
    target: SharpWitness | None
    smallest: SharpWitness | None
    frontier: dict[tuple[int, int], SharpWitness]
    canonical: tuple[SharpWitness, ...]

    def to_json_obj(self) -> dict:
        return {
            "n_searched": self.n_searched,
            "target": self.target.to_json_obj() if self.target else None,
            "smallest": self.smallest.to_json_obj() if self.smallest else None,
            "frontier": {f"{e},{d}": w.to_json_obj()
                         for (e, d), w in sorted(self.frontier.items())},
            "canonical": [w.to_json_obj() for w in self.canonical],
        }


def _sharp_witness(g: Graph, source: int) -> SharpWitness:
    prof = distance_profile(g, source)
    trace = run_sync(g, source)
    return SharpWitness(g, source, prof.eccentricity, diameter(g),
                        trace.termination_round)


def _canonical_witnesses() -> tuple[SharpWitness, ...]:
    out = []
    for g in (gen_named("cycle", 3), gen_named("cycle", 5)):
        w = _sharp_witness(g, 0)
        if not w.is_sharp:
            raise InternalInvariantError("odd-cycle run missed the sharp bound")
        out.append(w)
    return tuple(out)


def find_sharp_example(n_max: int, target: tuple[int, int] = (2, 4)) -> SharpSearchResult:
    """Search labeled connected graphs in order of size for runs attaining the
    worst-case termination round e + d + 1.

    Enumeration proceeds by increasing node count and stops after the first
    count where a witness with (eccentricity, diameter) == ``target`` has been
    seen, so everything reported as minimal really is minimal. If the target
    is never attained, the attained frontier up to ``n_max`` is the answer.
    """
    if not 2 <= n_max <= 8:
        raise ValueError(f"n_max must be between 2 and 8, got {n_max}")
    frontier: dict[tuple[int, int], SharpWitness] = {}
    smallest: SharpWitness | None = None
    n_searched = 0
    for n in range(2, n_max + 1):
        for g in connected_graphs(n):
            diam = diameter(g)
            for source in range(g.n):
                prof = distance_profile(g, source)
                trace = run_sync(g, source)
                e, j = prof.eccentricity, trace.termination_round
                if j != e + diam + 1:
                    continue
                w = SharpWitness(g, source, e, diam, j)
                key = (e, diam)
                cur = frontier.get(key)
                if cur is None or _witness_rank(w) < _witness_rank(cur):
                    frontier[key] = w
                if e < diam and (smallest is None
                                 or _witness_rank(w) < _witness_rank(smallest)):
                    smallest = w
        n_searched = n
        if target in frontier:
            break
    return SharpSearchResult(n_searched, frontier.get(target), smallest,
                             frontier, _canonical_witnesses())
