"""Undirected simple graphs plus the static oracles the flooding analyses use.

Nodes are dense integer ids 0..n-1 everywhere. String labels, when present,
live only at the I/O boundary (edge-list files, CLI source lookup); every
algorithm works on ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

Edge = tuple[int, int]

_MASK64 = (1 << 64) - 1


class GraphError(ValueError):
    """Invalid graph input: construction, parsing, or generator parameters."""


class DisconnectedGraphError(GraphError):
    """The operation needs a connected graph and the input is not one."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    ``edges`` holds normalized pairs (u < v), sorted and duplicate-free;
    ``adj`` is derived once at construction. Connectivity is deliberately not
    an invariant of the type: operations that need it check it themselves.
    """

    n: int
    edges: tuple[Edge, ...]
    labels: tuple[str, ...] | None = None
    adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    edge_set: frozenset[Edge] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError(f"need at least one node, got n={self.n}")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels must cover every node id")
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        prev: Edge | None = None
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if not 0 <= u < v < self.n:
                raise GraphError(f"edge {e} not normalized or out of range for n={self.n}")
            if prev is not None and e <= prev:
                raise GraphError("edges must be sorted and unique")
            prev = e
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "adj", tuple(tuple(sorted(a)) for a in nbrs))
        object.__setattr__(self, "edge_set", frozenset(self.edges))

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> Graph:
        """Build a Graph, normalizing endpoint order and dropping duplicates."""
        norm = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            norm.add((u, v) if u < v else (v, u))
        return cls(n=n, edges=tuple(sorted(norm)),
                   labels=tuple(labels) if labels is not None else None)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def check_node(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"node id {v} out of range for n={self.n}")

    def resolve(self, token: str) -> int:
        """Map a label or a numeric id string to a node id."""
        if self.labels is not None and token in self.labels:
            return self.labels.index(token)
        try:
            v = int(token)
        except ValueError:
            raise GraphError(f"unknown node {token!r}") from None
        self.check_node(v)
        return v


def _bfs(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        d = dist[u] + 1
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = d
                q.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    return all(d >= 0 for d in _bfs(g, 0))


@dataclass(frozen=True)
class DistanceProfile:
    """Breadth-first layers around a source; layer j holds the nodes at hop distance j."""

    source: int
    dist: tuple[int, ...]
    layers: tuple[frozenset[int], ...]
    eccentricity: int


def distance_profile(g: Graph, source: int) -> DistanceProfile:
    """BFS layers and eccentricity of ``source``. Rejects disconnected graphs."""
    g.check_node(source)
    dist = _bfs(g, source)
    if min(dist) < 0:
        raise DisconnectedGraphError("distance profile needs a connected graph")
    ecc = max(dist)
    layers: list[set[int]] = [set() for _ in range(ecc + 1)]
    for v, d in enumerate(dist):
        layers[d].add(v)
    return DistanceProfile(source, tuple(dist), tuple(frozenset(s) for s in layers), ecc)


def diameter(g: Graph) -> int:
    """Maximum eccentricity over all sources. Rejects disconnected graphs."""
    best = 0
    for s in range(g.n):
        dist = _bfs(g, s)
        if min(dist) < 0:
            raise DisconnectedGraphError("diameter needs a connected graph")
        best = max(best, max(dist))
    return best


@dataclass(frozen=True)
class BipartiteResult:
    bipartite: bool
    coloring: tuple[int, ...] | None      # side 0/1 per node when bipartite
    odd_cycle: tuple[int, ...] | None     # odd closed walk (node sequence) otherwise

    def __bool__(self) -> bool:
        return self.bipartite


def _odd_cycle(parent: list[int], depth: list[int], u: int, v: int) -> tuple[int, ...]:
    # Climb both BFS-tree paths to the common ancestor. The two paths plus
    # the edge {u, v} close a cycle; its length is odd because u and v sit
    # at depths of equal parity.
    pu, pv = [u], [v]
    while depth[pu[-1]] > depth[pv[-1]]:
        pu.append(parent[pu[-1]])
    while depth[pv[-1]] > depth[pu[-1]]:
        pv.append(parent[pv[-1]])
    while pu[-1] != pv[-1]:
        pu.append(parent[pu[-1]])
        pv.append(parent[pv[-1]])
    return tuple(pu + pv[-2::-1])


def is_bipartite(g: Graph) -> BipartiteResult:
    """BFS 2-coloring over every component.

    Returns the coloring on success, or an odd cycle as counter-witness.
    This is the oracle that flooding-based classification is checked against,
    so it shares no code with the engines.
    """
    color = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        q = deque([root])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if color[w] < 0:
                    color[w] = color[u] ^ 1
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    q.append(w)
                elif color[w] == color[u]:
                    return BipartiteResult(False, None, _odd_cycle(parent, depth, u, w))
    return BipartiteResult(True, tuple(color), None)


@dataclass(frozen=True)
class EcReport:
    """Equidistantly-connected nodes: nodes adjacent to another node in the
    same breadth-first layer around ``source``."""

    source: int
    ec_nodes: frozenset[int]
    witness_edges: tuple[Edge, ...]


def ec_nodes(g: Graph, source: int) -> EcReport:
    """Exact set of equidistantly-connected nodes with their witness edges."""
    prof = distance_profile(g, source)
    wit = tuple(e for e in g.edges if prof.dist[e[0]] == prof.dist[e[1]])
    members = frozenset(v for e in wit for v in e)
    return EcReport(source, members, wit)


def parse_edge_list(text: str) -> Graph:
    """Parse "u v" lines into a Graph.

    Lines starting with '#' and blank lines are skipped. Numeric endpoint
    tokens are taken as literal node ids (n = max id + 1), which keeps
    render/parse round trips id-stable. If any endpoint is a bare word the
    whole file switches to label mode and ids are assigned in order of first
    appearance, with the labels retained.
    """
    rows: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) != 2:
            raise GraphError(f"line {lineno}: expected two endpoints, got {len(toks)}")
        rows.append((lineno, toks[0], toks[1]))
    if not rows:
        raise GraphError("empty edge list")

    numeric = all(a.isdigit() and b.isdigit() for _, a, b in rows)
    labels: tuple[str, ...] | None
    if numeric:
        ids = [(ln, int(a), int(b)) for ln, a, b in rows]
        n = max(max(u, v) for _, u, v in ids) + 1
        labels = None
    else:
        first_seen: dict[str, int] = {}
        ids = [(ln, first_seen.setdefault(a, len(first_seen)),
                first_seen.setdefault(b, len(first_seen))) for ln, a, b in rows]
        n = len(first_seen)
        labels = tuple(first_seen)

    edges = set()
    for ln, u, v in ids:
        if u == v:
            raise GraphError(f"line {ln}: self-loop")
        edges.add((u, v) if u < v else (v, u))
    return Graph(n=n, edges=tuple(sorted(edges)), labels=labels)


def render_edge_list(g: Graph) -> str:
    """Emit the edge-list format parse_edge_list reads, with '#' header comments."""
    lines = [f"# n={g.n} m={g.m}"]
    if g.labels is not None:
        lines.extend(f"# label {i} {name}" for i, name in enumerate(g.labels))
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def gen_named(kind: str, param: int | None = None) -> Graph:
    """Build a named graph: hypercube:k, petersen, cycle:n, path:n, complete:n."""
    if kind == "petersen":
        if param is not None:
            raise GraphError("petersen takes no parameter")
        outer = [(i, (i + 1) % 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        return Graph.from_edges(10, outer + inner + spokes)
    if param is None:
        raise GraphError(f"{kind} needs a parameter, e.g. {kind}:4")
    if kind == "hypercube":
        if param < 1:
            raise GraphError("hypercube needs k >= 1")
        n = 1 << param
        return Graph.from_edges(
            n, ((v, v | (1 << b)) for v in range(n) for b in range(param)
                if not v >> b & 1))
    if kind == "cycle":
        if param < 3:
            raise GraphError("cycle needs n >= 3")
        return Graph.from_edges(param, ((i, (i + 1) % param) for i in range(param)))
    if kind == "path":
        if param < 2:
            raise GraphError("path needs n >= 2")
        return Graph.from_edges(param, ((i, i + 1) for i in range(param - 1)))
    if kind == "complete":
        if param < 2:
            raise GraphError("complete needs n >= 2")
        return Graph.from_edges(param, combinations(range(param), 2))
    raise GraphError(f"unknown named graph {kind!r}")


def _splitmix64(state: int) -> tuple[int, int]:
    # One step of the splitmix64 stream: (next_state, 64-bit output).
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def gen_random(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) drawn from a splitmix64 stream.

    The stream state starts at ``seed`` (masked to 64 bits) and yields one
    draw per unordered pair in lexicographic order, so a given (n, p, seed)
    reproduces the same graph bit for bit on every platform.
    """
    if n < 1:
        raise GraphError(f"need n >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"need 0 <= p <= 1, got {p}")
    threshold = int(p * float(1 << 64))
    state = seed & _MASK64
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            state, draw = _splitmix64(state)
            if draw < threshold:
                edges.append((u, v))
    return Graph(n=n, edges=tuple(edges))
