"""Undirected simple graphs over dense integer vertices, plus the structural
predicates (simplicial vertices, twins, separators, distances, chordality)
that the end-vertex algorithms are built on.

Graphs are immutable after construction; all functions here are pure.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable, Iterator, Optional


class DisconnectedGraphError(ValueError):
    """The operation requires a connected graph."""


class NotChordalError(ValueError):
    """The operation requires a chordal input graph."""


class CapExceededError(RuntimeError):
    """An exponential routine refused to run beyond its configured budget."""


class Graph:
    """Simple undirected graph on vertices 0..n-1 with set-based adjacency."""

    __slots__ = ("n", "_adj", "_edges", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        norm: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            a, b = (u, v) if u < v else (v, u)
            norm.add((a, b))
            adj[a].add(b)
            adj[b].add(a)
        self.n = n
        self._edges = frozenset(norm)
        self._adj = tuple(frozenset(s) for s in adj)
        self._masks: Optional[tuple[int, ...]] = None

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return self._adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self._adj[v] | {v}

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self._adj[u]

    def neighbor_masks(self) -> tuple[int, ...]:
        """Per-vertex adjacency as bitmasks, for the subset-DP layers."""
        if self._masks is None:
            masks = []
            for v in range(self.n):
                m = 0
                for u in self._adj[v]:
                    m |= 1 << u
                masks.append(m)
            self._masks = tuple(masks)
        return self._masks

    def complement(self) -> "Graph":
        missing = [
            (u, v)
            for u, v in combinations(range(self.n), 2)
            if v not in self._adj[u]
        ]
        return Graph(self.n, missing)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on `vertices`; returns it with the old-id list
        (new id i corresponds to old id result[i])."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = [
            (index[u], index[v])
            for u, v in self._edges
            if u in index and v in index
        ]
        return Graph(len(old), edges), old

    def components(self) -> list[frozenset[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = {s}
            seen[s] = True
            stack = [s]
            while stack:
                v = stack.pop()
                for u in self._adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        comp.add(u)
                        stack.append(u)
            out.append(frozenset(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def require_connected(self) -> None:
        if not self.is_connected():
            raise DisconnectedGraphError("input graph is not connected")

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self._edges)})"


class VertexOrdering:
    """A bijection V -> {1..n}, stored as the visit sequence."""

    __slots__ = ("seq", "_pos")

    def __init__(self, seq: Iterable[int]):
        s = tuple(seq)
        if sorted(s) != list(range(len(s))):
            raise ValueError("ordering is not a bijection over 0..n-1")
        self.seq = s
        self._pos = {v: i + 1 for i, v in enumerate(s)}

    def position(self, v: int) -> int:
        """Rank of v, in 1..n."""
        return self._pos[v]

    def vertex_at(self, rank: int) -> int:
        """Inverse map: the vertex visited at `rank` (1-based)."""
        return self.seq[rank - 1]

    @property
    def end(self) -> int:
        if not self.seq:
            raise ValueError("empty ordering has no end vertex")
        return self.seq[-1]

    def reversed(self) -> "VertexOrdering":
        return VertexOrdering(reversed(self.seq))

    def __len__(self) -> int:
        return len(self.seq)

    def __iter__(self) -> Iterator[int]:
        return iter(self.seq)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VertexOrdering) and self.seq == other.seq

    def __hash__(self) -> int:
        return hash(self.seq)

    def __repr__(self) -> str:
        return f"VertexOrdering({list(self.seq)})"


def is_simplicial(g: Graph, v: int) -> bool:
    """True iff the closed neighborhood of v induces a complete graph."""
    nbrs = g.neighbors(v)
    return all(b in g.neighbors(a) for a, b in combinations(sorted(nbrs), 2))


def twin_class(g: Graph, v: int) -> tuple[frozenset[int], frozenset[int]]:
    """All true twins of v (closed neighborhoods equal) and all false twins
    (open neighborhoods equal).  The two sets are disjoint since true twins
    are adjacent and false twins are not."""
    g._check_vertex(v)
    closed_v = g.closed_neighborhood(v)
    open_v = g.neighbors(v)
    true_twins = set()
    false_twins = set()
    for u in range(g.n):
        if u == v:
            continue
        if g.closed_neighborhood(u) == closed_v:
            true_twins.add(u)
        elif g.neighbors(u) == open_v:
            false_twins.add(u)
    return frozenset(true_twins), frozenset(false_twins)


def _components_without(g: Graph, removed: frozenset[int]) -> list[set[int]]:
    seen = set(removed)
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        stack = [s]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    comp.add(u)
                    stack.append(u)
        comps.append(comp)
    return comps


def is_minimal_separator(g: Graph, s: Iterable[int]) -> bool:
    """Minimal-separator test via the full-component criterion: s is a
    minimal separator iff at least two components of G - s have
    neighborhood exactly s."""
    sep = frozenset(s)
    for v in sep:
        g._check_vertex(v)
    full = 0
    for comp in _components_without(g, sep):
        boundary = set()
        for v in comp:
            boundary.update(g.neighbors(v) & sep)
        if boundary == sep:
            full += 1
            if full >= 2:
                return True
    return False


def distances_from(g: Graph, s: int) -> list[float]:
    """Hop distances from s; unreachable vertices get math.inf."""
    g._check_vertex(s)
    dist: list[float] = [math.inf] * g.n
    dist[s] = 0
    frontier = [s]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for u in g.neighbors(v):
                if dist[u] == math.inf:
                    dist[u] = d
                    nxt.append(u)
        frontier = nxt
    return dist


def has_induced_cycle_at_least(g: Graph, k: int) -> bool:
    """True iff g contains an induced (chordless) cycle on >= k vertices.

    Backtracking over induced paths anchored at their minimum vertex, with
    chord pruning.  Exponential in the worst case; meant for desk-scale n.
    """
    if k < 4:
        raise ValueError("meaningful only for k >= 4")
    adj = [g.neighbors(v) for v in range(g.n)]

    def extend(anchor: int, path: list[int], on_path: set[int]) -> bool:
        last = path[-1]
        interior = on_path - {last, anchor}
        for nxt in sorted(adj[last]):
            if nxt <= anchor or nxt in on_path:
                continue
            # induced-path condition: nxt sees only the current path end
            if adj[nxt] & interior:
                continue
            closes = anchor in adj[nxt]
            if closes and len(path) + 1 >= k:
                return True
            if not closes:
                path.append(nxt)
                on_path.add(nxt)
                if extend(anchor, path, on_path):
                    return True
                on_path.discard(nxt)
                path.pop()
        return False

    for a in range(g.n):
        for b in sorted(adj[a]):
            if b <= a:
                continue
            if extend(a, [a, b], {a, b}):
                return True
    return False


def _mcs_order(g: Graph) -> list[int]:
    """One maximum-cardinality-search visit order, lowest id on ties."""
    n = g.n
    counts = [0] * n
    visited = [False] * n
    order = []
    remaining = list(range(n))
    for _ in range(n):
        best = -1
        pick = -1
        for v in remaining:
            if counts[v] > best:
                best = counts[v]
                pick = v
        order.append(pick)
        visited[pick] = True
        remaining.remove(pick)
        for u in g.neighbors(pick):
            if not visited[u]:
                counts[u] += 1
    return order


def check_elimination_ordering(g: Graph, elim: Iterable[int]) -> bool:
    """True iff `elim` is a perfect elimination ordering of g: each vertex is
    simplicial among the vertices eliminated at or after it."""
    order = list(elim)
    if sorted(order) != list(range(g.n)):
        raise ValueError("elimination order is not a bijection")
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in g.neighbors(v) if pos[u] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        rest = set(later) - {parent}
        if not rest <= g.neighbors(parent):
            return False
    return True


def is_chordal(g: Graph) -> Optional[VertexOrdering]:
    """Chordality test via MCS: the reversal of an MCS ordering is a perfect
    elimination ordering iff the graph is chordal.  Returns that PEO
    (as the elimination order) on success, None otherwise.

    Works componentwise, so disconnected inputs are fine here; the
    end-vertex entry points enforce connectivity themselves.
    """
    if g.n == 0:
        return VertexOrdering(())
    elim = list(reversed(_mcs_order(g)))
    if check_elimination_ordering(g, elim):
        return VertexOrdering(elim)
    return None


# ---------------------------------------------------------------------------
# graph text format
#
# Dense format: first non-comment line "n m", then m lines "u v" with
# 0 <= u < v < n.  Named variant: every non-comment line is an edge between
# two labels; ids are assigned in order of first appearance.  '#' starts a
# comment line in both.
# ---------------------------------------------------------------------------


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_graph_text(text: str) -> tuple[Graph, list[str]]:
    """Parse the dense or the named edge-list format.

    Returns the graph and a label list mapping each dense id back to the
    token used in the file (for the dense format this is just the id as a
    string).
    """
    lines = _content_lines(text)
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    dense = False
    if len(head) == 2:
        try:
            n, m = int(head[0]), int(head[1])
            dense = True
        except ValueError:
            dense = False
    if dense:
        if len(lines) - 1 != m:
            raise ValueError(
                f"header promises {m} edges but file has {len(lines) - 1}"
            )
        edges = []
        for line in lines[1:]:
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"malformed edge line: {line!r}")
            u, v = int(parts[0]), int(parts[1])
            if not (0 <= u < v < n):
                raise ValueError(f"edge {u} {v} violates 0 <= u < v < n={n}")
            edges.append((u, v))
        return Graph(n, edges), [str(v) for v in range(n)]
    ids: dict[str, int] = {}
    edges = []
    for line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line: {line!r}")
        a, b = parts
        if a == b:
            raise ValueError(f"self-loop at {a!r}")
        for tok in (a, b):
            if tok not in ids:
                ids[tok] = len(ids)
        edges.append((ids[a], ids[b]))
    labels = [None] * len(ids)
    for tok, i in ids.items():
        labels[i] = tok
    return Graph(len(ids), edges), list(labels)


def format_graph_text(g: Graph, labels: Optional[list[str]] = None) -> str:
    """Serialize a graph; dense format when labels is None, named otherwise."""
    edges = sorted(g.edges)
    if labels is None:
        lines = [f"{g.n} {len(edges)}"]
        lines += [f"{u} {v}" for u, v in edges]
    else:
        if len(labels) != g.n:
            raise ValueError("label list length mismatch")
        lines = [f"{labels[u]} {labels[v]}" for u, v in edges]
    return "\n".join(lines) + "\n"
