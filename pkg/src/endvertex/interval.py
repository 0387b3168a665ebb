"""Clique paths of interval graphs and the BFS end-vertex decider.

A clique path orders the maximal cliques so that the cliques containing any
one vertex are consecutive; such an arrangement exists exactly for interval
graphs.  Recognition here is desk-scale (chordality plus backtracking over
consecutive arrangements); graphs arriving as interval models skip
recognition entirely via an endpoint sweep.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .graphs import (
    CapExceededError,
    Graph,
    VertexOrdering,
    distances_from,
    is_chordal,
)
from .reports import EndVertexReport
from .search import SearchKind, is_valid_ordering


@dataclass(frozen=True)
class CliquePath:
    """Ordered maximal cliques K_1..K_p with per-vertex first/last indices
    (1-based), the interval-graph analogue of a clique tree."""

    cliques: tuple[frozenset[int], ...]
    lp: dict[int, int]
    rp: dict[int, int]

    @classmethod
    def from_cliques(cls, cliques: Sequence[frozenset[int]]) -> "CliquePath":
        lp: dict[int, int] = {}
        rp: dict[int, int] = {}
        count: dict[int, int] = {}
        for idx, k in enumerate(cliques, start=1):
            for v in k:
                lp.setdefault(v, idx)
                rp[v] = idx
                count[v] = count.get(v, 0) + 1
        for v, c in count.items():
            if rp[v] - lp[v] + 1 != c:
                raise ValueError(f"vertex {v} is not consecutive in the path")
        for a, b in zip(cliques, cliques[1:]):
            if not a & b:
                raise ValueError("adjacent cliques of a path must intersect")
        return cls(tuple(frozenset(k) for k in cliques), lp, rp)

    @property
    def length(self) -> int:
        return len(self.cliques)

    def reversed(self) -> "CliquePath":
        return CliquePath.from_cliques(tuple(reversed(self.cliques)))


def build_clique_path(g: Graph, node_cap: int = 1_000_000) -> Optional[CliquePath]:
    """Arrange the maximal cliques of g on a path, or None when impossible
    (i.e. g is not an interval graph).

    Backtracking over arrangements with two prunings: the next clique must
    intersect the current path end, and no vertex may reappear after being
    closed.  Exponential in the clique count in the worst case, guarded by
    `node_cap`.
    """
    from .chordal import maximal_cliques

    g.require_connected()
    peo = is_chordal(g)
    if peo is None:
        return None
    cliques = maximal_cliques(g, peo)
    p = len(cliques)
    if p == 1:
        return CliquePath.from_cliques(cliques)

    used = [False] * p
    seq: list[int] = []
    closed: set[int] = set()
    open_set: set[int] = set()
    nodes = 0

    def rec() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise CapExceededError(f"clique-path search beyond {node_cap} nodes")
        if len(seq) == p:
            return True
        last = cliques[seq[-1]] if seq else None
        for idx in range(p):
            if used[idx]:
                continue
            k = cliques[idx]
            if last is not None and not (k & last):
                continue
            if k & closed:
                continue
            newly_closed = open_set - k if seq else set()
            opened = k - open_set
            used[idx] = True
            seq.append(idx)
            closed.update(newly_closed)
            open_set.difference_update(newly_closed)
            open_set.update(opened)
            if rec():
                return True
            open_set.difference_update(opened)
            open_set.update(newly_closed)
            closed.difference_update(newly_closed)
            seq.pop()
            used[idx] = False
        return False

    if not rec():
        return None
    return CliquePath.from_cliques([cliques[i] for i in seq])


# ---------------------------------------------------------------------------
# interval models: "v lo hi" per line, '#' comments; closed intervals
# ---------------------------------------------------------------------------


def parse_interval_text(text: str) -> list[tuple[str, float, float]]:
    out = []
    seen = set()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"malformed interval line: {line!r}")
        label, lo, hi = parts[0], float(parts[1]), float(parts[2])
        if label in seen:
            raise ValueError(f"duplicate interval label {label!r}")
        if hi < lo:
            raise ValueError(f"empty interval for {label!r}")
        seen.add(label)
        out.append((label, lo, hi))
    if not out:
        raise ValueError("empty interval file")
    return out


def graph_from_intervals(
    intervals: Sequence[tuple[str, float, float]]
) -> tuple[Graph, CliquePath, list[str]]:
    """Overlap graph and clique path of a closed-interval model, by a single
    endpoint sweep; no recognition step.  Labels keep file order."""
    n = len(intervals)
    labels = [lab for lab, _, _ in intervals]
    events: dict[float, tuple[list[int], list[int]]] = {}
    for i, (_, lo, hi) in enumerate(intervals):
        events.setdefault(lo, ([], []))[0].append(i)
        events.setdefault(hi, ([], []))[1].append(i)
    edges: list[tuple[int, int]] = []
    active: set[int] = set()
    cliques: list[frozenset[int]] = []
    fresh = False
    for point in sorted(events):
        starts, stops = events[point]
        for i in starts:
            edges.extend((i, j) for j in active)
            active.add(i)
            fresh = True
        if stops and fresh:
            cliques.append(frozenset(active))
            fresh = False
        active.difference_update(stops)
    g = Graph(n, edges)
    return g, CliquePath.from_cliques(cliques), labels


# ---------------------------------------------------------------------------
# BFS end vertex
# ---------------------------------------------------------------------------


def _universal_vertices(g: Graph) -> list[int]:
    return [v for v in range(g.n) if g.degree(v) == g.n - 1]


def _procedure_detail(
    g: Graph, cp: CliquePath, u: int, w: int, z: int
) -> tuple[bool, int, Optional[int]]:
    """Literal steps 1-9 of the interval BFS procedure, deciding whether some
    BFS ordering ends at z with u visited before w.  Returns (answer,
    deciding step, selected start vertex or None)."""
    if cp.lp[u] != 1 or cp.rp[u] != 1:
        raise ValueError("u must be simplicial in the first clique")
    p = cp.length
    if cp.lp[w] != p or cp.rp[w] != p:
        raise ValueError("w must be simplicial in the last clique")
    if z == w:                                                    # step 1
        return True, 1, None
    if any(uv != z for uv in _universal_vertices(g)):             # step 2
        return True, 2, None
    dist_z = distances_from(g, z)
    dist_w = distances_from(g, w)
    dist_u = distances_from(g, u)
    xs = [                                                        # step 3
        x
        for x in range(g.n)
        if dist_z[x] == dist_w[x] and dist_z[x] >= dist_u[x]
    ]
    if not xs:                                                    # step 4
        return False, 4, None
    s = min(xs, key=lambda v: (cp.lp[v], v))                      # step 5
    if cp.rp[z] < cp.lp[s]:                                       # step 6
        return False, 6, s
    if s == u:                                                    # step 7
        return True, 7, s
    for v in sorted(g.neighbors(s)):                              # step 8
        if dist_u[v] == dist_u[s] - 1 and dist_z[v] > dist_u[v]:
            return True, 8, s
    return False, 9, s


def bfs_end_vertex_procedure(
    g: Graph, cp: CliquePath, u: int, w: int, z: int
) -> bool:
    """Whether a BFS ordering of g ends at z with u visited before w."""
    return _procedure_detail(g, cp, u, w, z)[0]


def _end_clique_simplicial(cp: CliquePath, idx: int) -> int:
    members = [v for v in cp.cliques[idx - 1] if cp.lp[v] == idx and cp.rp[v] == idx]
    if not members:
        raise ValueError("end clique has no simplicial vertex; not maximal?")
    return min(members)


def _bfs_levels(g: Graph, s: int) -> list[list[int]]:
    dist = distances_from(g, s)
    ecc = int(max(dist))
    levels: list[list[int]] = [[] for _ in range(ecc + 1)]
    for v in range(g.n):
        levels[int(dist[v])].append(v)
    return levels


def _witness_from_start(g: Graph, s: int, z: int) -> Optional[VertexOrdering]:
    """Proof construction for the s = u acceptance: walk a shortest path
    s = w_0, ..., w_q toward the far end, visit each level with w_i first,
    and push z to the very back."""
    dist_s = distances_from(g, s)
    if math.isinf(dist_s[z]):
        return None
    levels = _bfs_levels(g, s)
    if int(dist_s[z]) != len(levels) - 1:
        return None
    # w_i = lowest-id vertex of level i on some shortest path from s
    path = [s]
    for i in range(1, len(levels)):
        prev = path[-1]
        options = [v for v in levels[i] if v in g.neighbors(prev) and v != z]
        if not options:
            return None
        path.append(min(options))
    order: list[int] = []
    for i, level in enumerate(levels):
        first = path[i]
        rest = sorted(v for v in level if v != first and v != z)
        order.append(first)
        order.extend(rest)
    order.append(z)
    ordering = VertexOrdering(order)
    if is_valid_ordering(g, SearchKind.BFS, ordering) and ordering.end == z:
        return ordering
    return None


def _universal_witness(g: Graph, univ: int, z: int) -> Optional[VertexOrdering]:
    order = [univ] + sorted(set(range(g.n)) - {univ, z}) + [z]
    ordering = VertexOrdering(order)
    if is_valid_ordering(g, SearchKind.BFS, ordering):
        return ordering
    return None


def bfs_end_vertex_interval(
    g: Graph,
    z: int,
    cp: Optional[CliquePath] = None,
    witness_cap: int = 512,
) -> EndVertexReport:
    """BFS end-vertex decision on a connected interval graph: resolve
    universal vertices by the counting rule, otherwise call the path
    procedure on both orientations of the clique path.

    Witnesses: constructive for the universal and s=u cases; otherwise
    delegated to the exact BFS DP when its level tables fit `witness_cap`,
    else the report carries the verdict only.
    """
    t0 = time.perf_counter()
    g.require_connected()
    g._check_vertex(z)
    if cp is None:
        cp = build_clique_path(g)
        if cp is None:
            raise ValueError("input graph is not an interval graph")
    if g.n == 1:
        return EndVertexReport(
            True, "interval-bfs", witness=VertexOrdering((0,)),
            timings={"total": time.perf_counter() - t0},
        )

    def finish(decision: bool, witness: Optional[VertexOrdering]) -> EndVertexReport:
        return EndVertexReport(
            decision,
            "interval-bfs",
            witness=witness,
            timings={"total": time.perf_counter() - t0},
        )

    universals = _universal_vertices(g)
    if len(universals) >= 2:
        other = next(uv for uv in universals if uv != z)
        return finish(True, _universal_witness(g, other, z))
    if len(universals) == 1:
        if universals[0] == z:
            return finish(False, None)
        return finish(True, _universal_witness(g, universals[0], z))

    u = _end_clique_simplicial(cp, 1)
    w = _end_clique_simplicial(cp, cp.length)
    answer, step, s = _procedure_detail(g, cp, u, w, z)
    if not answer:
        rcp = cp.reversed()
        answer, step, s = _procedure_detail(g, rcp, w, u, z)
    if not answer:
        return finish(False, None)

    witness: Optional[VertexOrdering] = None
    if step == 7 and s is not None:
        witness = _witness_from_start(g, s, z)
    if witness is None:
        witness = _dp_witness(g, z, witness_cap)
    return finish(True, witness)


def _dp_witness(g: Graph, z: int, witness_cap: int) -> Optional[VertexOrdering]:
    from .exact import bfs_end_vertex_exact, bfs_table_budget

    if bfs_table_budget(g) > witness_cap:
        return None
    report = bfs_end_vertex_exact(g, z)
    return report.witness if report.decision else None
