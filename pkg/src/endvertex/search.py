"""Generic tie-breakable implementations of the six graph searches, ordering
validation by step-wise eligibility simulation, and the exhaustive
end-vertex oracle.

Operational eligible-set semantics (one state machine per search kind, used
by the runner, the validator, and the oracle alike):

* BFS   -- unvisited vertices minimizing the timestamp of their earliest
           visited neighbor; at the first step every vertex qualifies.
* DFS   -- unvisited neighbors of the most recently visited vertex that
           still has unvisited neighbors.
* LBFS  -- visited-neighbor timestamp lists compared ascending; the earlier
           timestamp wins at the first difference, a longer list wins on a
           shared prefix.
* LDFS  -- timestamp lists compared descending; the later timestamp wins at
           the first difference, longer wins on a prefix.
* MCS   -- maximum number of visited neighbors.
* MNS   -- inclusion-maximal visited-neighbor set.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Iterator, Optional, Sequence

from .graphs import CapExceededError, Graph, VertexOrdering

INF = float("inf")

DEFAULT_ORACLE_CAP = 10


class SearchKind(Enum):
    BFS = "bfs"
    DFS = "dfs"
    LBFS = "lbfs"
    LDFS = "ldfs"
    MCS = "mcs"
    MNS = "mns"

    @classmethod
    def parse(cls, name: str) -> "SearchKind":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown search kind {name!r}") from None


# ---------------------------------------------------------------------------
# tie breakers
# ---------------------------------------------------------------------------


class TieBreaker:
    """Resolves the choice among eligible vertices; base class picks the
    lowest id ("arbitrary" rule)."""

    def pick(self, candidates: Sequence[int], step: int) -> int:
        return min(candidates)


class LowestIdTie(TieBreaker):
    pass


class PriorityTie(TieBreaker):
    """Break ties by a prior ordering: direction 'max' realizes the +-rule
    (visit the eligible vertex latest in the prior run), 'min' the opposite."""

    def __init__(self, ordering: VertexOrdering, direction: str = "max"):
        if direction not in ("max", "min"):
            raise ValueError("direction must be 'max' or 'min'")
        self.ordering = ordering
        self.direction = direction

    def pick(self, candidates: Sequence[int], step: int) -> int:
        key = self.ordering.position
        if self.direction == "max":
            return max(candidates, key=key)
        return min(candidates, key=key)


class FixedFirstTie(TieBreaker):
    """Force a particular start vertex; later ties fall back to lowest id."""

    def __init__(self, vertex: int):
        self.vertex = vertex

    def pick(self, candidates: Sequence[int], step: int) -> int:
        if step == 0:
            if self.vertex not in candidates:
                raise ValueError(f"vertex {self.vertex} not eligible first")
            return self.vertex
        return min(candidates)


class LayerTie(TieBreaker):
    """Prefer vertices of earlier layers, lowest id inside a layer.  Used by
    the constructive chordal LDFS witness."""

    def __init__(self, layer_of: dict[int, int]):
        self.layer_of = layer_of

    def pick(self, candidates: Sequence[int], step: int) -> int:
        return min(candidates, key=lambda v: (self.layer_of[v], v))


# ---------------------------------------------------------------------------
# per-kind label state
# ---------------------------------------------------------------------------


class _State:
    """Incremental eligible-set state; advance/retreat must be inverses."""

    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        self.visited = [False] * g.n
        self.step = 0

    def candidates(self) -> list[int]:
        raise NotImplementedError

    def advance(self, v: int) -> None:
        raise NotImplementedError

    def retreat(self, v: int) -> None:
        raise NotImplementedError


class _McsState(_State):
    def __init__(self, g: Graph):
        super().__init__(g)
        self.counts = [0] * g.n

    def candidates(self) -> list[int]:
        visited = self.visited
        counts = self.counts
        best = -1
        out: list[int] = []
        for v in range(self.n):
            if visited[v]:
                continue
            c = counts[v]
            if c > best:
                best = c
                out = [v]
            elif c == best:
                out.append(v)
        return out

    def advance(self, v: int) -> None:
        self.visited[v] = True
        self.step += 1
        counts = self.counts
        visited = self.visited
        for u in self.g.neighbors(v):
            if not visited[u]:
                counts[u] += 1

    def retreat(self, v: int) -> None:
        self.visited[v] = False
        self.step -= 1
        counts = self.counts
        visited = self.visited
        for u in self.g.neighbors(v):
            if not visited[u]:
                counts[u] -= 1


class _BfsState(_State):
    def __init__(self, g: Graph):
        super().__init__(g)
        self.earliest: list[float] = [INF] * g.n
        self._undo: list[list[tuple[int, float]]] = []

    def candidates(self) -> list[int]:
        best = INF
        out: list[int] = []
        for v in range(self.n):
            if self.visited[v]:
                continue
            e = self.earliest[v]
            if e < best:
                best = e
                out = [v]
            elif e == best:
                out.append(v)
        return out

    def advance(self, v: int) -> None:
        self.visited[v] = True
        self.step += 1
        t = self.step
        log: list[tuple[int, float]] = []
        for u in self.g.neighbors(v):
            if not self.visited[u] and self.earliest[u] == INF:
                log.append((u, self.earliest[u]))
                self.earliest[u] = t
        self._undo.append(log)

    def retreat(self, v: int) -> None:
        for u, old in self._undo.pop():
            self.earliest[u] = old
        self.visited[v] = False
        self.step -= 1


class _DfsState(_State):
    def __init__(self, g: Graph):
        super().__init__(g)
        self.prefix: list[int] = []

    def candidates(self) -> list[int]:
        if not self.prefix:
            return list(range(self.n))
        visited = self.visited
        for v in reversed(self.prefix):
            un = [u for u in self.g.neighbors(v) if not visited[u]]
            if un:
                return un
        return []

    def advance(self, v: int) -> None:
        self.visited[v] = True
        self.step += 1
        self.prefix.append(v)

    def retreat(self, v: int) -> None:
        self.visited[v] = False
        self.step -= 1
        self.prefix.pop()


class _LexState(_State):
    """Shared machinery for LBFS/LDFS: per-vertex visited-neighbor timestamp
    lists, appended in visit order (hence ascending)."""

    descending = False

    def __init__(self, g: Graph):
        super().__init__(g)
        self.labels: list[list[int]] = [[] for _ in range(g.n)]

    def _key(self, v: int) -> tuple[int, ...]:
        lab = self.labels[v]
        if self.descending:
            return tuple(reversed(lab))
        # ascending comparison with "earlier wins": negate so that the
        # standard tuple order realizes it, with longer-on-prefix winning
        return tuple(-t for t in lab)

    def candidates(self) -> list[int]:
        best: Optional[tuple[int, ...]] = None
        out: list[int] = []
        for v in range(self.n):
            if self.visited[v]:
                continue
            k = self._key(v)
            if best is None or k > best:
                best = k
                out = [v]
            elif k == best:
                out.append(v)
        return out

    def advance(self, v: int) -> None:
        self.visited[v] = True
        self.step += 1
        t = self.step
        for u in self.g.neighbors(v):
            if not self.visited[u]:
                self.labels[u].append(t)

    def retreat(self, v: int) -> None:
        self.visited[v] = False
        self.step -= 1
        for u in self.g.neighbors(v):
            if not self.visited[u] and self.labels[u] and self.labels[u][-1] == self.step + 1:
                self.labels[u].pop()


class _LbfsState(_LexState):
    descending = False


class _LdfsState(_LexState):
    descending = True


class _MnsState(_State):
    def __init__(self, g: Graph):
        super().__init__(g)
        self.masks = [0] * g.n  # visited-neighbor bitmask per vertex

    def candidates(self) -> list[int]:
        unvisited = [v for v in range(self.n) if not self.visited[v]]
        out = []
        for v in unvisited:
            mv = self.masks[v]
            if not any(
                mv != self.masks[u] and mv & self.masks[u] == mv for u in unvisited
            ):
                out.append(v)
        return out

    def advance(self, v: int) -> None:
        self.visited[v] = True
        self.step += 1
        bit = 1 << v
        for u in self.g.neighbors(v):
            if not self.visited[u]:
                self.masks[u] |= bit

    def retreat(self, v: int) -> None:
        self.visited[v] = False
        self.step -= 1
        bit = 1 << v
        for u in self.g.neighbors(v):
            if not self.visited[u]:
                self.masks[u] &= ~bit


_STATE_CLASSES = {
    SearchKind.BFS: _BfsState,
    SearchKind.DFS: _DfsState,
    SearchKind.LBFS: _LbfsState,
    SearchKind.LDFS: _LdfsState,
    SearchKind.MCS: _McsState,
    SearchKind.MNS: _MnsState,
}


def _make_state(g: Graph, kind: SearchKind) -> _State:
    return _STATE_CLASSES[kind](g)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def eligible(g: Graph, kind: SearchKind, prefix: Iterable[int]) -> frozenset[int]:
    """The exact set of vertices that may legally be visited next, given a
    valid partial ordering `prefix` (validity is the caller's duty)."""
    state = _make_state(g, kind)
    for v in prefix:
        g._check_vertex(v)
        state.advance(v)
    return frozenset(state.candidates())


def run_search(
    g: Graph,
    kind: SearchKind,
    tie: Optional[TieBreaker] = None,
    start: Optional[int] = None,
) -> VertexOrdering:
    """Run one search to completion, resolving ties with `tie` (lowest id by
    default).  A given `start` is forced into position 1."""
    g.require_connected()
    if start is not None:
        g._check_vertex(start)
    if tie is None:
        tie = LowestIdTie()
    state = _make_state(g, kind)
    order: list[int] = []
    for step in range(g.n):
        cands = state.candidates()
        if not cands:
            raise RuntimeError("search ran out of eligible vertices")
        if step == 0 and start is not None:
            v = start
        else:
            v = tie.pick(cands, step)
        if v not in cands:
            raise ValueError(f"chosen vertex {v} is not eligible at step {step}")
        state.advance(v)
        order.append(v)
    return VertexOrdering(order)


def is_valid_ordering(g: Graph, kind: SearchKind, sigma: VertexOrdering) -> bool:
    """True iff every step of sigma picks an eligible vertex."""
    if len(sigma) != g.n:
        raise ValueError("ordering does not cover the graph")
    state = _make_state(g, kind)
    for v in sigma:
        if v not in state.candidates():
            return False
        state.advance(v)
    return True


def enumerate_orderings(
    g: Graph,
    kind: SearchKind,
    start: Optional[int] = None,
    limit: Optional[int] = None,
) -> Iterator[VertexOrdering]:
    """Yield every valid ordering of the kind by backtracking over eligible
    sets.  Exponential; guard with `limit` when in doubt."""
    g.require_connected()
    state = _make_state(g, kind)
    prefix: list[int] = []
    produced = 0

    def rec() -> Iterator[VertexOrdering]:
        nonlocal produced
        if len(prefix) == g.n:
            produced += 1
            if limit is not None and produced > limit:
                raise CapExceededError(f"more than {limit} orderings")
            yield VertexOrdering(prefix)
            return
        cands = state.candidates()
        if not prefix and start is not None:
            cands = [start] if start in cands else []
        for v in sorted(cands):
            state.advance(v)
            prefix.append(v)
            yield from rec()
            prefix.pop()
            state.retreat(v)

    yield from rec()


def _oblivious_end_vertices(
    g: Graph, kind: SearchKind, start: Optional[int]
) -> frozenset[int]:
    """Subset-DP oracle for the oblivious searches (MCS, MNS): eligibility
    depends only on the visited set, so reachable visited-sets suffice."""
    n = g.n
    masks = g.neighbor_masks()
    full = (1 << n) - 1

    if kind is SearchKind.MCS:

        def elig(mask: int) -> list[int]:
            best = -1
            out: list[int] = []
            for v in range(n):
                if mask >> v & 1:
                    continue
                c = (masks[v] & mask).bit_count()
                if c > best:
                    best = c
                    out = [v]
                elif c == best:
                    out.append(v)
            return out

    else:

        def elig(mask: int) -> list[int]:
            unvisited = [v for v in range(n) if not mask >> v & 1]
            out = []
            for v in unvisited:
                mv = masks[v] & mask
                if not any(
                    mv != masks[u] & mask and mv & masks[u] & mask == mv
                    for u in unvisited
                ):
                    out.append(v)
            return out

    if start is None:
        seeds = [0]
    else:
        seeds = [1 << start] if start in elig(0) else []
    reachable = set(seeds)
    stack = list(seeds)
    ends = set()
    while stack:
        mask = stack.pop()
        if mask.bit_count() == n - 1:
            # the last unvisited vertex is always eligible on its own
            ends.add((full ^ mask).bit_length() - 1)
            continue
        for v in elig(mask):
            nxt = mask | 1 << v
            if nxt not in reachable:
                reachable.add(nxt)
                stack.append(nxt)
    if n == 1:
        ends = {0} if (start in (None, 0)) else set()
    return frozenset(ends)


def end_vertices_oracle(
    g: Graph,
    kind: SearchKind,
    start: Optional[int] = None,
    cap: int = DEFAULT_ORACLE_CAP,
) -> frozenset[int]:
    """Exactly the vertices ending at least one valid ordering of the kind;
    optionally restricted to orderings with a fixed start vertex.

    MCS and MNS go through visited-set memoization; the other kinds
    backtrack over the ordering tree, hence the size cap.
    """
    g.require_connected()
    if g.n > cap:
        raise CapExceededError(
            f"oracle refuses n={g.n} > cap={cap}; raise the cap explicitly"
        )
    if g.n == 0:
        return frozenset()
    if kind in (SearchKind.MCS, SearchKind.MNS):
        return _oblivious_end_vertices(g, kind, start)

    state = _make_state(g, kind)
    ends: set[int] = set()
    n = g.n
    # with a forced start (n >= 2) the start is never last, so at most n-1
    # vertices can be ends; stop exploring once all of them are found
    max_ends = n if start is None or n == 1 else n - 1

    def rec(depth: int, last: int) -> bool:
        if depth == n:
            ends.add(last)
            return len(ends) >= max_ends
        cands = state.candidates()
        if depth == 0 and start is not None:
            cands = [start] if start in cands else []
        for v in sorted(cands):
            state.advance(v)
            if rec(depth + 1, v):
                state.retreat(v)
                return True
            state.retreat(v)
        return False

    rec(0, -1)
    return frozenset(ends)
