"""Exponential-time end-vertex deciders for general connected graphs:
subset dynamic programming over bitmasks for MCS, level-wise tables for
BFS, and a memoized interval-splitting recursion for DFS.

All verdicts come with witness orderings (validated before being returned);
every routine enforces an explicit size budget and raises CapExceededError
beyond it.
"""

from __future__ import annotations

import math
import time
from typing import Iterator, Optional

from .graphs import CapExceededError, Graph, VertexOrdering, distances_from
from .reports import EndVertexReport
from .search import SearchKind, is_valid_ordering, run_search

DEFAULT_MCS_CAP = 22
DEFAULT_DFS_CAP = 18
DEFAULT_BFS_TABLE_CAP = 1 << 22


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_witness(g: Graph, kind: SearchKind, order: list[int], z: int) -> VertexOrdering:
    witness = VertexOrdering(order)
    if witness.end != z or not is_valid_ordering(g, kind, witness):
        raise AssertionError(f"reconstructed {kind.value} witness is invalid")
    return witness


# ---------------------------------------------------------------------------
# MCS: f(X) = "X is a visitable prefix set"; the recurrence never mentions z,
# so one forward reachability pass over subsets answers every z at once.
# ---------------------------------------------------------------------------


def _mcs_eligible_mask(masks: tuple[int, ...], n: int, visited: int) -> list[int]:
    best = -1
    out: list[int] = []
    for v in range(n):
        if visited >> v & 1:
            continue
        c = (masks[v] & visited).bit_count()
        if c > best:
            best = c
            out = [v]
        elif c == best:
            out.append(v)
    return out


def mcs_end_vertex_exact(
    g: Graph, z: int, cap: int = DEFAULT_MCS_CAP
) -> EndVertexReport:
    """Held-Karp-style reachability over visited sets avoiding z; yes iff
    the set V - {z} is reachable, with the forced final visit of z."""
    t0 = time.perf_counter()
    g.require_connected()
    g._check_vertex(z)
    if g.n > cap:
        raise CapExceededError(f"exact MCS refuses n={g.n} > cap={cap}")
    n = g.n
    masks = g.neighbor_masks()
    target = ((1 << n) - 1) ^ (1 << z)
    pred: dict[int, tuple[int, int]] = {}
    seen = {0}
    stack = [0]
    found = target == 0
    while stack and not found:
        cur = stack.pop()
        for v in _mcs_eligible_mask(masks, n, cur):
            if v == z:
                continue
            nxt = cur | 1 << v
            if nxt in seen:
                continue
            seen.add(nxt)
            pred[nxt] = (cur, v)
            if nxt == target:
                found = True
                break
            stack.append(nxt)
    if not found:
        return EndVertexReport(
            False, "exact-dp", timings={"total": time.perf_counter() - t0}
        )
    order: list[int] = []
    cur = target
    while cur:
        cur, v = pred[cur]
        order.append(v)
    order.reverse()
    order.append(z)
    witness = _check_witness(g, SearchKind.MCS, order, z)
    return EndVertexReport(
        True, "exact-dp", witness=witness,
        timings={"total": time.perf_counter() - t0},
    )


# ---------------------------------------------------------------------------
# BFS: per start vertex, level tables of (visited-prefix-of-level, pivot)
# pairs; the pivot is the first level vertex adjacent to the unvisited rest.
# ---------------------------------------------------------------------------


def _levels_from(g: Graph, s: int) -> Optional[list[list[int]]]:
    dist = distances_from(g, s)
    if any(math.isinf(d) for d in dist):
        return None
    ecc = int(max(dist))
    levels: list[list[int]] = [[] for _ in range(ecc + 1)]
    for v in range(g.n):
        levels[int(dist[v])].append(v)
    return levels


def bfs_table_budget(g: Graph, start: Optional[int] = None) -> int:
    """Upper bound on the level-table work for the BFS DP; inf for graphs too
    large to even probe."""
    if g.n > 26:
        return 1 << 60
    starts = range(g.n) if start is None else [start]
    worst = 0
    for s in starts:
        levels = _levels_from(g, s)
        if levels is None:
            return 1 << 60
        worst = max(worst, sum((1 << len(l)) * max(len(l), 1) for l in levels))
    return worst


def _bfs_try_start(
    g: Graph, s: int, z: int, table_cap: int
) -> Optional[list[int]]:
    """Run the level DP from start s; on acceptance return a concrete
    ordering ending at z, else None."""
    n = g.n
    masks = g.neighbor_masks()
    levels = _levels_from(g, s)
    if levels is None or len(levels) == 1:
        return None
    ell = len(levels) - 1
    if z not in levels[ell]:
        return None
    if sum((1 << len(l)) * max(len(l), 1) for l in levels) > table_cap:
        raise CapExceededError("BFS DP level tables beyond the configured cap")

    level_mask = [0] * (ell + 1)
    for i, lv in enumerate(levels):
        for v in lv:
            level_mask[i] |= 1 << v

    # tables[i]: set of true states (X_i, u_i); preds for reconstruction
    first = {
        (x, u): None
        for x in _strict_subsets(level_mask[1])
        for u in _bits(level_mask[1] & ~x)
    }
    tables: list[dict] = [None, first]  # type: ignore[list-item]
    pred: dict[tuple[int, int, int], tuple[int, int]] = {}
    for i in range(1, ell):
        nxt_mask = level_mask[i + 1]
        nxt: dict[tuple[int, int], None] = {}
        for (x_i, u_i) in tables[i]:
            a = 0
            for v in _bits(x_i):
                a |= masks[v]
            a &= nxt_mask
            b = masks[u_i] & nxt_mask
            spare = b & ~a
            for sub in _all_subsets(spare):
                x_next = a | sub
                for u_next in _bits(spare & ~sub):
                    key = (x_next, u_next)
                    if key not in nxt:
                        nxt[key] = None
                        pred[(i + 1, x_next, u_next)] = (x_i, u_i)
            if len(nxt) == (1 << nxt_mask.bit_count()) * nxt_mask.bit_count():
                break
        tables.append(nxt)
        if not nxt:
            return None
    goal = (level_mask[ell] & ~(1 << z), z)
    if goal not in tables[ell]:
        return None

    # walk the accepted chain back, then lay levels out in visit order
    chain: list[tuple[int, int]] = [goal]
    for i in range(ell, 1, -1):
        chain.append(pred[(i, chain[-1][0], chain[-1][1])])
    chain.reverse()
    order = [s]
    prev_order: list[int] = [s]
    for i in range(1, ell + 1):
        x_i, u_i = chain[i - 1]
        pos = {v: idx for idx, v in enumerate(prev_order)}
        def earliest(v: int) -> int:
            ns = [pos[u] for u in _bits(masks[v]) if u in pos]
            return min(ns) if ns else len(pos)
        members_x = sorted(_bits(x_i), key=lambda v: (earliest(v), v))
        rest = sorted(_bits(level_mask[i] & ~x_i & ~(1 << u_i)))
        this_level = members_x + [u_i] + rest
        order.extend(this_level)
        prev_order = this_level
    return order


def _all_subsets(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _strict_subsets(mask: int) -> Iterator[int]:
    for sub in _all_subsets(mask):
        if sub != mask:
            yield sub


def bfs_end_vertex_exact(
    g: Graph,
    z: int,
    start: Optional[int] = None,
    table_cap: int = DEFAULT_BFS_TABLE_CAP,
) -> EndVertexReport:
    """BFS end-vertex decision by the per-level subset DP, trying every start
    vertex (or just `start` when given)."""
    t0 = time.perf_counter()
    g.require_connected()
    g._check_vertex(z)
    if g.n == 1:
        ok = z == 0 and start in (None, 0)
        return EndVertexReport(
            ok, "exact-dp",
            witness=VertexOrdering((0,)) if ok else None,
            timings={"total": time.perf_counter() - t0},
        )
    starts = [s for s in range(g.n) if s != z] if start is None else [start]
    if start == z:
        starts = []
    for s in starts:
        order = _bfs_try_start(g, s, z, table_cap)
        if order is not None:
            witness = _check_witness(g, SearchKind.BFS, order, z)
            return EndVertexReport(
                True, "exact-dp", witness=witness,
                timings={"total": time.perf_counter() - t0},
            )
    return EndVertexReport(
        False, "exact-dp", timings={"total": time.perf_counter() - t0}
    )


# ---------------------------------------------------------------------------
# DFS: f(X, s, t) = "G[X] connected and some DFS of G[X] runs s -> t",
# split at the first visited neighbor v of t: a prefix part keeping s -> v
# and a suffix part Y that must swallow every remaining neighbor of t.
# ---------------------------------------------------------------------------


class _DfsTables:
    def __init__(self, g: Graph):
        self.g = g
        self.masks = g.neighbor_masks()
        self.memo: dict[tuple[int, int, int], bool] = {}
        self.choice: dict[tuple[int, int, int], tuple[int, int]] = {}
        self.conn: dict[int, bool] = {}

    def connected(self, mask: int) -> bool:
        cached = self.conn.get(mask)
        if cached is not None:
            return cached
        low = mask & -mask
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.masks[v]
            nxt &= mask & ~comp
            comp |= nxt
            frontier = nxt
        ok = comp == mask
        self.conn[mask] = ok
        return ok

    def f(self, mask: int, s: int, t: int) -> bool:
        if mask == 1 << s:
            return s == t
        if s == t:
            return False
        key = (mask, s, t)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        self.memo[key] = False  # cycle guard; subproblems strictly shrink anyway
        result = False
        if self.connected(mask):
            nt = self.masks[t] & mask & ~(1 << s)
            if nt == 0:
                # t's only in-X neighbor must be s for any DFS to exist
                result = (self.masks[t] & mask) == (1 << s) and False
            elif (self.masks[t] & mask) == (1 << s):
                result = True
            else:
                forced = (nt | 1 << t) & ~(1 << s)
                free = mask & ~forced & ~(1 << s) & ~(1 << t) & ~self.masks[t]
                for v in _bits(nt):
                    for sub in _all_subsets(free):
                        y = forced | sub
                        prefix = (mask & ~y) | 1 << v
                        if self.f(y, v, t) and self.f(prefix, s, v):
                            self.choice[key] = (v, y)
                            result = True
                            break
                    if result:
                        break
        self.memo[key] = result
        return result

    def witness(self, mask: int, s: int, t: int) -> list[int]:
        if mask == 1 << s:
            return [s]
        if (self.masks[t] & mask) == (1 << s) and (mask, s, t) not in self.choice:
            rest = mask & ~(1 << t)
            sub, old = self.g.induced(list(_bits(rest)))
            new_id = {v: i for i, v in enumerate(old)}
            inner = run_search(sub, SearchKind.DFS, start=new_id[s])
            return [old[v] for v in inner] + [t]
        v, y = self.choice[(mask, s, t)]
        prefix = (mask & ~y) | 1 << v
        return self.witness(prefix, s, v) + self.witness(y, v, t)[1:]


def dfs_end_vertex_exact(
    g: Graph, z: int, cap: int = DEFAULT_DFS_CAP
) -> EndVertexReport:
    """DFS end-vertex decision by the memoized split recursion; answers
    whether any start vertex reaches z last."""
    t0 = time.perf_counter()
    g.require_connected()
    g._check_vertex(z)
    if g.n > cap:
        raise CapExceededError(f"exact DFS refuses n={g.n} > cap={cap}")
    if g.n == 1:
        return EndVertexReport(
            True, "exact-dp", witness=VertexOrdering((0,)),
            timings={"total": time.perf_counter() - t0},
        )
    tables = _DfsTables(g)
    full = (1 << g.n) - 1
    for v in range(g.n):
        if v == z:
            continue
        if tables.f(full, v, z):
            order = tables.witness(full, v, z)
            witness = _check_witness(g, SearchKind.DFS, order, z)
            return EndVertexReport(
                True, "exact-dp", witness=witness,
                timings={
                    "total": time.perf_counter() - t0,
                    "subproblems": float(len(tables.memo)),
                },
            )
    return EndVertexReport(
        False, "exact-dp",
        timings={
            "total": time.perf_counter() - t0,
            "subproblems": float(len(tables.memo)),
        },
    )
