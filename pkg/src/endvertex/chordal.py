"""Weighted clique graphs of chordal graphs, Prim orderings, critical edges,
separator-chain certificates, and the polynomial end-vertex deciders for
MCS, LDFS, and MNS on chordal graphs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional

from .graphs import (
    CapExceededError,
    Graph,
    NotChordalError,
    VertexOrdering,
    check_elimination_ordering,
    is_chordal,
    is_simplicial,
    twin_class,
)
from .reports import EndVertexReport
from .search import (
    LayerTie,
    PriorityTie,
    SearchKind,
    run_search,
)

Separator = FrozenSet[int]


@dataclass(frozen=True)
class SeparatorChain:
    """Certificate behind a yes answer for MCS end vertices: the separators
    crossed last-to-first by a search ending at z, with one witness
    clique-graph edge per separator."""

    separators: tuple[Separator, ...]
    edge_path: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.separators) != len(self.edge_path):
            raise ValueError("one witness edge per separator required")
        sizes = [len(s) for s in self.separators]
        if sizes != sorted(sizes):
            raise ValueError("separator sizes must be non-decreasing")
        for a, b in zip(self.separators, self.separators[1:]):
            if a == b:
                raise ValueError("consecutive separators must differ")

    def __len__(self) -> int:
        return len(self.separators)


class WeightedCliqueGraph:
    """Maximal cliques of a chordal graph with labeled, weighted edges.

    An edge joins cliques whose intersection is a minimal separator; its
    label is that intersection, its weight the label size.  `active`
    restricts the view to a subset of cliques (used while peeling
    z-components); cliques are shared across restricted views.
    """

    def __init__(
        self,
        cliques: tuple[frozenset[int], ...],
        edges: dict[tuple[int, int], Separator],
        active: Optional[frozenset[int]] = None,
    ):
        self.cliques = cliques
        self.edges = edges
        self.active = (
            frozenset(range(len(cliques))) if active is None else active
        )
        for (i, j), label in edges.items():
            if not label:
                raise ValueError("edge labels must be nonempty")
            if label != cliques[i] & cliques[j]:
                raise ValueError("label must equal the clique intersection")

    def weight(self, e: tuple[int, int]) -> int:
        return len(self.edges[e])

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self, i: int) -> set[int]:
        out = set()
        for a, b in self.edges:
            if a == i:
                out.add(b)
            elif b == i:
                out.add(a)
        return out

    def minus(self, s: Iterable[int]) -> "WeightedCliqueGraph":
        """Drop every edge whose label is a subset of s (the paper's
        C(G) - S); cliques and the active view stay unchanged."""
        sep = frozenset(s)
        kept = {e: lab for e, lab in self.edges.items() if not lab <= sep}
        return WeightedCliqueGraph(self.cliques, kept, self.active)

    def restrict(self, indices: Iterable[int]) -> "WeightedCliqueGraph":
        live = frozenset(indices)
        kept = {
            (i, j): lab
            for (i, j), lab in self.edges.items()
            if i in live and j in live
        }
        return WeightedCliqueGraph(self.cliques, kept, live)

    def component(self, i: int) -> frozenset[int]:
        """Active cliques connected to clique i."""
        if i not in self.active:
            raise ValueError(f"clique {i} is not active")
        adj: dict[int, set[int]] = {k: set() for k in self.active}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        comp = {i}
        stack = [i]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        return frozenset(comp)

    def is_connected(self) -> bool:
        if not self.active:
            return True
        return self.component(min(self.active)) == self.active

    def clique_index_of(self, clique: frozenset[int]) -> int:
        for i, k in enumerate(self.cliques):
            if k == clique:
                return i
        raise ValueError(f"{sorted(clique)} is not a maximal clique here")


def maximal_cliques(g: Graph, peo: VertexOrdering) -> list[frozenset[int]]:
    """All maximal cliques via the standard sweep along a perfect elimination
    ordering: each eliminated vertex together with its later neighbors,
    filtered for maximality."""
    if not check_elimination_ordering(g, peo.seq):
        raise NotChordalError("ordering is not a perfect elimination ordering")
    pos = {v: i for i, v in enumerate(peo.seq)}
    raw = []
    for v in peo.seq:
        raw.append(frozenset({v} | {u for u in g.neighbors(v) if pos[u] > pos[v]}))
    raw = sorted(set(raw), key=len, reverse=True)
    cliques: list[frozenset[int]] = []
    for cand in raw:
        if not any(cand < kept for kept in cliques):
            cliques.append(cand)
    return sorted(cliques, key=sorted)


def _reachable_avoiding(g: Graph, src: int, banned: frozenset[int]) -> set[int]:
    seen = {src}
    stack = [src]
    while stack:
        v = stack.pop()
        for u in g.neighbors(v):
            if u not in seen and u not in banned:
                seen.add(u)
                stack.append(u)
    return seen


def build_clique_graph(g: Graph) -> WeightedCliqueGraph:
    """The weighted clique graph C(G) of a connected chordal graph.

    Pairs of cliques are joined when their intersection separates their
    private sides; since each side is a clique this two-sided component
    check is equivalent to the quantified all-pairs definition.
    """
    g.require_connected()
    peo = is_chordal(g)
    if peo is None:
        raise NotChordalError("clique graph requires a chordal graph")
    cliques = tuple(maximal_cliques(g, peo))
    edges: dict[tuple[int, int], Separator] = {}
    for i in range(len(cliques)):
        for j in range(i + 1, len(cliques)):
            inter = cliques[i] & cliques[j]
            if not inter:
                continue
            x = min(cliques[i] - cliques[j])
            y = min(cliques[j] - cliques[i])
            if y not in _reachable_avoiding(g, x, inter):
                edges[(i, j)] = inter
    return WeightedCliqueGraph(cliques, edges)


def minimal_separators_of(cg: WeightedCliqueGraph) -> frozenset[Separator]:
    """Deduplicated edge labels; by the clique-graph characterization these
    are exactly the minimal separators of the source graph."""
    return frozenset(cg.edges.values())


def clique_graph_minus(
    cg: WeightedCliqueGraph, s: Iterable[int]
) -> WeightedCliqueGraph:
    return cg.minus(s)


def critical_edges(cg: WeightedCliqueGraph, k: int) -> set[tuple[int, int]]:
    """Minimum-weight edges reachable from clique k along strictly heavier
    edges: remove every minimum-weight edge, then keep those with at least
    one end in k's remaining component."""
    if not cg.edges:
        return set()
    wmin = min(len(lab) for lab in cg.edges.values())
    heavy = {e: lab for e, lab in cg.edges.items() if len(lab) > wmin}
    comp = WeightedCliqueGraph(cg.cliques, heavy, cg.active).component(k)
    return {
        e
        for e, lab in cg.edges.items()
        if len(lab) == wmin and (e[0] in comp or e[1] in comp)
    }


def prim_orderings_oracle(
    cg: WeightedCliqueGraph, cap: int = 100_000
) -> set[tuple[int, ...]]:
    """Every visit order of maximal cliques realizable by Prim's
    maximum-spanning-tree growth on the clique graph.  Verification-only;
    backtracking over maximum-weight crossing edges, capped."""
    indices = sorted(cg.active)
    if len(indices) <= 1:
        return {tuple(indices)}
    if not cg.is_connected():
        raise ValueError("Prim orderings need a connected clique graph")
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in indices}
    for (a, b), lab in cg.edges.items():
        adj[a].append((b, len(lab)))
        adj[b].append((a, len(lab)))
    out: set[tuple[int, ...]] = set()
    seq: list[int] = []

    def rec(in_tree: set[int]) -> None:
        if len(out) > cap:
            raise CapExceededError(f"more than {cap} Prim orderings")
        if len(seq) == len(indices):
            out.add(tuple(seq))
            return
        best = -1
        nxt: set[int] = set()
        for v in in_tree:
            for u, w in adj[v]:
                if u in in_tree:
                    continue
                if w > best:
                    best = w
                    nxt = {u}
                elif w == best:
                    nxt.add(u)
        for u in sorted(nxt):
            seq.append(u)
            in_tree.add(u)
            rec(in_tree)
            in_tree.discard(u)
            seq.pop()

    for startc in indices:
        seq.append(startc)
        rec({startc})
        seq.pop()
    return out


def orderings_generated_by(
    g: Graph, cg: WeightedCliqueGraph, pi: tuple[int, ...]
) -> set[tuple[int, ...]]:
    """All vertex orderings generated by a clique ordering pi: vertices
    grouped by the first clique of pi containing them, groups in pi order,
    free permutation inside each group."""
    from itertools import permutations

    seen: set[int] = set()
    groups: list[list[int]] = []
    for idx in pi:
        fresh = sorted(cg.cliques[idx] - seen)
        seen.update(fresh)
        if fresh:
            groups.append(fresh)
    if len(seen) != g.n:
        raise ValueError("clique ordering does not cover the graph")
    out: set[tuple[int, ...]] = {()}
    for grp in groups:
        out = {pre + perm for pre in out for perm in permutations(grp)}
    return out


def theorem3_certificate(
    g: Graph, cg: WeightedCliqueGraph, z: int
) -> Optional[SeparatorChain]:
    """Iteratively peel z-components to build the separator chain whose
    existence characterizes Prim end cliques (hence MCS end vertices).

    Returns None when z is not simplicial, when the critical edges at some
    level disagree on their label, or when the peeled layer has no clique
    containing the previous separator; a complete graph yields the empty
    chain.  On success the last separator must equal the non-simplicial
    part of N[z], which is asserted.
    """
    g._check_vertex(z)
    if not is_simplicial(g, z):
        return None
    home = cg.clique_index_of(g.closed_neighborhood(z))
    current = cg.restrict(cg.component(home))
    separators: list[Separator] = []
    edge_path: list[tuple[int, int]] = []
    while len(current.active) > 1:
        crit = critical_edges(current, home)
        labels = {current.edges[e] for e in crit}
        if len(labels) != 1:
            return None
        label = labels.pop()
        pruned = current.minus(label)
        z_comp = pruned.component(home)
        if separators:
            shed = current.active - z_comp
            if not any(separators[-1] <= current.cliques[i] for i in shed):
                return None
        separators.append(label)
        edge_path.append(min(crit))
        current = pruned.restrict(z_comp)
    if separators:
        non_simplicial = frozenset(
            v for v in g.closed_neighborhood(z) if not is_simplicial(g, v)
        )
        if separators[-1] != non_simplicial:
            raise AssertionError(
                "chain ended on a separator other than the non-simplicial "
                "closed neighborhood; clique-graph construction is broken"
            )
    return SeparatorChain(tuple(separators), tuple(edge_path))


def _validate_chordal(g: Graph, sigma: VertexOrdering) -> None:
    """Check chordality from an already-computed MCS ordering: its reversal
    must be a perfect elimination ordering."""
    if not check_elimination_ordering(g, list(reversed(sigma.seq))):
        raise NotChordalError("input graph is not chordal")


def mcs_end_vertex_chordal(
    g: Graph, z: int, tie_direction: str = "max"
) -> EndVertexReport:
    """The two-run MCS+ decider: run MCS from z, rerun breaking ties toward
    the latest position of the first run, and answer yes exactly when the
    second run ends at z.  O(n^2).

    `tie_direction` exists as a corruption hook for mutation tests; any
    value but "max" breaks the algorithm on purpose.
    """
    t0 = time.perf_counter()
    g._check_vertex(z)
    first = run_search(g, SearchKind.MCS, start=z)
    _validate_chordal(g, first)
    t1 = time.perf_counter()
    if not is_simplicial(g, z):
        return EndVertexReport(
            False, "chordal-mcs+", timings={"first_run": t1 - t0}
        )
    second = run_search(g, SearchKind.MCS, tie=PriorityTie(first, tie_direction))
    t2 = time.perf_counter()
    decision = second.end == z
    return EndVertexReport(
        decision,
        "chordal-mcs+",
        witness=second if decision else None,
        timings={"first_run": t1 - t0, "second_run": t2 - t1},
    )


def _separator_chain_under(
    cg: WeightedCliqueGraph, neighborhood: frozenset[int]
) -> Optional[list[Separator]]:
    """The minimal separators contained in `neighborhood`, sorted by size,
    when they are totally ordered by inclusion; None otherwise."""
    seps = sorted(
        (s for s in minimal_separators_of(cg) if s <= neighborhood),
        key=lambda s: (len(s), sorted(s)),
    )
    for a, b in zip(seps, seps[1:]):
        if not a < b:
            return None
    return seps


def _ldfs_witness(
    g: Graph, z: int, chain: list[Separator]
) -> VertexOrdering:
    """Constructive witness for the chordal LDFS/MNS characterization: visit
    each separator of the chain followed by the components it bounds, then
    z's true twins, then z.  The layer plan is handed to the real LDFS
    engine as a tie breaker, so the result is a valid ordering by
    construction."""
    layers: list[set[int]] = []
    if chain:
        top = chain[-1]
        seen: set[int] = set(top)
        comps: list[frozenset[int]] = []
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
            comps.append(frozenset(comp))
        z_home = next(c for c in comps if z in c)
        attached: dict[int, list[frozenset[int]]] = {i: [] for i in range(len(chain))}
        for comp in sorted((c for c in comps if c is not z_home), key=min):
            boundary = frozenset().union(*(g.neighbors(v) for v in comp)) - comp
            for i, sep in enumerate(chain):
                if boundary == sep:
                    attached[i].append(comp)
                    break
            else:
                raise AssertionError(
                    "component boundary is not a separator of the chain"
                )
        prev: set[int] = set()
        for i, sep in enumerate(chain):
            layers.append(set(sep) - prev)
            prev |= sep
            layers.extend(set(c) for c in attached[i])
        tail = set(z_home) - {z}
    else:
        tail = set(range(g.n)) - {z}
    true_twins, _ = twin_class(g, z)
    if tail - set(true_twins):
        raise AssertionError(
            "leftover vertices beyond z's true twins; chain test is broken"
        )
    if tail:
        layers.append(tail)
    layers.append({z})
    layer_of = {v: i for i, layer in enumerate(layers) for v in layer}
    return run_search(g, SearchKind.LDFS, tie=LayerTie(layer_of))


def _chordal_inclusion_decider(g: Graph, z: int, algorithm: str) -> EndVertexReport:
    t0 = time.perf_counter()
    g.require_connected()
    g._check_vertex(z)
    if is_chordal(g) is None:
        raise NotChordalError(f"{algorithm} requires a chordal graph")
    if not is_simplicial(g, z):
        return EndVertexReport(False, algorithm, timings={"total": time.perf_counter() - t0})
    cg = build_clique_graph(g)
    chain = _separator_chain_under(cg, g.neighbors(z))
    if chain is None:
        return EndVertexReport(False, algorithm, timings={"total": time.perf_counter() - t0})
    witness = _ldfs_witness(g, z, chain)
    if witness.end != z:
        raise AssertionError("constructive witness failed to end at z")
    return EndVertexReport(
        True,
        algorithm,
        witness=witness,
        timings={"total": time.perf_counter() - t0},
    )


def ldfs_end_vertex_chordal(g: Graph, z: int) -> EndVertexReport:
    """z is an LDFS end vertex of a chordal graph iff it is simplicial and
    the minimal separators inside N(z) form a chain under inclusion."""
    return _chordal_inclusion_decider(g, z, "chordal-ldfs")


def mns_end_vertex_chordal(g: Graph, z: int) -> EndVertexReport:
    """Same characterization as LDFS; distinct entry point for reporting."""
    return _chordal_inclusion_decider(g, z, "chordal-mns")
