"""Batch point-to-point queries over a query graph.

A batch of (s, t) pairs is deduplicated into a query graph: its vertices
are the distinct endpoints, its edges the distinct pairs.  Three ways to
answer it are provided, all exact:

* :func:`multi_bids` runs one joint search with a copy per endpoint and a
  per-endpoint pruning radius of half its largest pending answer.
* :func:`vc_sssp_batch` covers the query edges with endpoint vertices and
  answers from one full SSSP per cover vertex.
* :func:`baseline_batch` answers each edge independently (sequential or
  concurrent bidirectional searches, or one SSSP per oriented source).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .engine import INF, Search, StepPolicy, run_search, sssp
from .graph import CsrGraph
from .ppsp import ppsp

BATCH_ALGOS = ("multi", "vc", "plain-bids", "plain-bids-concurrent", "plain-sssp")

DEFAULT_CELL_CAP = 2**31


class BatchTooLarge(ValueError):
    """The joint search would allocate more cells than the configured cap."""


@dataclass
class QueryGraph:
    """Deduplicated batch: endpoints, distinct edges, and the pair mapping."""

    endpoints: np.ndarray  # sorted distinct endpoint vertex ids
    edges: np.ndarray  # (E, 2) endpoint-index pairs, i < j, sorted
    pair_edge: np.ndarray  # per input pair: edge index, or -1 for s == t
    # flat CSR adjacency over endpoint indices
    q_offsets: np.ndarray = field(repr=False, default=None)
    q_neighbors: np.ndarray = field(repr=False, default=None)
    q_edges: np.ndarray = field(repr=False, default=None)

    @property
    def order(self) -> int:
        return int(self.endpoints.size)

    @property
    def n_pairs(self) -> int:
        return int(self.pair_edge.size)

    def incident_edges(self, index: int) -> np.ndarray:
        lo, hi = self.q_offsets[index], self.q_offsets[index + 1]
        return self.q_edges[lo:hi]


def build_query_graph(pairs, n_vertices: int | None = None) -> QueryGraph:
    """Deduplicate (s, t) pairs into a query graph.

    Duplicate and mirrored pairs map to one edge; self-pairs produce no
    edge (they are answered 0 directly) but their endpoint still joins
    the vertex set.
    """
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if pairs.size and n_vertices is not None:
        if pairs.min() < 0 or pairs.max() >= n_vertices:
            raise ValueError("query endpoint out of range")
    elif pairs.size and pairs.min() < 0:
        raise ValueError("query endpoint out of range")
    endpoints = np.unique(pairs)
    idx = np.searchsorted(endpoints, pairs) if pairs.size else pairs.copy()
    lo = idx.min(axis=1) if pairs.size else np.empty(0, np.int64)
    hi = idx.max(axis=1) if pairs.size else np.empty(0, np.int64)
    proper = lo < hi
    edges = np.unique(np.column_stack([lo[proper], hi[proper]]), axis=0) if proper.any() else np.empty((0, 2), np.int64)
    edge_of = {(int(a), int(b)): k for k, (a, b) in enumerate(edges)}
    pair_edge = np.asarray(
        [edge_of[(int(a), int(b))] if a < b else -1 for a, b in zip(lo, hi)],
        dtype=np.int64,
    ).reshape(-1)

    order = endpoints.size
    ends = np.concatenate([edges[:, 0], edges[:, 1]]) if edges.size else np.empty(0, np.int64)
    mates = np.concatenate([edges[:, 1], edges[:, 0]]) if edges.size else np.empty(0, np.int64)
    eids = np.tile(np.arange(len(edges), dtype=np.int64), 2)
    srt = np.argsort(ends, kind="stable")
    q_offsets = np.zeros(order + 1, dtype=np.int64)
    if ends.size:
        np.cumsum(np.bincount(ends, minlength=order), out=q_offsets[1:])
    return QueryGraph(
        endpoints=endpoints,
        edges=edges,
        pair_edge=pair_edge,
        q_offsets=q_offsets,
        q_neighbors=mates[srt],
        q_edges=eids[srt],
    )


@dataclass
class BatchAnswer:
    """Per-pair distances (aligned with the input pairs) plus counters."""

    distances: np.ndarray
    runs: int
    steps: int
    relaxations: int
    settled_copies: int
    cover: np.ndarray | None = None
    extras: dict = field(default_factory=dict)


def _fan_out(qg: QueryGraph, edge_dist: np.ndarray) -> np.ndarray:
    out = np.zeros(qg.n_pairs)
    has_edge = qg.pair_edge >= 0
    out[has_edge] = edge_dist[qg.pair_edge[has_edge]]
    return out


class MultiBidsSearch(Search):
    """Joint search over all endpoints with per-endpoint pruning radii.

    Copy i explores from endpoint q_i.  When copy i of vertex v improves,
    every incident query edge (i, j) is offered the candidate sum
    dist(v, i) + dist(v, j); each improved edge then tightens the pruning
    radius of both its endpoints to half their largest pending answer.
    """

    def __init__(self, graph: CsrGraph, qg: QueryGraph):
        if not graph.symmetric:
            raise ValueError("the joint bidirectional search needs a symmetrized graph")
        super().__init__(graph, copies=qg.order)
        self.qg = qg
        self.edge_best = np.full(len(qg.edges), INF)
        self.radius = np.full(qg.order, INF)

    def seeds(self):
        c = self.copies
        cells = self.qg.endpoints * c + np.arange(c, dtype=np.int64)
        return cells, np.zeros(c)

    def prune(self, cells):
        idx = cells % self.copies
        return self.state.values[cells] >= 0.5 * self.radius[idx]

    def on_improved(self, cells):
        qg, c = self.qg, self.copies
        verts = cells // c
        idx = cells - verts * c
        deg = qg.q_offsets[idx + 1] - qg.q_offsets[idx]
        total = int(deg.sum())
        if total == 0:
            return
        shift = np.repeat(qg.q_offsets[idx] - np.concatenate(([0], np.cumsum(deg[:-1]))), deg)
        slots = np.arange(total, dtype=np.int64) + shift
        mates = qg.q_neighbors[slots]
        eids = qg.q_edges[slots]
        verts_rep = np.repeat(verts, deg)
        sums = np.repeat(self.state.values[cells], deg) + self.state.values[verts_rep * c + mates]
        order = np.argsort(eids, kind="stable")
        se, sv = eids[order], sums[order]
        starts = np.flatnonzero(np.concatenate(([True], se[1:] != se[:-1])))
        uniq_e = se[starts]
        gmin = np.minimum.reduceat(sv, starts)
        better = gmin < self.edge_best[uniq_e]
        hit = uniq_e[better]
        if hit.size == 0:
            return
        self.edge_best[hit] = gmin[better]
        for endpoint in np.unique(self.qg.edges[hit].ravel()):
            incident = self.edge_best[qg.incident_edges(endpoint)]
            top = float(incident.max())
            if top < self.radius[endpoint]:
                self.radius[endpoint] = top


def multi_bids(
    graph: CsrGraph,
    qg: QueryGraph,
    policy: StepPolicy | None = None,
    threads: int = 1,
    cell_cap: int = DEFAULT_CELL_CAP,
) -> BatchAnswer:
    """Answer the whole batch with one joint pruned search."""
    _validate_batch(graph, qg)
    cells = qg.order * graph.n
    if cells > cell_cap:
        raise BatchTooLarge(
            f"joint search needs {cells} cells > cap {cell_cap}; "
            "split the batch into smaller query sets"
        )
    if len(qg.edges) == 0:
        return BatchAnswer(np.zeros(qg.n_pairs), 0, 0, 0, 0)
    search = MultiBidsSearch(graph, qg)
    stats = run_search(graph, search, policy=policy, threads=threads)
    return BatchAnswer(
        _fan_out(qg, search.edge_best),
        1,
        stats.steps,
        stats.relaxations,
        stats.settled_copies,
        extras={"edge_distances": search.edge_best.copy(), "radius": search.radius.copy()},
    )


def exact_vertex_cover(qg: QueryGraph, max_order: int = 20) -> np.ndarray:
    """Minimum vertex cover of the query edges by exhaustive enumeration.

    Ties on size resolve to the lexicographically smallest index set.
    Guarded to small query graphs; larger ones use the greedy cover.
    """
    if qg.order > max_order:
        raise ValueError(f"exact cover is limited to {max_order} endpoints, got {qg.order}")
    if len(qg.edges) == 0:
        return np.empty(0, dtype=np.int64)
    full = (1 << len(qg.edges)) - 1
    incident_bits = [0] * qg.order
    for k, (a, b) in enumerate(qg.edges):
        incident_bits[int(a)] |= 1 << k
        incident_bits[int(b)] |= 1 << k
    for size in range(1, qg.order + 1):
        for combo in itertools.combinations(range(qg.order), size):
            covered = 0
            for v in combo:
                covered |= incident_bits[v]
            if covered == full:
                return np.asarray(combo, dtype=np.int64)
    raise AssertionError("unreachable: the full vertex set always covers")


def greedy_vertex_cover(qg: QueryGraph) -> np.ndarray:
    """Cover the query edges by repeatedly taking a max-degree endpoint.

    Ties resolve to the smallest index.  Always a valid cover, not
    necessarily minimum.
    """
    uncovered = np.ones(len(qg.edges), dtype=bool)
    cover = []
    while uncovered.any():
        degrees = np.zeros(qg.order, dtype=np.int64)
        live = qg.edges[uncovered]
        np.add.at(degrees, live[:, 0], 1)
        np.add.at(degrees, live[:, 1], 1)
        pick = int(degrees.argmax())
        cover.append(pick)
        uncovered &= (qg.edges[:, 0] != pick) & (qg.edges[:, 1] != pick)
    return np.asarray(sorted(cover), dtype=np.int64)


def vc_sssp_batch(
    graph: CsrGraph,
    qg: QueryGraph,
    policy: StepPolicy | None = None,
    threads: int = 1,
    exact_cover_limit: int = 20,
) -> BatchAnswer:
    """Answer the batch from one full SSSP per cover endpoint.

    The cover is exact for up to ``exact_cover_limit`` endpoints and
    greedy beyond.  An edge with both endpoints covered is answered from
    the smaller index.
    """
    _validate_batch(graph, qg)
    if len(qg.edges) == 0:
        return BatchAnswer(np.zeros(qg.n_pairs), 0, 0, 0, 0, cover=np.empty(0, np.int64))
    if qg.order <= exact_cover_limit:
        cover = exact_vertex_cover(qg, exact_cover_limit)
    else:
        cover = greedy_vertex_cover(qg)
    in_cover = np.zeros(qg.order, dtype=bool)
    in_cover[cover] = True
    dist_rows = {}
    steps = relax = settled = 0
    for k in cover:
        dist, stats = sssp(graph, int(qg.endpoints[k]), policy=policy, threads=threads, return_stats=True)
        dist_rows[int(k)] = dist
        steps += stats.steps
        relax += stats.relaxations
        settled += stats.settled_copies
    edge_dist = np.empty(len(qg.edges))
    for e, (a, b) in enumerate(qg.edges):
        anchor = int(a) if in_cover[a] else int(b)
        other = int(b) if anchor == a else int(a)
        edge_dist[e] = dist_rows[anchor][qg.endpoints[other]]
    return BatchAnswer(
        _fan_out(qg, edge_dist), len(cover), steps, relax, settled, cover=cover
    )


def baseline_batch(
    graph: CsrGraph,
    qg: QueryGraph,
    mode: str = "plain-bids",
    policy: StepPolicy | None = None,
    threads: int = 1,
) -> BatchAnswer:
    """Per-edge baselines: independent bidirectional searches (sequential
    or all issued concurrently), or one SSSP per oriented source (each
    edge is oriented from its smaller endpoint index)."""
    _validate_batch(graph, qg)
    if mode not in ("plain-bids", "plain-bids-concurrent", "plain-sssp"):
        raise ValueError(f"unknown baseline mode {mode!r}")
    edge_dist = np.empty(len(qg.edges))
    steps = relax = settled = runs = 0
    if len(qg.edges) == 0:
        return BatchAnswer(np.zeros(qg.n_pairs), 0, 0, 0, 0)

    if mode == "plain-sssp":
        sources = np.unique(qg.edges[:, 0])
        rows = {}
        for k in sources:
            dist, stats = sssp(graph, int(qg.endpoints[k]), policy=policy, threads=threads, return_stats=True)
            rows[int(k)] = dist
            steps += stats.steps
            relax += stats.relaxations
            settled += stats.settled_copies
            runs += 1
        for e, (a, b) in enumerate(qg.edges):
            edge_dist[e] = rows[int(a)][qg.endpoints[b]]
    else:
        def one(edge):
            a, b = edge
            return ppsp(graph, int(qg.endpoints[a]), int(qg.endpoints[b]), "bids", policy=policy, threads=threads)

        if mode == "plain-bids-concurrent" and len(qg.edges) > 1:
            with ThreadPoolExecutor(max_workers=min(8, len(qg.edges))) as pool:
                answers = list(pool.map(one, qg.edges))
        else:
            answers = [one(edge) for edge in qg.edges]
        for e, ans in enumerate(answers):
            edge_dist[e] = ans.distance
            steps += ans.steps
            relax += ans.relaxations
            settled += ans.settled_copies
            runs += 1
    return BatchAnswer(_fan_out(qg, edge_dist), runs, steps, relax, settled)


def _validate_batch(graph: CsrGraph, qg: QueryGraph) -> None:
    if qg.endpoints.size and (qg.endpoints.min() < 0 or qg.endpoints.max() >= graph.n):
        raise ValueError("query endpoint out of range for this graph")
