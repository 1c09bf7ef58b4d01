"""Bow-tie decomposition of directed graphs.

Partitions every node into one of six classes around the largest
strongly connected component: the core itself (SCC), the upstream
region that can reach it (IN), the downstream region it reaches (OUT),
corridor nodes on SCC-avoiding paths from IN to OUT (TUBE), the rest of
the weakly connected body (TENDRIL), and everything else
(DISCONNECTED). MAIN is SCC + IN + OUT.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .graph import DirectedGraph, gather_neighbors


class BowTieClass(enum.Enum):
    SCC = "SCC"
    IN = "IN"
    OUT = "OUT"
    TENDRIL = "TENDRIL"
    TUBE = "TUBE"
    DISCONNECTED = "DISCONNECTED"


_CLASS_ORDER = [
    BowTieClass.SCC,
    BowTieClass.IN,
    BowTieClass.OUT,
    BowTieClass.TENDRIL,
    BowTieClass.TUBE,
    BowTieClass.DISCONNECTED,
]
_CLASS_CODE = {c: i for i, c in enumerate(_CLASS_ORDER)}


@dataclass(frozen=True)
class BowTiePartition:
    """Node-level bow-tie classification plus aggregate shares.

    ``class_of[v]`` is a small integer code; use :meth:`label_of` or
    :meth:`nodes_in` for the enum view. Percentages are node shares in
    [0, 100]; ``main_pct`` is the SCC + IN + OUT share.
    """

    node_count: int
    class_of: np.ndarray
    sizes: dict
    percentages: dict
    main_pct: float

    def label_of(self, node: int) -> BowTieClass:
        return _CLASS_ORDER[self.class_of[node]]

    def nodes_in(self, cls: BowTieClass) -> np.ndarray:
        return np.flatnonzero(self.class_of == _CLASS_CODE[cls])

    def to_dict(self) -> dict:
        return {
            "scc_pct": self.percentages[BowTieClass.SCC],
            "in_pct": self.percentages[BowTieClass.IN],
            "out_pct": self.percentages[BowTieClass.OUT],
            "tendril_pct": self.percentages[BowTieClass.TENDRIL],
            "tube_pct": self.percentages[BowTieClass.TUBE],
            "disconnected_pct": self.percentages[BowTieClass.DISCONNECTED],
            "main_pct": self.main_pct,
        }


def strongly_connected_components(g: DirectedGraph) -> tuple[np.ndarray, np.ndarray]:
    """Label array and component sizes.

    Labels are canonical: components are numbered by the smallest node
    id they contain, in ascending node order. The underlying search is
    iterative (compiled), so recursion depth never scales with the
    graph.
    """
    n = g.node_count
    if n == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    mat = csr_matrix(
        (np.ones(g.edge_count, dtype=np.int8), g.fwd_targets, g.fwd_offsets),
        shape=(n, n),
    )
    _, labels = _cc(mat, directed=True, connection="strong")
    # renumber by first occurrence so labels are deterministic
    _, first_idx, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(len(first_idx), dtype=np.int64)
    rank[np.argsort(first_idx)] = np.arange(len(first_idx))
    labels = rank[inverse]
    sizes = np.bincount(labels)
    return labels, sizes


def _reach_mask(
    offsets: np.ndarray,
    targets: np.ndarray,
    seeds: np.ndarray,
    blocked: np.ndarray | None = None,
) -> np.ndarray:
    """Boolean mask of nodes reachable from ``seeds`` along one CSR
    direction, never entering ``blocked`` nodes. Seeds are included."""
    n = len(offsets) - 1
    visited = np.zeros(n, dtype=bool)
    if blocked is not None:
        visited |= blocked
    frontier = np.unique(seeds)
    visited[frontier] = True
    reached = np.zeros(n, dtype=bool)
    reached[frontier] = True
    while frontier.size:
        neigh = gather_neighbors(offsets, targets, frontier)
        neigh = neigh[~visited[neigh]]
        frontier = np.unique(neigh).astype(np.int64)
        visited[frontier] = True
        reached[frontier] = True
    return reached


def _weak_reach_mask(g: DirectedGraph, seeds: np.ndarray) -> np.ndarray:
    n = g.node_count
    visited = np.zeros(n, dtype=bool)
    frontier = np.unique(seeds)
    visited[frontier] = True
    while frontier.size:
        fwd = gather_neighbors(g.fwd_offsets, g.fwd_targets, frontier)
        rev = gather_neighbors(g.rev_offsets, g.rev_sources, frontier)
        neigh = np.concatenate([fwd, rev])
        neigh = neigh[~visited[neigh]]
        frontier = np.unique(neigh).astype(np.int64)
        visited[frontier] = True
    return visited


def bowtie_decompose(g: DirectedGraph) -> BowTiePartition:
    """Full six-class partition around the largest SCC.

    The core is the largest strong component, ties broken by smallest
    contained node id; on an edgeless graph that leaves the single node
    with the smallest id as the core. An empty graph yields an all-empty
    partition with zero percentages.
    """
    n = g.node_count
    if n == 0:
        zeros = {c: 0 for c in _CLASS_ORDER}
        pcts = {c: 0.0 for c in _CLASS_ORDER}
        return BowTiePartition(0, np.empty(0, dtype=np.uint8), zeros, pcts, 0.0)

    labels, comp_sizes = strongly_connected_components(g)
    max_size = comp_sizes.max()
    tied = np.flatnonzero(comp_sizes == max_size)
    if len(tied) == 1:
        core_label = int(tied[0])
    else:
        # labels are numbered by first occurrence, so the smallest tied
        # label is the component containing the smallest node id
        core_label = int(tied.min())
    scc = labels == core_label

    scc_nodes = np.flatnonzero(scc)
    fwd_reach = _reach_mask(g.fwd_offsets, g.fwd_targets, scc_nodes)
    rev_reach = _reach_mask(g.rev_offsets, g.rev_sources, scc_nodes)
    out_ = fwd_reach & ~scc
    in_ = rev_reach & ~scc

    main = scc | in_ | out_

    tube = np.zeros(n, dtype=bool)
    in_nodes = np.flatnonzero(in_)
    out_nodes = np.flatnonzero(out_)
    if in_nodes.size and out_nodes.size:
        from_in = _reach_mask(g.fwd_offsets, g.fwd_targets, in_nodes, blocked=scc)
        to_out = _reach_mask(g.rev_offsets, g.rev_sources, out_nodes, blocked=scc)
        tube = from_in & to_out & ~main

    weak = _weak_reach_mask(g, scc_nodes)
    tendril = weak & ~main & ~tube
    disconnected = ~weak

    class_of = np.full(n, _CLASS_CODE[BowTieClass.DISCONNECTED], dtype=np.uint8)
    class_of[tendril] = _CLASS_CODE[BowTieClass.TENDRIL]
    class_of[tube] = _CLASS_CODE[BowTieClass.TUBE]
    class_of[out_] = _CLASS_CODE[BowTieClass.OUT]
    class_of[in_] = _CLASS_CODE[BowTieClass.IN]
    class_of[scc] = _CLASS_CODE[BowTieClass.SCC]

    counts = np.bincount(class_of, minlength=len(_CLASS_ORDER))
    sizes = {c: int(counts[_CLASS_CODE[c]]) for c in _CLASS_ORDER}
    pcts = {c: 100.0 * sizes[c] / n for c in _CLASS_ORDER}
    main_pct = pcts[BowTieClass.SCC] + pcts[BowTieClass.IN] + pcts[BowTieClass.OUT]
    return BowTiePartition(n, class_of, sizes, pcts, main_pct)
