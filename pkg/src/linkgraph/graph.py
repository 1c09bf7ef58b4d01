"""Compacted directed graphs with forward and reverse adjacency.

Edge lists are cleaned on ingest (self-loops and duplicate edges are
dropped and counted), sparse node ids are compacted to a dense
``0..n-1`` range, and adjacency is stored as sorted CSR arrays in both
directions so neighbor scans, membership tests, and transposed
traversals stay cheap on multi-million-edge graphs.
"""
from __future__ import annotations

import gzip
import io
import struct
from array import array
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Union

import numpy as np

from .errors import CacheFormatError, EdgeListParseError

_CACHE_MAGIC = b"WGLB"
_CACHE_VERSION = 1
_MAX_NODES = 2**31 - 1  # adjacency targets are stored as int32

EdgeListSource = Union[str, Path, io.IOBase, Iterable[str]]


@dataclass(frozen=True)
class IngestReport:
    """Line accounting for one edge-list ingest.

    ``raw_lines = edges + self_loops_removed + duplicates_removed +
    skipped_lines`` always holds: every physical input line is either a
    kept edge, a removed self-loop or duplicate, or a skipped
    comment/blank line.
    """

    raw_lines: int
    skipped_lines: int
    self_loops_removed: int
    duplicates_removed: int
    nodes: int
    edges: int

    def balanced(self) -> bool:
        return self.raw_lines == (
            self.edges
            + self.self_loops_removed
            + self.duplicates_removed
            + self.skipped_lines
        )

    def to_dict(self) -> dict:
        return {
            "raw_lines": self.raw_lines,
            "skipped_lines": self.skipped_lines,
            "self_loops_removed": self.self_loops_removed,
            "duplicates_removed": self.duplicates_removed,
            "nodes": self.nodes,
            "edges": self.edges,
        }


class DirectedGraph:
    """Immutable simple directed graph over dense node ids ``0..n-1``.

    Both the forward (out-neighbor) and reverse (in-neighbor) adjacency
    are kept as CSR arrays with ascending neighbor lists. ``original_ids``
    maps each dense id back to the id it carried in the source data; it
    is ``None`` when the ids were already dense.
    """

    __slots__ = (
        "node_count",
        "edge_count",
        "fwd_offsets",
        "fwd_targets",
        "rev_offsets",
        "rev_sources",
        "original_ids",
        "_out_degrees",
        "_in_degrees",
        "_fwd_rows",
        "_rev_rows",
    )

    def __init__(
        self,
        node_count: int,
        fwd_offsets: np.ndarray,
        fwd_targets: np.ndarray,
        rev_offsets: np.ndarray,
        rev_sources: np.ndarray,
        original_ids: np.ndarray | None = None,
    ):
        self.node_count = int(node_count)
        self.edge_count = int(len(fwd_targets))
        self.fwd_offsets = fwd_offsets
        self.fwd_targets = fwd_targets
        self.rev_offsets = rev_offsets
        self.rev_sources = rev_sources
        self.original_ids = original_ids
        for arr in (fwd_offsets, fwd_targets, rev_offsets, rev_sources):
            arr.setflags(write=False)
        if original_ids is not None:
            original_ids.setflags(write=False)
        self._out_degrees = None
        self._in_degrees = None
        self._fwd_rows = None
        self._rev_rows = None

    # -- construction -------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        src: np.ndarray,
        dst: np.ndarray,
        original_ids: np.ndarray | None = None,
        assume_clean: bool = False,
    ) -> "DirectedGraph":
        """Build a graph from dense-id edge arrays.

        Self-loops and duplicate edges are removed unless the caller
        guarantees the input is already a simple graph via
        ``assume_clean``.
        """
        n = int(node_count)
        if n > _MAX_NODES:
            raise ValueError(f"node count {n} exceeds supported maximum {_MAX_NODES}")
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        if src.size:
            lo = min(int(src.min()), int(dst.min()))
            hi = max(int(src.max()), int(dst.max()))
            if lo < 0 or hi >= n:
                raise ValueError("edge endpoint outside 0..node_count-1")
        if not assume_clean:
            keep = src != dst
            src, dst = src[keep], dst[keep]
            keys = src * n + dst
            keys = np.unique(keys)
            src, dst = keys // n, keys % n
        fwd_off, fwd_tgt = _csr_from_edges(n, src, dst)
        rev_off, rev_src = _csr_from_edges(n, dst, src)
        return cls(n, fwd_off, fwd_tgt, rev_off, rev_src, original_ids)

    # -- basic accessors ----------------------------------------------

    def out_neighbors(self, node: int) -> np.ndarray:
        return self.fwd_targets[self.fwd_offsets[node] : self.fwd_offsets[node + 1]]

    def in_neighbors(self, node: int) -> np.ndarray:
        return self.rev_sources[self.rev_offsets[node] : self.rev_offsets[node + 1]]

    @property
    def out_degrees(self) -> np.ndarray:
        if self._out_degrees is None:
            d = np.diff(self.fwd_offsets)
            d.setflags(write=False)
            self._out_degrees = d
        return self._out_degrees

    @property
    def in_degrees(self) -> np.ndarray:
        if self._in_degrees is None:
            d = np.diff(self.rev_offsets)
            d.setflags(write=False)
            self._in_degrees = d
        return self._in_degrees

    @property
    def fwd_rows(self) -> np.ndarray:
        """Source node of every forward CSR entry (length = edge_count)."""
        if self._fwd_rows is None:
            r = np.repeat(
                np.arange(self.node_count, dtype=np.int64), self.out_degrees
            )
            r.setflags(write=False)
            self._fwd_rows = r
        return self._fwd_rows

    @property
    def rev_rows(self) -> np.ndarray:
        """Target node of every reverse CSR entry (length = edge_count)."""
        if self._rev_rows is None:
            r = np.repeat(np.arange(self.node_count, dtype=np.int64), self.in_degrees)
            r.setflags(write=False)
            self._rev_rows = r
        return self._rev_rows

    def has_edge(self, u: int, v: int) -> bool:
        row = self.out_neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    def same_structure(self, other: "DirectedGraph") -> bool:
        if self.node_count != other.node_count or self.edge_count != other.edge_count:
            return False
        if not (
            np.array_equal(self.fwd_offsets, other.fwd_offsets)
            and np.array_equal(self.fwd_targets, other.fwd_targets)
            and np.array_equal(self.rev_offsets, other.rev_offsets)
            and np.array_equal(self.rev_sources, other.rev_sources)
        ):
            return False
        a, b = self.original_ids, other.original_ids
        if (a is None) != (b is None):
            return False
        return a is None or np.array_equal(a, b)

    def __repr__(self) -> str:
        return f"DirectedGraph(nodes={self.node_count}, edges={self.edge_count})"


class UndirectedGraph:
    """Simple undirected graph as a symmetric sorted CSR.

    Every edge is stored in both endpoint rows, so ``len(targets)`` is
    twice the edge count.
    """

    __slots__ = ("node_count", "offsets", "targets", "original_ids", "_rows")

    def __init__(
        self,
        node_count: int,
        offsets: np.ndarray,
        targets: np.ndarray,
        original_ids: np.ndarray | None = None,
    ):
        self.node_count = int(node_count)
        self.offsets = offsets
        self.targets = targets
        self.original_ids = original_ids
        offsets.setflags(write=False)
        targets.setflags(write=False)
        self._rows = None

    @classmethod
    def from_pairs(cls, node_count: int, pairs: np.ndarray) -> "UndirectedGraph":
        """Build from an array of (u, v) endpoint pairs; order and
        duplicates do not matter, self-pairs are dropped."""
        n = int(node_count)
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        u, v = pairs[:, 0], pairs[:, 1]
        keep = u != v
        u, v = u[keep], v[keep]
        lo, hi = (np.minimum(u, v), np.maximum(u, v))
        keys = np.unique(lo * n + hi)
        lo, hi = keys // n, keys % n
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        off, tgt = _csr_from_edges(n, src, dst)
        return cls(n, off, tgt)

    @property
    def edge_count(self) -> int:
        return len(self.targets) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    @property
    def rows(self) -> np.ndarray:
        if self._rows is None:
            r = np.repeat(np.arange(self.node_count, dtype=np.int64), self.degrees)
            r.setflags(write=False)
            self._rows = r
        return self._rows

    def neighbors(self, node: int) -> np.ndarray:
        return self.targets[self.offsets[node] : self.offsets[node + 1]]

    def __repr__(self) -> str:
        return f"UndirectedGraph(nodes={self.node_count}, edges={self.edge_count})"


# -- CSR construction and shared array kernels ------------------------


def _csr_from_edges(n: int, src: np.ndarray, dst: np.ndarray):
    """Sorted CSR (offsets, targets) for edges given by parallel arrays."""
    if src.size == 0:
        return np.zeros(n + 1, dtype=np.int64), np.empty(0, dtype=np.int32)
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    counts = np.bincount(src, minlength=n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return offsets, dst.astype(np.int32)


def gather_neighbors(offsets: np.ndarray, targets: np.ndarray, frontier: np.ndarray) -> np.ndarray:
    """Concatenate the adjacency rows of all ``frontier`` nodes.

    Vectorized multi-slice gather; the workhorse of frontier-based
    traversals.
    """
    counts = offsets[frontier + 1] - offsets[frontier]
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=targets.dtype)
    starts = np.repeat(offsets[frontier], counts)
    back = np.repeat(np.cumsum(counts) - counts, counts)
    idx = starts + (np.arange(total, dtype=np.int64) - back)
    return targets[idx]


def neighbor_value_sums(
    rows: np.ndarray, targets: np.ndarray, values: np.ndarray, node_count: int
) -> np.ndarray:
    """Per-node sum of ``values[neighbor]`` over one CSR direction."""
    if len(targets) == 0:
        return np.zeros(node_count, dtype=np.float64)
    return np.bincount(
        rows, weights=values[targets].astype(np.float64), minlength=node_count
    )


# -- edge-list ingest --------------------------------------------------


def build_from_edge_list(source: EdgeListSource) -> tuple[DirectedGraph, IngestReport]:
    """Parse a whitespace-separated edge list into a compacted graph.

    Each data line holds two non-negative integers ``src dst``. Blank
    lines and lines starting with ``#`` are skipped. Paths ending in
    gzip data (sniffed by magic bytes, not extension) are decompressed
    transparently. Self-loops and duplicate edges are removed; the
    returned report accounts for every input line.
    """
    src = array("q")
    dst = array("q")
    raw = 0
    skipped = 0
    for lineno, line in _iter_lines(source):
        raw += 1
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            skipped += 1
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise EdgeListParseError(
                lineno, f"expected two whitespace-separated integers, got {stripped!r}"
            )
        try:
            u = int(parts[0])
            v = int(parts[1])
        except ValueError:
            raise EdgeListParseError(
                lineno, f"non-integer node id in {stripped!r}"
            ) from None
        if u < 0 or v < 0:
            raise EdgeListParseError(lineno, f"negative node id in {stripped!r}")
        src.append(u)
        dst.append(v)

    s = np.asarray(src, dtype=np.int64)
    d = np.asarray(dst, dtype=np.int64)
    total = len(s)

    keep = s != d
    s, d = s[keep], d[keep]
    self_loops = total - len(s)

    ids = np.unique(np.concatenate([s, d])) if len(s) else np.empty(0, dtype=np.int64)
    n = len(ids)
    if n > _MAX_NODES:
        raise EdgeListParseError(0, f"too many distinct node ids ({n})")
    su = np.searchsorted(ids, s)
    du = np.searchsorted(ids, d)
    keys = np.unique(su * max(n, 1) + du)
    duplicates = len(s) - len(keys)
    su, du = keys // max(n, 1), keys % max(n, 1)

    original_ids = None
    if n and (ids[0] != 0 or ids[-1] != n - 1):
        original_ids = ids
    graph = DirectedGraph.from_edges(n, su, du, original_ids, assume_clean=True)
    report = IngestReport(
        raw_lines=raw,
        skipped_lines=skipped,
        self_loops_removed=self_loops,
        duplicates_removed=duplicates,
        nodes=n,
        edges=graph.edge_count,
    )
    return graph, report


def _iter_lines(source: EdgeListSource) -> Iterator[tuple[int, str]]:
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            head = fh.read(2)
            fh.seek(0)
            if head == b"\x1f\x8b":
                with gzip.open(fh, "rt", encoding="utf-8") as gz:
                    yield from enumerate(gz, start=1)
            else:
                text = io.TextIOWrapper(fh, encoding="utf-8")
                yield from enumerate(text, start=1)
        return
    if hasattr(source, "read"):
        yield from enumerate(source, start=1)  # type: ignore[arg-type]
        return
    yield from enumerate(source, start=1)


def degrees(g: DirectedGraph, node: int) -> tuple[int, int]:
    """(in-degree, out-degree) of one node; raises IndexError when out of range."""
    if not 0 <= node < g.node_count:
        raise IndexError(f"node id {node} out of range 0..{g.node_count - 1}")
    return int(g.in_degrees[node]), int(g.out_degrees[node])


# -- binary cache ------------------------------------------------------

# Layout (all little-endian):
#   magic[4] version:u32 flags:u64 node_count:u64 edge_count:u64
#   fwd_offsets:(n+1)*i64  rev_offsets:(n+1)*i64
#   fwd_targets:m*i32      rev_sources:m*i32
#   [original_ids:n*i64 when flags bit 0 is set]
_HEADER = struct.Struct("<4sIQQQ")


def save_cache(g: DirectedGraph) -> bytes:
    """Serialize a graph to the binary cache format (deterministic bytes)."""
    flags = 1 if g.original_ids is not None else 0
    parts = [
        _HEADER.pack(_CACHE_MAGIC, _CACHE_VERSION, flags, g.node_count, g.edge_count),
        np.ascontiguousarray(g.fwd_offsets, dtype="<i8").tobytes(),
        np.ascontiguousarray(g.rev_offsets, dtype="<i8").tobytes(),
        np.ascontiguousarray(g.fwd_targets, dtype="<i4").tobytes(),
        np.ascontiguousarray(g.rev_sources, dtype="<i4").tobytes(),
    ]
    if g.original_ids is not None:
        parts.append(np.ascontiguousarray(g.original_ids, dtype="<i8").tobytes())
    return b"".join(parts)


def load_cache(data: bytes) -> DirectedGraph:
    """Deserialize :func:`save_cache` output; validates magic, version,
    and exact length."""
    if len(data) < _HEADER.size:
        raise CacheFormatError("cache shorter than header")
    magic, version, flags, n, m = _HEADER.unpack_from(data, 0)
    if magic != _CACHE_MAGIC:
        raise CacheFormatError(f"bad magic {magic!r}")
    if version != _CACHE_VERSION:
        raise CacheFormatError(f"unsupported cache version {version}")
    has_ids = bool(flags & 1)
    expected = _HEADER.size + 2 * 8 * (n + 1) + 2 * 4 * m + (8 * n if has_ids else 0)
    if len(data) < expected:
        raise CacheFormatError(f"truncated cache: {len(data)} bytes, need {expected}")
    if len(data) > expected:
        raise CacheFormatError(f"trailing bytes in cache: {len(data)} > {expected}")
    pos = _HEADER.size
    fwd_off = np.frombuffer(data, dtype="<i8", count=n + 1, offset=pos).copy()
    pos += 8 * (n + 1)
    rev_off = np.frombuffer(data, dtype="<i8", count=n + 1, offset=pos).copy()
    pos += 8 * (n + 1)
    fwd_tgt = np.frombuffer(data, dtype="<i4", count=m, offset=pos).copy()
    pos += 4 * m
    rev_src = np.frombuffer(data, dtype="<i4", count=m, offset=pos).copy()
    pos += 4 * m
    original_ids = None
    if has_ids:
        original_ids = np.frombuffer(data, dtype="<i8", count=n, offset=pos).copy()
    if fwd_off[0] != 0 or fwd_off[-1] != m or rev_off[0] != 0 or rev_off[-1] != m:
        raise CacheFormatError("inconsistent offset arrays")
    return DirectedGraph(n, fwd_off, fwd_tgt, rev_off, rev_src, original_ids)


# -- derived graphs ----------------------------------------------------


def undirected_view(g: DirectedGraph) -> UndirectedGraph:
    """Undirected projection: neighbors are the union of in- and
    out-neighbors, mutual pairs collapse to one edge."""
    u = np.concatenate([g.fwd_rows, g.fwd_targets.astype(np.int64)])
    v = np.concatenate([g.fwd_targets.astype(np.int64), g.fwd_rows])
    pairs = np.stack([u, v], axis=1)
    out = UndirectedGraph.from_pairs(g.node_count, pairs)
    return UndirectedGraph(out.node_count, out.offsets, out.targets, g.original_ids)


def induced_subgraph(
    g: DirectedGraph, nodes: np.ndarray
) -> tuple[DirectedGraph, np.ndarray]:
    """Subgraph on ``nodes`` with compacted ids.

    Returns the subgraph and the sorted array mapping each new dense id
    back to the id it had in ``g``.
    """
    nodes = np.unique(np.asarray(nodes, dtype=np.int64))
    if nodes.size and (nodes[0] < 0 or nodes[-1] >= g.node_count):
        raise IndexError("subgraph node id out of range")
    member = np.zeros(g.node_count, dtype=bool)
    member[nodes] = True
    u, v = g.fwd_rows, g.fwd_targets
    keep = member[u] & member[v]
    su = np.searchsorted(nodes, u[keep])
    dv = np.searchsorted(nodes, v[keep])
    orig = g.original_ids[nodes] if g.original_ids is not None else nodes.copy()
    sub = DirectedGraph.from_edges(len(nodes), su, dv, orig, assume_clean=True)
    return sub, nodes
