"""Synthetic directed graphs with controlled reciprocity, crawl
simulation, and true-versus-observed bias reporting.

The generator is a directed configuration model by stub matching.
Reciprocity is injected by converting a target fraction of matched
pairs into mutual pairs before the remaining stubs are placed as
one-way edges; self-loops and duplicates arising from matching are
discarded and reported, never resampled. A second constructor wires
independently drawn one-way and mutual degree sequences, which is the
uncorrelated null for statistics over the reciprocal decomposition.

Crawls only follow out-links: a simulated crawler cannot navigate
backwards, which is exactly the exploration asymmetry whose footprint
the bias report quantifies.
"""
from __future__ import annotations

import enum
import hashlib
import struct
from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from .components import BowTieClass, bowtie_decompose
from .degree_stats import (
    Direction,
    degree_histogram,
    mle_powerlaw,
    sample_zeta,
    select_fit_range,
    summarize,
)
from .errors import (
    GenerationError,
    PowerLawFitError,
    ProvenanceError,
    UndefinedStatisticError,
)
from .graph import DirectedGraph, gather_neighbors
from .reciprocity import decompose

# -- degree laws --------------------------------------------------------


@dataclass(frozen=True)
class ZetaDegreeLaw:
    """Discrete power law k^-gamma on k >= k_min, optionally truncated."""

    gamma: float
    k_min: int = 1
    cutoff: int | None = None


@dataclass(frozen=True)
class PoissonDegreeLaw:
    lam: float


@dataclass(frozen=True)
class ExplicitDegreeLaw:
    """A caller-supplied degree sequence, one entry per node."""

    values: tuple


DegreeLaw = Union[ZetaDegreeLaw, PoissonDegreeLaw, ExplicitDegreeLaw]


def draw_degree_sequence(
    law: DegreeLaw, n: int, rng: np.random.Generator, max_degree: int
) -> tuple[np.ndarray, int]:
    """Realize a law as an int64 sequence; draws above ``max_degree``
    are clipped (count returned) since a simple graph cannot host them."""
    if isinstance(law, ExplicitDegreeLaw):
        seq = np.asarray(law.values, dtype=np.int64)
        if len(seq) != n:
            raise GenerationError(
                f"explicit sequence has {len(seq)} entries for {n} nodes"
            )
        if seq.min(initial=0) < 0:
            raise GenerationError("negative degree in explicit sequence")
    elif isinstance(law, PoissonDegreeLaw):
        seq = rng.poisson(law.lam, n).astype(np.int64)
    elif isinstance(law, ZetaDegreeLaw):
        seq = sample_zeta(law.gamma, n, rng, k_min=law.k_min, cutoff=law.cutoff)
    else:
        raise TypeError(f"unknown degree law {law!r}")
    clipped = int(np.count_nonzero(seq > max_degree))
    if clipped:
        seq = np.minimum(seq, max_degree)
    return seq, clipped


def law_mean(law: DegreeLaw, max_degree: int | None = None) -> float:
    """Expected value of a law (used to pair laws with matching totals)."""
    if isinstance(law, PoissonDegreeLaw):
        return float(law.lam)
    if isinstance(law, ExplicitDegreeLaw):
        return float(np.mean(np.asarray(law.values, dtype=np.float64)))
    if isinstance(law, ZetaDegreeLaw):
        hi = law.cutoff if law.cutoff is not None else max_degree
        if hi is not None:
            ks = np.arange(law.k_min, hi + 1, dtype=np.float64)
            w = ks**-law.gamma
            return float(np.dot(ks, w) / w.sum())
        if law.gamma <= 2.0:
            raise GenerationError(
                "unbounded zeta law with gamma <= 2 has no finite mean; set a cutoff"
            )
        from scipy.special import zeta as _hz

        return float(_hz(law.gamma - 1.0, law.k_min) / _hz(law.gamma, law.k_min))
    raise TypeError(f"unknown degree law {law!r}")


# -- generator -----------------------------------------------------------


@dataclass(frozen=True)
class GeneratorConfig:
    node_count: int
    in_law: DegreeLaw
    out_law: DegreeLaw
    target_reciprocity: float = 0.0
    rng_seed: int = 0


@dataclass(frozen=True)
class GenerationReport:
    """Everything discarded or adjusted while realizing the request."""

    node_count: int
    requested_edges: int
    edge_count: int
    target_reciprocity: float | None
    realized_reciprocity: float | None
    mutual_target_pairs: int
    mutual_pairs_placed: int
    conversion_shortfall: int
    self_loops_discarded: int
    duplicates_discarded: int
    clipped_draws: int
    balance_adjustments: int
    stubs_dropped: int

    def to_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "requested_edges": self.requested_edges,
            "edge_count": self.edge_count,
            "target_reciprocity": self.target_reciprocity,
            "realized_reciprocity": self.realized_reciprocity,
            "mutual_target_pairs": self.mutual_target_pairs,
            "mutual_pairs_placed": self.mutual_pairs_placed,
            "conversion_shortfall": self.conversion_shortfall,
            "self_loops_discarded": self.self_loops_discarded,
            "duplicates_discarded": self.duplicates_discarded,
            "clipped_draws": self.clipped_draws,
            "balance_adjustments": self.balance_adjustments,
            "stubs_dropped": self.stubs_dropped,
        }


def _balance_sequences(
    kin: np.ndarray,
    kout: np.ndarray,
    in_explicit: bool,
    out_explicit: bool,
    rng: np.random.Generator,
) -> int:
    """Equalize stub totals by adjusting a drawn side; explicit pairs
    that disagree are an error."""
    diff = int(kin.sum() - kout.sum())
    if diff == 0:
        return 0
    if in_explicit and out_explicit:
        raise GenerationError(
            f"explicit sequences cannot be matched: sum(in) - sum(out) = {diff}"
        )

    def add(seq: np.ndarray, amount: int) -> None:
        idx = rng.integers(0, len(seq), size=amount)
        np.add.at(seq, idx, 1)

    def remove(seq: np.ndarray, amount: int) -> None:
        stubs = np.repeat(np.arange(len(seq), dtype=np.int64), seq)
        pick = rng.choice(len(stubs), size=amount, replace=False)
        np.subtract.at(seq, stubs[pick], 1)

    if diff > 0:  # out side is short
        if not out_explicit:
            add(kout, diff)
        else:
            remove(kin, diff)
    else:
        if not in_explicit:
            add(kin, -diff)
        else:
            remove(kout, -diff)
    return abs(diff)


def _mutual_conversion_stage(
    rng: np.random.Generator,
    kin: np.ndarray,
    kout: np.ndarray,
    target_pairs: int,
    strict_mutual: bool,
):
    """Match stubs as usual but convert matches into mutual pairs when
    the reverse stubs are available. Sequential by necessity: every
    conversion consumes stubs out of the stream's future."""
    n = len(kin)
    out_stream = np.repeat(np.arange(n, dtype=np.int64), kout)
    in_stream = np.repeat(np.arange(n, dtype=np.int64), kin)
    rng.shuffle(out_stream)
    rng.shuffle(in_stream)
    out_list = out_stream.tolist()
    in_list = in_stream.tolist()
    ri = kin.tolist()
    ro = kout.tolist()

    mutual_u: list[int] = []
    mutual_v: list[int] = []
    mutual_keys: set[int] = set()
    plain_u: list[int] = []
    plain_v: list[int] = []
    self_discard = 0
    dup_discard = 0
    shortfall = 0
    placed = 0
    po = 0
    pi = 0
    len_out = len(out_list)
    len_in = len(in_list)
    while placed < target_pairs and po < len_out:
        u = out_list[po]
        po += 1
        if ro[u] <= 0:
            continue  # stub already consumed by an earlier conversion
        v = -1
        while pi < len_in:
            cand = in_list[pi]
            pi += 1
            if ri[cand] > 0:
                v = cand
                break
        if v < 0:
            break
        if u == v:
            ro[u] -= 1
            ri[u] -= 1
            self_discard += 1
            continue
        key = u * n + v if u < v else v * n + u
        if key in mutual_keys:
            ro[u] -= 1
            ri[v] -= 1
            dup_discard += 1
            continue
        if ri[u] > 0 and ro[v] > 0:
            ro[u] -= 1
            ri[v] -= 1
            ri[u] -= 1
            ro[v] -= 1
            mutual_u.append(u)
            mutual_v.append(v)
            mutual_keys.add(key)
            placed += 1
        else:
            ro[u] -= 1
            ri[v] -= 1
            shortfall += 1
            if not strict_mutual:
                plain_u.append(u)
                plain_v.append(v)
            # strict mode (target 1.0) drops the one-way match instead

    stats = {
        "self": self_discard,
        "dup": dup_discard,
        "shortfall": shortfall,
        "placed": placed,
        "dropped_matches": shortfall if strict_mutual else 0,
    }
    return (
        np.array(mutual_u, dtype=np.int64),
        np.array(mutual_v, dtype=np.int64),
        np.array(plain_u, dtype=np.int64),
        np.array(plain_v, dtype=np.int64),
        np.array(ri, dtype=np.int64),
        np.array(ro, dtype=np.int64),
        stats,
    )


def _match_directed(rng: np.random.Generator, rem_in: np.ndarray, rem_out: np.ndarray):
    """Plain stub matching of whatever stubs remain; self-loops dropped."""
    n = len(rem_in)
    out_stream = np.repeat(np.arange(n, dtype=np.int64), rem_out)
    in_stream = np.repeat(np.arange(n, dtype=np.int64), rem_in)
    rng.shuffle(out_stream)
    rng.shuffle(in_stream)
    m = min(len(out_stream), len(in_stream))
    u, v = out_stream[:m], in_stream[:m]
    keep = u != v
    return u[keep], v[keep], int(m - keep.sum())


def _dedup_edges(n: int, u: np.ndarray, v: np.ndarray):
    keys = u * n + v
    uniq = np.unique(keys)
    return uniq // n, uniq % n, int(len(keys) - len(uniq))


def generate(cfg: GeneratorConfig) -> tuple[DirectedGraph, GenerationReport]:
    """Directed configuration model with a reciprocity target.

    Raises :class:`GenerationError` when the target is infeasible for
    the drawn sequences (the message carries the maximum feasible
    fraction). At target 1.0 every placed edge is mutual; unmatched
    leftovers are dropped and reported.
    """
    if not 0.0 <= cfg.target_reciprocity <= 1.0:
        raise GenerationError("target_reciprocity must lie in [0, 1]")
    if cfg.node_count <= 0:
        raise GenerationError("node_count must be positive")
    n = cfg.node_count
    rng = np.random.default_rng(cfg.rng_seed)
    kin, clip_in = draw_degree_sequence(cfg.in_law, n, rng, n - 1)
    kout, clip_out = draw_degree_sequence(cfg.out_law, n, rng, n - 1)
    adjustments = _balance_sequences(
        kin,
        kout,
        isinstance(cfg.in_law, ExplicitDegreeLaw),
        isinstance(cfg.out_law, ExplicitDegreeLaw),
        rng,
    )
    total = int(kin.sum())

    target_pairs = int(round(cfg.target_reciprocity * total / 2.0))
    feasible_pairs = int(np.minimum(kin, kout).sum()) // 2
    if target_pairs > feasible_pairs:
        max_frac = 2.0 * feasible_pairs / total if total else 0.0
        raise GenerationError(
            f"reciprocity target {cfg.target_reciprocity} infeasible for these "
            f"sequences; maximum feasible fraction is {max_frac:.4f}"
        )

    strict = cfg.target_reciprocity == 1.0
    if target_pairs > 0:
        mu, mv, pu, pv, rem_in, rem_out, st = _mutual_conversion_stage(
            rng, kin, kout, target_pairs, strict
        )
    else:
        mu = mv = pu = pv = np.empty(0, dtype=np.int64)
        rem_in, rem_out = kin.copy(), kout.copy()
        st = {"self": 0, "dup": 0, "shortfall": 0, "placed": 0, "dropped_matches": 0}

    stubs_dropped = 0
    if strict:
        du = dv = np.empty(0, dtype=np.int64)
        self_b = 0
        stubs_dropped = int(rem_in.sum() + rem_out.sum())
    else:
        du, dv, self_b = _match_directed(rng, rem_in, rem_out)

    all_u = np.concatenate([mu, mv, pu, du])
    all_v = np.concatenate([mv, mu, pv, dv])
    eu, ev, dups_global = _dedup_edges(n, all_u, all_v)
    graph = DirectedGraph.from_edges(n, eu, ev, assume_clean=True)

    realized = None
    if graph.edge_count:
        realized = decompose(graph).reciprocity_fraction()
    report = GenerationReport(
        node_count=n,
        requested_edges=total,
        edge_count=graph.edge_count,
        target_reciprocity=cfg.target_reciprocity,
        realized_reciprocity=realized,
        mutual_target_pairs=target_pairs,
        mutual_pairs_placed=st["placed"],
        conversion_shortfall=st["shortfall"],
        self_loops_discarded=st["self"] + self_b,
        duplicates_discarded=st["dup"] + dups_global,
        clipped_draws=clip_in + clip_out,
        balance_adjustments=adjustments,
        stubs_dropped=stubs_dropped,
    )
    return graph, report


def generate_decomposed(
    node_count: int,
    one_way_in_law: DegreeLaw,
    one_way_out_law: DegreeLaw,
    mutual_law: DegreeLaw,
    rng_seed: int = 0,
) -> tuple[DirectedGraph, GenerationReport]:
    """Wire three independently drawn sequences: one-way in, one-way
    out, and mutual-pair degrees.

    One-way edges come from directed stub matching on the first two;
    mutual pairs from undirected stub matching on the third. Because
    the mutual sequence is drawn independently of the one-way ones,
    the result is the natural uncorrelated reference for statistics
    over the reciprocal decomposition.
    """
    n = node_count
    if n <= 0:
        raise GenerationError("node_count must be positive")
    rng = np.random.default_rng(rng_seed)
    qin, clip_a = draw_degree_sequence(one_way_in_law, n, rng, n - 1)
    qout, clip_b = draw_degree_sequence(one_way_out_law, n, rng, n - 1)
    adjustments = _balance_sequences(
        qin,
        qout,
        isinstance(one_way_in_law, ExplicitDegreeLaw),
        isinstance(one_way_out_law, ExplicitDegreeLaw),
        rng,
    )
    qr, clip_c = draw_degree_sequence(mutual_law, n, rng, n - 1)
    if int(qr.sum()) % 2 == 1:
        qr[rng.integers(0, n)] += 1
        adjustments += 1

    # mutual layer: undirected stub matching on qr
    slots = np.repeat(np.arange(n, dtype=np.int64), qr)
    rng.shuffle(slots)
    half = len(slots) // 2
    a, b = slots[: 2 * half : 2], slots[1 : 2 * half : 2]
    keep = a != b
    self_m = int(len(a) - keep.sum())
    a, b = a[keep], b[keep]
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    pair_keys = np.unique(lo * n + hi)
    dup_m = int(len(lo) - len(pair_keys))
    lo, hi = pair_keys // n, pair_keys % n

    du, dv, self_d = _match_directed(rng, qin, qout)

    all_u = np.concatenate([lo, hi, du])
    all_v = np.concatenate([hi, lo, dv])
    eu, ev, dups_global = _dedup_edges(n, all_u, all_v)
    graph = DirectedGraph.from_edges(n, eu, ev, assume_clean=True)
    realized = None
    if graph.edge_count:
        realized = decompose(graph).reciprocity_fraction()
    report = GenerationReport(
        node_count=n,
        requested_edges=int(qin.sum() + qr.sum()),
        edge_count=graph.edge_count,
        target_reciprocity=None,
        realized_reciprocity=realized,
        mutual_target_pairs=half,
        mutual_pairs_placed=int(len(lo)),
        conversion_shortfall=0,
        self_loops_discarded=self_m + self_d,
        duplicates_discarded=dup_m + dups_global,
        clipped_draws=clip_a + clip_b + clip_c,
        balance_adjustments=adjustments,
        stubs_dropped=int(len(slots) - 2 * half),
    )
    return graph, report


# -- crawling ------------------------------------------------------------


class CrawlStrategy(enum.Enum):
    BFS = "bfs"
    DFS = "dfs"
    RANDOM_FRONTIER = "random_frontier"


class FrontierMode(enum.Enum):
    """What the observed graph keeps.

    FETCHED_ONLY: fetched nodes and the edges among them.
    FRONTIER_INCLUSIVE: additionally every discovered-but-unfetched
    node and the edges from fetched nodes into them.
    """

    FETCHED_ONLY = "fetched_only"
    FRONTIER_INCLUSIVE = "frontier_inclusive"


@dataclass(frozen=True)
class CrawlConfig:
    seeds: tuple
    strategy: CrawlStrategy
    page_budget: int | None = None
    frontier_mode: FrontierMode = FrontierMode.FETCHED_ONLY
    rng_seed: int = 0


@dataclass(frozen=True)
class CrawlOutcome:
    """Observed graph plus the raw crawl trace.

    ``observed_to_true[i]`` maps observed node i back to its id in the
    crawled graph; ``fetched`` is in fetch order.
    """

    observed: DirectedGraph
    fetched: np.ndarray
    discovered: np.ndarray
    observed_to_true: np.ndarray
    config: CrawlConfig
    true_fingerprint: str


def graph_fingerprint(g: DirectedGraph) -> str:
    """Cheap structural digest used to pair outcomes with their source
    graph."""
    h = hashlib.sha1()
    h.update(struct.pack("<QQ", g.node_count, g.edge_count))
    for arr in (g.fwd_offsets, g.fwd_targets):
        step = max(1, len(arr) // 1024)
        h.update(np.ascontiguousarray(arr[::step], dtype="<i8").tobytes())
    return h.hexdigest()


def simulate_crawl(g: DirectedGraph, cfg: CrawlConfig) -> CrawlOutcome:
    """Crawl along out-links from the seeds under a page budget.

    BFS fetches oldest-first, DFS newest-first (out-neighbors are
    pushed in ascending id order, so DFS descends through the highest
    id first), RANDOM_FRONTIER fetches a uniformly random frontier
    entry using the config seed. Fetching a node reveals its out-links;
    in-links of unfetched nodes are invisible, so the crawl can never
    walk upstream.
    """
    n = g.node_count
    if n == 0:
        raise ValueError("cannot crawl an empty graph")
    seeds = []
    seen = set()
    for s in cfg.seeds:
        s = int(s)
        if not 0 <= s < n:
            raise IndexError(f"seed {s} out of range")
        if s not in seen:
            seen.add(s)
            seeds.append(s)
    if not seeds:
        raise ValueError("at least one seed is required")
    budget = cfg.page_budget if cfg.page_budget is not None else n
    if budget < len(seeds):
        raise ValueError("page_budget smaller than the number of seeds")

    discovered = np.zeros(n, dtype=bool)
    fetched_mask = np.zeros(n, dtype=bool)
    fetch_order: list[int] = []
    frontier: list[int] = list(seeds)
    discovered[seeds] = True
    rng = (
        np.random.default_rng(cfg.rng_seed)
        if cfg.strategy is CrawlStrategy.RANDOM_FRONTIER
        else None
    )
    pop_head = 0  # BFS reads the list left to right without popping

    while len(fetch_order) < budget:
        if cfg.strategy is CrawlStrategy.BFS:
            if pop_head >= len(frontier):
                break
            u = frontier[pop_head]
            pop_head += 1
        elif cfg.strategy is CrawlStrategy.DFS:
            if not frontier:
                break
            u = frontier.pop()
        else:
            if not frontier:
                break
            i = int(rng.integers(len(frontier)))
            frontier[i], frontier[-1] = frontier[-1], frontier[i]
            u = frontier.pop()
        fetch_order.append(u)
        fetched_mask[u] = True
        for v in g.out_neighbors(u).tolist():
            if not discovered[v]:
                discovered[v] = True
                frontier.append(v)

    if cfg.frontier_mode is FrontierMode.FETCHED_ONLY:
        universe = np.flatnonzero(fetched_mask)
    else:
        universe = np.flatnonzero(discovered)

    fetched_nodes = np.flatnonzero(fetched_mask)
    tgts = gather_neighbors(g.fwd_offsets, g.fwd_targets, fetched_nodes).astype(
        np.int64
    )
    srcs = np.repeat(fetched_nodes, g.out_degrees[fetched_nodes])
    if cfg.frontier_mode is FrontierMode.FETCHED_ONLY:
        keep = fetched_mask[tgts]
        srcs, tgts = srcs[keep], tgts[keep]
    su = np.searchsorted(universe, srcs)
    sv = np.searchsorted(universe, tgts)
    orig = (
        g.original_ids[universe] if g.original_ids is not None else universe.copy()
    )
    observed = DirectedGraph.from_edges(
        len(universe), su, sv, original_ids=orig, assume_clean=True
    )
    return CrawlOutcome(
        observed=observed,
        fetched=np.array(fetch_order, dtype=np.int64),
        discovered=np.flatnonzero(discovered),
        observed_to_true=universe,
        config=cfg,
        true_fingerprint=graph_fingerprint(g),
    )


# -- bias report ----------------------------------------------------------


@dataclass(frozen=True)
class BiasEntry:
    name: str
    true_value: float | None
    observed_value: float | None
    relative_deviation: float | None
    note: str | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "true": self.true_value,
            "observed": self.observed_value,
            "relative_deviation": self.relative_deviation,
            "note": self.note,
        }


@dataclass(frozen=True)
class BiasReport:
    entries: tuple

    def entry(self, name: str) -> BiasEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"entries": [e.to_dict() for e in self.entries]}


_BIAS_STATS = (
    "scc_pct",
    "in_pct",
    "out_pct",
    "gamma_in",
    "kappa_in",
    "kappa_out",
    "reciprocity_fraction",
    "mean_q_r",
)


def graph_statistics(g: DirectedGraph) -> dict:
    """The summary statistics the bias report compares, each as
    (value or None, note or None)."""
    out: dict = {}
    part = bowtie_decompose(g)
    out["scc_pct"] = (part.percentages[BowTieClass.SCC], None)
    out["in_pct"] = (part.percentages[BowTieClass.IN], None)
    out["out_pct"] = (part.percentages[BowTieClass.OUT], None)

    hist_in = degree_histogram(g, Direction.IN)
    hist_out = degree_histogram(g, Direction.OUT)
    try:
        k_min, k_max = select_fit_range(hist_in)
        fit = mle_powerlaw(hist_in, k_min=k_min)
        out["gamma_in"] = (fit.gamma, None)
    except PowerLawFitError as exc:
        out["gamma_in"] = (None, str(exc))
    for key, hist in (("kappa_in", hist_in), ("kappa_out", hist_out)):
        summ = summarize(hist)
        out[key] = (summ.kappa, summ.note)

    dec = decompose(g)
    try:
        out["reciprocity_fraction"] = (dec.reciprocity_fraction(), None)
    except UndefinedStatisticError as exc:
        out["reciprocity_fraction"] = (None, str(exc))
    out["mean_q_r"] = (float(dec.q_r.mean()), None)
    return out


def bias_report(true_graph: DirectedGraph, outcome: CrawlOutcome) -> BiasReport:
    """Paired true-versus-observed statistics with relative deviations.

    Undefined observed statistics stay None with an explanatory note;
    they are never silently zeroed. Raises :class:`ProvenanceError`
    when the outcome was not produced from ``true_graph``.
    """
    if graph_fingerprint(true_graph) != outcome.true_fingerprint:
        raise ProvenanceError(
            "crawl outcome does not belong to the supplied true graph"
        )
    true_stats = graph_statistics(true_graph)
    obs_stats = graph_statistics(outcome.observed)
    entries = []
    for name in _BIAS_STATS:
        t, t_note = true_stats[name]
        o, o_note = obs_stats[name]
        notes = []
        if t_note:
            notes.append(f"true: {t_note}")
        if o_note:
            notes.append(f"observed: {o_note}")
        rel = None
        if t is None or o is None:
            notes.append("deviation undefined")
        elif t == 0:
            if o != 0:
                notes.append("true value is zero; deviation undefined")
            else:
                rel = 0.0
        else:
            rel = (o - t) / abs(t)
        entries.append(
            BiasEntry(name, t, o, rel, "; ".join(notes) if notes else None)
        )
    return BiasReport(tuple(entries))


# -- ensembles -------------------------------------------------------------


@dataclass(frozen=True)
class CrawlProto:
    """Crawl settings applied to every replica; seeds are drawn per
    replica. ``page_budget`` wins over ``budget_fraction``; both unset
    means unlimited."""

    strategy: CrawlStrategy = CrawlStrategy.BFS
    frontier_mode: FrontierMode = FrontierMode.FETCHED_ONLY
    seed_count: int = 1
    page_budget: int | None = None
    budget_fraction: float | None = None


@dataclass(frozen=True)
class ReplicaResult:
    index: int
    generation: GenerationReport
    outcome: CrawlOutcome
    bias: BiasReport


def replica_seed(master_seed: int, index: int, stream: int) -> int:
    """Counter-mode derivation: one independent seed per (replica,
    purpose) pair, stable across runs and worker counts."""
    ss = np.random.SeedSequence((master_seed, index, stream))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def run_ensemble(
    gen_cfg: GeneratorConfig,
    proto: CrawlProto,
    replicas: int,
    master_seed: int,
) -> list[ReplicaResult]:
    """Generate, crawl, and bias-report ``replicas`` times with seeds
    derived from ``master_seed`` in counter mode."""
    results = []
    for i in range(replicas):
        cfg_i = replace(gen_cfg, rng_seed=replica_seed(master_seed, i, 0))
        graph, gen_report = generate(cfg_i)
        n = graph.node_count
        rng = np.random.default_rng(replica_seed(master_seed, i, 1))
        seed_count = min(proto.seed_count, n)
        seeds = tuple(int(s) for s in rng.choice(n, size=seed_count, replace=False))
        if proto.page_budget is not None:
            budget = proto.page_budget
        elif proto.budget_fraction is not None:
            budget = max(seed_count, int(round(proto.budget_fraction * n)))
        else:
            budget = None
        crawl_cfg = CrawlConfig(
            seeds=seeds,
            strategy=proto.strategy,
            page_budget=budget,
            frontier_mode=proto.frontier_mode,
            rng_seed=replica_seed(master_seed, i, 2),
        )
        outcome = simulate_crawl(graph, crawl_cfg)
        results.append(
            ReplicaResult(i, gen_report, outcome, bias_report(graph, outcome))
        )
    return results
