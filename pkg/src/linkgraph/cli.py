"""Command-line interface: one executable, one subcommand per analysis.

Subcommands: ingest, bowtie, degrees, corr, recip, simulate, report.
Every flag can also be supplied through an environment variable named
``LINKGRAPH_<FLAG>`` (dashes become underscores, upper-cased);
explicit flags win. All randomness flows from ``--seed`` with a fixed
default of 1, never from the clock, and no statistic is computed in
this layer; commands only orchestrate library calls and serialize
results. Exit codes: 0 success, 2 usage, 3 unreadable or malformed
input, 4 numeric or generation failure.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import export
from .components import bowtie_decompose
from .correlations import (
    KnnVariant,
    avg_out_given_in,
    crossed_one_point,
    directed_knn,
    knn_undirected,
)
from .crawl_sim import (
    CrawlProto,
    CrawlStrategy,
    FrontierMode,
    GeneratorConfig,
    PoissonDegreeLaw,
    ZetaDegreeLaw,
    law_mean,
    run_ensemble,
)
from .degree_stats import (
    Direction,
    cumulative,
    degree_histogram,
    mle_powerlaw,
    select_fit_range,
    summarize,
)
from .errors import (
    CacheFormatError,
    EdgeListParseError,
    GenerationError,
    PowerLawFitError,
    ProvenanceError,
    UndefinedStatisticError,
)
from .graph import build_from_edge_list, load_cache, save_cache
from .reciprocity import (
    ReciprocalKnnVariant,
    avg_clustering_by_degree,
    conditional_means_nr,
    crossed_one_point_nr,
    decompose,
    r_degree_stats,
    reciprocal_knn,
    reciprocal_scatter,
    reciprocal_subgraph,
)

DEFAULT_SEED = 1
ENV_PREFIX = "LINKGRAPH_"

log = logging.getLogger("linkgraph")


class _UsageError(Exception):
    pass


def _env_key(long_opt: str) -> str:
    return ENV_PREFIX + long_opt.lstrip("-").replace("-", "_").upper()


def _add(parser: argparse.ArgumentParser, *names, **kw) -> None:
    """add_argument with environment-variable default injection."""
    long_opt = names[-1]
    key = _env_key(long_opt)
    if key in os.environ:
        raw = os.environ[key]
        if kw.get("action") == "store_true":
            kw["default"] = raw.strip().lower() in ("1", "true", "yes", "on")
        else:
            caster = kw.get("type", str)
            try:
                val = caster(raw)
            except ValueError:
                raise _UsageError(f"environment variable {key}={raw!r} is invalid")
            choices = kw.get("choices")
            if choices is not None and val not in choices:
                raise _UsageError(
                    f"environment variable {key}={raw!r} not one of {sorted(choices)}"
                )
            kw["default"] = val
        kw.pop("required", None)
    parser.add_argument(*names, **kw)


def _common_flags(p: argparse.ArgumentParser, source: bool = True) -> None:
    if source:
        _add(p, "--input", type=str, default=None, help="edge-list file (may be gzip)")
        _add(p, "--cache", type=str, default=None, help="binary graph cache file")
    _add(p, "--out", type=str, default=None, help="directory for output files")
    _add(
        p,
        "--format",
        type=str,
        choices=("csv", "json"),
        default="csv",
        help="tabular output format (default csv)",
    )
    _add(p, "--workers", type=int, default=1, help="parallelism cap; results never depend on it")
    _add(p, "--seed", type=int, default=DEFAULT_SEED, help="master RNG seed (default 1)")
    _add(p, "--verbose", action="store_true", default=False, help="progress on stderr")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="linkgraph",
        description="Structural analysis of directed link graphs.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse an edge list and write a binary cache")
    _add(p, "--input", type=str, required=True, help="edge-list file (may be gzip)")
    _add(p, "--cache", type=str, default=None, help="cache file to write")
    _add(p, "--out", type=str, default=None)
    _add(p, "--format", type=str, choices=("csv", "json"), default="csv")
    _add(p, "--workers", type=int, default=1)
    _add(p, "--seed", type=int, default=DEFAULT_SEED)
    _add(p, "--verbose", action="store_true", default=False)
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("bowtie", help="bow-tie decomposition")
    _common_flags(p)
    _add(p, "--classes", action="store_true", default=False, help="write per-node class CSV")
    p.set_defaults(fn=cmd_bowtie)

    p = sub.add_parser("degrees", help="degree histograms, moments, tail fits")
    _common_flags(p)
    _add(
        p,
        "--direction",
        type=str,
        choices=("in", "out", "undirected", "reciprocal", "all"),
        default="all",
    )
    _add(p, "--kmin", type=int, default=None, help="fixed lower fit cutoff (default: scan)")
    p.set_defaults(fn=cmd_degrees)

    p = sub.add_parser("corr", help="degree-degree correlation profiles")
    _common_flags(p)
    p.set_defaults(fn=cmd_corr)

    p = sub.add_parser("recip", help="reciprocity decomposition and statistics")
    _common_flags(p)
    _add(p, "--per-node", action="store_true", default=False, help="write per-node q CSV")
    _add(p, "--scatter", action="store_true", default=False, help="write raw scatter CSV")
    _add(p, "--export-subgraph", action="store_true", default=False)
    _add(p, "--kmin", type=int, default=None, help="fixed lower fit cutoff for q_r")
    p.set_defaults(fn=cmd_recip)

    p = sub.add_parser("simulate", help="generate, crawl, and report bias")
    _common_flags(p, source=False)
    _add(p, "--n", type=int, default=10000, help="node count")
    _add(p, "--gamma-in", type=float, default=None, help="power-law in-degree exponent")
    _add(p, "--kmin-in", type=int, default=1)
    _add(p, "--cutoff-in", type=int, default=None)
    _add(p, "--lambda-in", type=float, default=None, help="Poisson in-degree mean")
    _add(p, "--gamma-out", type=float, default=None)
    _add(p, "--kmin-out", type=int, default=1)
    _add(p, "--cutoff-out", type=int, default=None)
    _add(p, "--lambda-out", type=float, default=None)
    _add(p, "--reciprocity", type=float, default=0.0, help="target reciprocal fraction")
    _add(p, "--replicas", type=int, default=1)
    _add(
        p,
        "--strategy",
        type=str,
        choices=tuple(s.value for s in CrawlStrategy),
        default=CrawlStrategy.BFS.value,
    )
    _add(p, "--budget", type=int, default=None, help="pages fetched per crawl")
    _add(p, "--budget-fraction", type=float, default=None)
    _add(p, "--seed-count", type=int, default=1, help="crawl seeds per replica")
    _add(
        p,
        "--frontier-mode",
        type=str,
        choices=tuple(m.value for m in FrontierMode),
        default=FrontierMode.FETCHED_ONLY.value,
    )
    _add(p, "--export-observed", action="store_true", default=False)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("report", help="merge JSON outputs into one document")
    _add(p, "--dir", type=str, required=True, help="directory of prior outputs")
    _add(p, "--out", type=str, default=None)
    _add(p, "--format", type=str, choices=("csv", "json"), default="csv")
    _add(p, "--workers", type=int, default=1)
    _add(p, "--seed", type=int, default=DEFAULT_SEED)
    _add(p, "--verbose", action="store_true", default=False)
    p.set_defaults(fn=cmd_report)

    return ap


# -- helpers ----------------------------------------------------------------


def _load_graph(args):
    if args.input and args.cache:
        raise _UsageError("give either --input or --cache, not both")
    if args.cache:
        data = Path(args.cache).read_bytes()
        return load_cache(data)
    if args.input:
        graph, _ = build_from_edge_list(args.input)
        return graph
    raise _UsageError("a graph source is required (--input or --cache)")


def _outdir(args) -> Path | None:
    if args.out is None:
        return None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write(out: Path | None, name: str, text: str) -> None:
    if out is not None:
        (out / name).write_text(text, encoding="utf-8")


def _emit(args, doc: dict, files: dict[str, str]) -> None:
    """Print the JSON document; write it and the tabular files under
    --out. With --format json the tables are folded into the JSON
    document instead of standalone CSV files."""
    out = _outdir(args)
    if args.format == "json":
        doc = dict(doc)
        doc["tables"] = {
            name.rsplit(".", 1)[0]: table.splitlines() for name, table in files.items()
        }
        files = {}
    text = export.json_text(doc)
    sys.stdout.write(text)
    if out is not None:
        _write(out, f"{args.command}.json", text)
        for name, content in files.items():
            _write(out, name, content)


def _workers_ok(args) -> None:
    if getattr(args, "workers", 1) < 1:
        raise _UsageError("--workers must be >= 1")


# -- commands ----------------------------------------------------------------


def cmd_ingest(args) -> int:
    graph, report = build_from_edge_list(args.input)
    if args.cache:
        Path(args.cache).write_bytes(save_cache(graph))
        log.info("cache written to %s", args.cache)
    _emit(args, {"ingest": report.to_dict()}, {})
    return 0


def cmd_bowtie(args) -> int:
    graph = _load_graph(args)
    part = bowtie_decompose(graph)
    files = {"bowtie_summary.txt": export.partition_text(part)}
    if args.classes:
        files["bowtie_classes.csv"] = export.partition_classes_csv(part, graph)
    _emit(args, part.to_dict(), files)
    return 0


_DIRECTIONS = {
    "in": Direction.IN,
    "out": Direction.OUT,
    "undirected": Direction.UNDIRECTED,
    "reciprocal": Direction.RECIPROCAL,
}


def _fit_or_error(hist, kmin):
    try:
        if kmin is not None:
            return mle_powerlaw(hist, k_min=kmin), None
        k_min, _ = select_fit_range(hist)
        return mle_powerlaw(hist, k_min=k_min), None
    except PowerLawFitError as exc:
        return None, str(exc)


def cmd_degrees(args) -> int:
    graph = _load_graph(args)
    wanted = list(_DIRECTIONS) if args.direction == "all" else [args.direction]
    doc = {}
    files = {}
    for name in wanted:
        hist = degree_histogram(graph, _DIRECTIONS[name])
        curve = cumulative(hist)
        summary = summarize(hist)
        fit, fit_error = _fit_or_error(hist, args.kmin)
        doc[name] = export.summary_dict(summary, fit, fit_error)
        files[f"degrees_{name}.csv"] = export.histogram_csv(hist, curve)
    _emit(args, doc, files)
    return 0


def cmd_corr(args) -> int:
    graph = _load_graph(args)
    doc = {}
    files = {}
    try:
        ratio = crossed_one_point(graph)
        doc["crossed_one_point"] = {"value": ratio, "note": None}
    except UndefinedStatisticError as exc:
        doc["crossed_one_point"] = {"value": None, "note": str(exc)}
    try:
        files["corr_out_given_in.csv"] = export.profile_csv(avg_out_given_in(graph))
    except UndefinedStatisticError as exc:
        doc["out_given_in"] = {"note": str(exc)}
    try:
        from .graph import undirected_view

        files["corr_knn_undirected.csv"] = export.profile_csv(
            knn_undirected(undirected_view(graph))
        )
    except UndefinedStatisticError as exc:
        doc["knn_undirected"] = {"note": str(exc)}
    for variant in KnnVariant:
        try:
            profile = directed_knn(graph, variant)
            files[f"corr_knn_{variant.value}.csv"] = export.profile_csv(profile)
            doc.setdefault("normalizations", {})[variant.value] = profile.normalization
        except UndefinedStatisticError as exc:
            doc.setdefault("normalizations", {})[variant.value] = None
            doc.setdefault("profile_notes", {})[variant.value] = str(exc)
    _emit(args, doc, files)
    return 0


def cmd_recip(args) -> int:
    graph = _load_graph(args)
    d = decompose(graph)
    hist, summary = r_degree_stats(d)
    fit, fit_error = _fit_or_error(hist, args.kmin)
    doc = {
        "q_r": export.summary_dict(summary, fit, fit_error),
        "ratios": export.ratios_dict(crossed_one_point_nr(d)),
    }
    try:
        doc["reciprocity_fraction"] = d.reciprocity_fraction()
    except UndefinedStatisticError as exc:
        doc["reciprocity_fraction"] = None
        doc["reciprocity_note"] = str(exc)
    files = {"recip_qr_histogram.csv": export.histogram_csv(hist, cumulative(hist))}
    for key, profile in conditional_means_nr(d).items():
        files[f"recip_{key}.csv"] = export.profile_csv(profile)
    sub = reciprocal_subgraph(d)
    for variant in ReciprocalKnnVariant:
        files[f"recip_knn_{variant.value}.csv"] = export.profile_csv(
            reciprocal_knn(d, variant, sub)
        )
    try:
        files["recip_subgraph_knn.csv"] = export.profile_csv(knn_undirected(sub))
    except UndefinedStatisticError as exc:
        doc["subgraph_knn_note"] = str(exc)
    files["recip_clustering.csv"] = export.profile_csv(avg_clustering_by_degree(sub))
    if args.per_node:
        files["recip_decomposition.csv"] = export.decomposition_csv(d, graph)
    if args.scatter:
        files["recip_scatter.csv"] = export.scatter_csv(reciprocal_scatter(d, sub))
    if args.export_subgraph:
        files["recip_subgraph_edges.txt"] = export.edge_list_text(sub)
    _emit(args, doc, files)
    return 0


def _resolve_laws(args):
    if args.gamma_in is not None and args.lambda_in is not None:
        raise _UsageError("give either --gamma-in or --lambda-in, not both")
    if args.gamma_out is not None and args.lambda_out is not None:
        raise _UsageError("give either --gamma-out or --lambda-out, not both")
    if args.gamma_in is not None:
        cutoff = args.cutoff_in if args.cutoff_in is not None else max(10, args.n // 10)
        in_law = ZetaDegreeLaw(args.gamma_in, args.kmin_in, cutoff)
    elif args.lambda_in is not None:
        in_law = PoissonDegreeLaw(args.lambda_in)
    else:
        in_law = ZetaDegreeLaw(2.1, 1, max(10, args.n // 10))
    if args.gamma_out is not None:
        cutoff = args.cutoff_out if args.cutoff_out is not None else max(10, args.n // 10)
        out_law = ZetaDegreeLaw(args.gamma_out, args.kmin_out, cutoff)
    elif args.lambda_out is not None:
        out_law = PoissonDegreeLaw(args.lambda_out)
    else:
        out_law = PoissonDegreeLaw(law_mean(in_law, max_degree=args.n - 1))
    return in_law, out_law


def cmd_simulate(args) -> int:
    in_law, out_law = _resolve_laws(args)
    gen_cfg = GeneratorConfig(
        node_count=args.n,
        in_law=in_law,
        out_law=out_law,
        target_reciprocity=args.reciprocity,
        rng_seed=0,  # replaced per replica by the ensemble runner
    )
    proto = CrawlProto(
        strategy=CrawlStrategy(args.strategy),
        frontier_mode=FrontierMode(args.frontier_mode),
        seed_count=args.seed_count,
        page_budget=args.budget,
        budget_fraction=args.budget_fraction,
    )
    results = run_ensemble(gen_cfg, proto, args.replicas, args.seed)
    doc = {"replicas": []}
    files = {}
    for res in results:
        doc["replicas"].append(
            {
                "index": res.index,
                "generation": res.generation.to_dict(),
                "crawl": {
                    "seeds": [int(s) for s in res.outcome.config.seeds],
                    "strategy": res.outcome.config.strategy.value,
                    "page_budget": res.outcome.config.page_budget,
                    "frontier_mode": res.outcome.config.frontier_mode.value,
                    "fetched": int(len(res.outcome.fetched)),
                    "discovered": int(len(res.outcome.discovered)),
                },
                "bias": res.bias.to_dict(),
            }
        )
        files[f"bias_report_{res.index}.csv"] = export.bias_report_csv(res.bias)
        if args.export_observed:
            files[f"observed_{res.index}.txt"] = export.edge_list_text(
                res.outcome.observed
            )
        log.info("replica %d: fetched %d nodes", res.index, len(res.outcome.fetched))
    _emit(args, doc, files)
    return 0


def cmd_report(args) -> int:
    import json

    base = Path(args.dir)
    if not base.is_dir():
        raise FileNotFoundError(f"not a directory: {base}")
    merged = {}
    for path in sorted(base.glob("*.json")):
        if path.name == "report.json":
            continue
        merged[path.stem] = json.loads(path.read_text(encoding="utf-8"))
    out = _outdir(args)
    text = export.json_text(merged)
    sys.stdout.write(text)
    if out is not None:
        _write(out, "report.json", text)
    return 0


# -- entry point --------------------------------------------------------------


def main(argv=None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        _workers_ok(args)
        np.seterr(all="ignore")
        return args.fn(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (EdgeListParseError, CacheFormatError, FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except (
        GenerationError,
        PowerLawFitError,
        UndefinedStatisticError,
        ProvenanceError,
    ) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
