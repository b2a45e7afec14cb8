"""Command-line front end: ingest -> predict -> evaluate, plus a scaling bench.

Exit codes: 0 success, 1 compute error, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import datasets
from .embedding import fit_exponent
from .errors import ConfigError, InputError, SpeclinkError
from .evaluation import choose_k, evaluate, format_table, read_report, timed, write_report
from .kernels import DEFAULT_DENSE_GUARD, DEFAULT_KATZ_BETA, DEFAULT_PAGERANK_ALPHA
from .predictors import PredictorSpec, run_predictor
from .spectral import DEFAULT_TOL, compute_embedding

log = logging.getLogger("speclink")

PREDICTION_HEADER = "u\tv\tscore\trank"


def _format_spec(args):
    base = {"ssv": None, "csv": ",", "tsv": "\t"}[args.format]
    delim = args.delimiter if args.delimiter is not None else base
    return datasets.FormatSpec(delimiter=delim, ts_col=args.ts_col - 1 if args.ts_col else None)


def _load_records(path, fmt):
    recs = datasets.parse_edge_list(Path(path), fmt)
    log.info("%s: %d records (%d self-loops dropped)", path, len(recs), recs.self_loops)
    return recs


def cmd_ingest(args):
    fmt = _format_spec(args)
    for p in args.input:
        if not Path(p).exists():
            raise InputError(f"no such file: {p}")
    if len(args.input) == 2:
        early, late = (_load_records(p, fmt) for p in args.input)
        split = {"mode": "two-snapshot"}
        train, test = datasets.split_two_snapshot(early, late)
        full = late
    elif len(args.input) == 1:
        records = _load_records(args.input[0], fmt)
        if args.cutoff is not None:
            spec = datasets.SplitSpec("cutoff", cutoff=args.cutoff)
        elif args.train_fraction is not None:
            spec = datasets.SplitSpec("fraction", train_fraction=args.train_fraction)
        else:
            raise ConfigError("one input file needs --cutoff or --train-fraction")
        split = {"mode": spec.mode, "cutoff": spec.cutoff, "train_fraction": spec.train_fraction}
        train, test = datasets.split_by_cutoff(records, spec)
        full = records
    else:
        raise ConfigError("--input takes one file (temporal split) or two (early, late snapshots)")
    if args.downsample is not None:
        keep = datasets.downsample_top_degree(full, args.downsample)
        kept = {x for r in keep for x in (r.u, r.v)}
        train = [r for r in train if r.u in kept and r.v in kept]
        test = [r for r in test if r.u in kept and r.v in kept]
        full = keep
    instance = datasets.build_instance(train, test, full_records=full)
    provenance = {
        "sources": [str(Path(p).resolve()) for p in args.input],
        "split": split,
        "downsample": args.downsample,
    }
    out = datasets.write_instance(instance, args.out, provenance)
    print(instance.stats.table(args.name))
    print(f"test links: {instance.stats.test_links}")
    print(f"instance written to {out}")
    return 0


def _predictor_spec(name, args):
    if name in ("spec", "spectral"):
        name = f"spec_{args.score}"
    return PredictorSpec.parse(
        name, dim=args.dim, beta=args.beta, alpha=args.alpha, dense_guard=args.dense_guard
    )


def _resolve_k(args, instance):
    if args.k is not None:
        return args.k
    return choose_k(len(instance.test_links), args.k_policy)


def write_predictions(path, predictions, labels):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(PREDICTION_HEADER + "\n")
        for rank, p in enumerate(predictions, start=1):
            fh.write(f"{labels[p.x]}\t{labels[p.y]}\t{p.score!r}\t{rank}\n")


def read_predictions(path, instance):
    """Prediction file rows mapped back to the instance's vertex ids."""
    conv = int if all(isinstance(x, int) for x in instance.labels) else str
    ids = {lab: i for i, lab in enumerate(instance.labels)}
    out = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != PREDICTION_HEADER:
            raise InputError(f"{path}: missing prediction header")
        for line in fh:
            u, v, _, _ = line.rstrip("\n").split("\t")
            try:
                out.append((ids[conv(u)], ids[conv(v)]))
            except (KeyError, ValueError):
                raise InputError(f"{path}: unknown vertex in line {line.strip()!r}") from None
    return out


def cmd_predict(args):
    instance = datasets.read_instance(args.input)
    spec = _predictor_spec(args.predictor, args)
    k = _resolve_k(args, instance)
    embedding = None
    start = time.perf_counter()
    if spec.name.startswith("spec_"):
        embedding = compute_embedding(instance.train, spec.dim, tol=args.tol)
    preds = run_predictor(spec, instance.train, k, embedding=embedding, enforce_k_limit=not args.allow_large_k)
    seconds = time.perf_counter() - start
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_predictions(out, preds, instance.labels)
    meta = {"predictor": spec.label, "k": k, "returned": len(preds), "seconds": seconds}
    out.with_name(out.name + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    print(f"{spec.label}: {len(preds)} predictions in {seconds:.2f}s -> {out}")
    return 0


def cmd_evaluate(args):
    instance = datasets.read_instance(args.input)
    k = _resolve_k(args, instance)
    reports = []
    for path in args.predictions or []:
        pairs = read_predictions(path, instance)
        meta_path = Path(str(path) + ".meta.json")
        meta = json.loads(meta_path.read_text()) if meta_path.exists() else {}
        reports.append(
            evaluate(pairs, instance, name=meta.get("predictor", Path(path).stem),
                     seconds=meta.get("seconds", float("nan")), k=meta.get("k", len(pairs)))
        )
    for name in args.predictor or []:
        spec = _predictor_spec(name, args)
        preds, seconds = timed(run_predictor, spec, instance.train, k, enforce_k_limit=not args.allow_large_k)
        reports.append(evaluate(preds, instance, name=spec.label, seconds=seconds, k=k))
    if not reports:
        raise ConfigError("evaluate needs --predictions files or --predictor names")
    if args.out:
        write_report(reports, args.out)
    print(format_table(reports))
    print(f"random baseline: {reports[0].baseline_percent:.4f}%")
    return 0


def cmd_bench(args):
    from .embedding import euclid_from_embedding
    from .synthetic import preferential_attachment_graph

    sizes = [2**e for e in range(args.min_exp, args.max_exp + 1)]
    rows = []
    for n in sizes:
        g = preferential_attachment_graph(n, args.edges_per_vertex, seed=args.seed)
        emb, t_embed = timed(compute_embedding, g, args.dim, tol=args.tol)
        k = min(args.k, g.num_edges)
        _, t_search = timed(euclid_from_embedding, g, emb.coords, k)
        rows.append((n, g.num_edges, k, t_embed, t_search))
        print(f"n={n:>8} |E|={g.num_edges:>9} k={k:>6} embed={t_embed:8.2f}s search={t_search:8.2f}s",
              flush=True)
    if len(rows) >= 2:
        edges = [r[1] for r in rows]
        print(f"embedding exponent vs |E|: {fit_exponent(edges, [r[3] for r in rows]):.3f}")
        print(f"search exponent vs |E|:    {fit_exponent(edges, [r[4] for r in rows]):.3f}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("n,edges,k,embed_seconds,search_seconds\n")
            for r in rows:
                fh.write(",".join(map(str, r)) + "\n")
    return 0


def cmd_report(args):
    print(format_table(read_report(args.input)))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="speclink", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--threads", type=int, default=None, help="BLAS thread count")
    sub = parser.add_subparsers(dest="command", required=True)

    def predictor_flags(p):
        p.add_argument("--dim", type=int, default=8, help="embedding dimension d")
        p.add_argument("--score", choices=("euclid", "cosine"), default="euclid")
        p.add_argument("--beta", type=float, default=DEFAULT_KATZ_BETA, help="Katz weight")
        p.add_argument("--alpha", type=float, default=DEFAULT_PAGERANK_ALPHA, help="rooted PageRank alpha")
        p.add_argument("--k", type=int, default=None, help="links to predict")
        p.add_argument("--k-policy", choices=("ten-percent",), default="ten-percent")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="eigensolver tolerance")
        p.add_argument("--dense-guard", type=int, default=DEFAULT_DENSE_GUARD,
                       help="largest n for dense kernels (katz, pagerank, resistance)")
        p.add_argument("--allow-large-k", action="store_true", help="permit k > |E|")

    p = sub.add_parser("ingest", help="parse, split and LCC-reduce an edge list")
    p.add_argument("--input", nargs="+", required=True, help="one timestamped file, or early and late snapshots")
    p.add_argument("--format", choices=("ssv", "csv", "tsv"), default="ssv")
    p.add_argument("--delimiter", default=None)
    p.add_argument("--ts-col", type=int, default=None, help="1-based timestamp column")
    p.add_argument("--cutoff", type=int, default=None)
    p.add_argument("--train-fraction", type=float, default=None)
    p.add_argument("--downsample", type=float, default=None, help="keep this fraction of top-degree vertices")
    p.add_argument("--name", default="network")
    p.add_argument("--out", required=True, help="instance directory")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("predict", help="run one predictor on an instance")
    p.add_argument("--input", required=True, help="instance directory")
    p.add_argument("--predictor", required=True)
    p.add_argument("--out", required=True, help="predictions file")
    predictor_flags(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="score predictions against the test links")
    p.add_argument("--input", required=True, help="instance directory")
    p.add_argument("--predictions", nargs="*", help="prediction files")
    p.add_argument("--predictor", nargs="*", help="predictors to run and score")
    p.add_argument("--out", default=None, help="report CSV")
    predictor_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bench", help="time embedding and search on synthetic graphs")
    p.add_argument("--min-exp", type=int, default=12)
    p.add_argument("--max-exp", type=int, default=17)
    p.add_argument("--edges-per-vertex", type=int, default=10)
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--k", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("report", help="pretty-print a report CSV")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.threads:
            from threadpoolctl import threadpool_limits

            with threadpool_limits(args.threads):
                return args.func(args)
        return args.func(args)
    except (InputError, ConfigError, FileNotFoundError) as exc:
        print(f"speclink: error: {exc}", file=sys.stderr)
        return 2
    except SpeclinkError as exc:
        print(f"speclink: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
