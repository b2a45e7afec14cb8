"""Edge-list ingestion, temporal splits, LCC reduction and instance files."""

from __future__ import annotations

import io
import json
import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import ConfigError, InputError
from .graph import Graph, build_graph, connected_components

log = logging.getLogger(__name__)

COMMENT_PREFIXES = ("#", "%")
SPLIT_MODES = ("cutoff", "fraction", "two-snapshot")


class EdgeRecord(NamedTuple):
    u: object
    v: object
    timestamp: int | None = None


class EdgeList(list):
    """List of :class:`EdgeRecord` that remembers how many self-loops were dropped."""

    def __init__(self, records=(), self_loops=0):
        super().__init__(records)
        self.self_loops = self_loops


@dataclass(frozen=True)
class FormatSpec:
    """Column layout of an edge-list file.

    ``delimiter=None`` splits on runs of whitespace. Column indexes are
    zero-based; ``ts_col=None`` means the file has no timestamps.
    """

    delimiter: str | None = None
    u_col: int = 0
    v_col: int = 1
    ts_col: int | None = None

    @classmethod
    def parse(cls, text):
        """Build from a short string like ``"ssv"``, ``"csv"``, ``"ssv:ts=3"``."""
        kind, _, opts = text.partition(":")
        delim = {"ssv": None, "ws": None, "csv": ",", "tsv": "\t"}.get(kind)
        if kind not in ("ssv", "ws", "csv", "tsv"):
            raise ConfigError(f"unknown format {text!r}; expected ssv, csv or tsv")
        ts = None
        for opt in filter(None, opts.split(",")):
            key, _, val = opt.partition("=")
            if key != "ts":
                raise ConfigError(f"unknown format option {key!r}")
            ts = int(val) - 1
        return cls(delimiter=delim, ts_col=ts)


class ParseError(InputError):
    def __init__(self, problems):
        self.problems = problems
        shown = "; ".join(f"line {ln}: {msg}" for ln, msg in problems[:10])
        more = f" (+{len(problems) - 10} more)" if len(problems) > 10 else ""
        super().__init__(f"malformed edge list: {shown}{more}")


def _label(tok):
    try:
        return int(tok)
    except ValueError:
        return tok


def _timestamp(tok):
    try:
        return int(tok)
    except ValueError:
        value = float(tok)
        if not math.isfinite(value):
            raise
        return int(value)


def parse_edge_list(source, fmt=FormatSpec()):
    """Parse an edge list into records, in file order.

    ``source`` may be a path, a binary or text stream, or bytes. Lines
    starting with ``#`` or ``%`` and blank lines are skipped; self-loops are
    dropped and counted in ``result.self_loops``.

    Raises
    ------
    ParseError
        Listing the line number of every malformed line.
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        if not path.exists():
            raise InputError(f"no such file: {path}")
        stream = open(path, encoding="utf-8")
    elif isinstance(source, (bytes, bytearray)):
        stream = io.StringIO(source.decode("utf-8"))
    elif isinstance(source, io.TextIOBase):
        stream = source
    else:
        stream = io.TextIOWrapper(source, encoding="utf-8")
    need = max(fmt.u_col, fmt.v_col, fmt.ts_col if fmt.ts_col is not None else -1) + 1
    records, problems, loops = [], [], 0
    with stream:
        for lineno, line in enumerate(stream, start=1):
            line = line.strip()
            if not line or line.startswith(COMMENT_PREFIXES):
                continue
            parts = line.split(fmt.delimiter)
            if fmt.delimiter is not None:
                parts = [p.strip() for p in parts]
            if len(parts) < need:
                problems.append((lineno, f"expected at least {need} columns, got {len(parts)}"))
                continue
            u, v = _label(parts[fmt.u_col]), _label(parts[fmt.v_col])
            ts = None
            if fmt.ts_col is not None:
                try:
                    ts = _timestamp(parts[fmt.ts_col])
                except ValueError:
                    problems.append((lineno, f"bad timestamp {parts[fmt.ts_col]!r}"))
                    continue
            if u == v:
                loops += 1
                continue
            records.append(EdgeRecord(u, v, ts))
    if problems:
        raise ParseError(problems)
    if loops:
        log.info("dropped %d self-loop records", loops)
    return EdgeList(records, loops)


@dataclass(frozen=True)
class SplitSpec:
    mode: str
    cutoff: int | None = None
    train_fraction: float | None = None

    def __post_init__(self):
        if self.mode not in SPLIT_MODES:
            raise ConfigError(f"split mode must be one of {SPLIT_MODES}")
        if self.mode == "cutoff" and (self.cutoff is None or self.train_fraction is not None):
            raise ConfigError("cutoff mode needs exactly a cutoff")
        if self.mode == "fraction":
            if self.cutoff is not None or self.train_fraction is None:
                raise ConfigError("fraction mode needs exactly a train fraction")
            if not 0 < self.train_fraction < 1:
                raise ConfigError("train fraction must lie in (0, 1)")
        if self.mode == "two-snapshot" and (
            self.cutoff is not None or self.train_fraction is not None
        ):
            raise ConfigError("two-snapshot mode takes no parameters")


def split_by_cutoff(records, spec):
    """Temporal split: ``timestamp <= cutoff`` trains, the rest tests.

    In fraction mode the records are stably sorted by timestamp (file order
    when untimestamped) and the first ``floor(fraction * len)`` train.
    """
    records = list(records)
    if spec.mode == "cutoff":
        if any(r.timestamp is None for r in records):
            raise ConfigError("cutoff split needs every record to carry a timestamp")
        train = [r for r in records if r.timestamp <= spec.cutoff]
        test = [r for r in records if r.timestamp > spec.cutoff]
        if not train:
            log.warning("cutoff %s precedes every timestamp; training set is empty", spec.cutoff)
        return train, test
    if spec.mode == "fraction":
        if all(r.timestamp is not None for r in records):
            records = sorted(records, key=lambda r: r.timestamp)
        count = math.floor(spec.train_fraction * len(records) + 1e-9)
        return records[:count], records[count:]
    raise ConfigError("two-snapshot splits take two record lists; use split_two_snapshot")


def _pair(u, v):
    return (u, v) if _sort_key(u) <= _sort_key(v) else (v, u)


def _sort_key(label):
    return (0, label, "") if isinstance(label, int) else (1, 0, str(label))


def split_two_snapshot(early, late):
    """Train on ``early``; test on late edges among early vertices that are new."""
    early = list(early)
    seen = set()
    existing = set()
    for r in early:
        seen.update((r.u, r.v))
        existing.add(_pair(r.u, r.v))
    test = [
        r
        for r in late
        if r.u in seen and r.v in seen and _pair(r.u, r.v) not in existing
    ]
    return early, test


def index_labels(labels):
    """Dense ids for labels: integers numerically first, then strings."""
    return sorted(set(labels), key=_sort_key)


def graph_from_records(records, labels=None):
    """Build a graph over the records' labels; returns ``(graph, label -> id)``."""
    if labels is None:
        labels = index_labels(x for r in records for x in (r.u, r.v))
    ids = {lab: i for i, lab in enumerate(labels)}
    pairs = np.array([(ids[r.u], ids[r.v]) for r in records], dtype=np.int64).reshape(-1, 2)
    return build_graph(pairs, len(labels), labels=list(labels)), ids


def largest_connected_component(g):
    """Induced subgraph on the largest component, plus old ids of its vertices.

    Ties go to the component holding the smallest vertex id.
    """
    if g.n == 0:
        raise InputError("graph is empty")
    count, comp = connected_components(g)
    sizes = np.bincount(comp, minlength=count)
    first = np.full(count, g.n, dtype=np.int64)
    np.minimum.at(first, comp, np.arange(g.n))
    best = np.lexsort((first, -sizes))[0]
    keep = np.flatnonzero(comp == best)
    return g.subgraph(keep), keep


def downsample_top_degree(records, fraction):
    """Keep the records induced by the ``ceil(fraction * n)`` highest-degree vertices.

    Degrees come from the graph over all records; ties favor smaller ids.
    """
    if not 0 < fraction <= 1:
        raise ConfigError(f"fraction must lie in (0, 1], got {fraction}")
    records = list(records)
    g, ids = graph_from_records(records)
    keep_n = math.ceil(fraction * g.n - 1e-9)
    order = np.lexsort((np.arange(g.n), -g.degrees))[:keep_n]
    kept = np.zeros(g.n, dtype=bool)
    kept[order] = True
    return [r for r in records if kept[ids[r.u]] and kept[ids[r.v]]]


@dataclass
class InstanceStats:
    full_nodes: int
    full_edges: int
    nodes: int
    edges: int
    test_links: int
    dropped_outside_lcc: int = 0
    dropped_train_edges: int = 0

    @property
    def full_average_degree(self):
        return 2 * self.full_edges / self.full_nodes if self.full_nodes else 0.0

    @property
    def average_degree(self):
        return 2 * self.edges / self.nodes if self.nodes else 0.0

    def table(self, name="network"):
        """Rows in the layout Network / Nodes / Edges / Average Degree."""
        rows = [
            ("Network", "Nodes", "Edges", "Average Degree"),
            (name, f"{self.full_nodes:,}", f"{self.full_edges:,}", f"{self.full_average_degree:.4f}"),
            (f"{name} train", f"{self.nodes:,}", f"{self.edges:,}", f"{self.average_degree:.4f}"),
        ]
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows)


@dataclass
class LinkPredictionInstance:
    """Connected training graph plus the test links to recover.

    ``test_links`` holds canonical ``(x, y)`` pairs, x < y, over the train
    graph's vertex ids, sorted lexicographically.
    """

    train: Graph
    test_links: np.ndarray
    stats: InstanceStats
    provenance: dict = field(default_factory=dict)

    @property
    def labels(self):
        return self.train.labels

    @property
    def test_codes(self):
        return self.test_links[:, 0] * np.int64(self.train.n) + self.test_links[:, 1]


def build_instance(train_records, test_records, full_records=None):
    """Training graph (reduced to its LCC) and the test links it can predict.

    ``full_records`` describes the whole network for the statistics table;
    it defaults to train plus test.
    """
    train_records = list(train_records)
    test_records = list(test_records)
    if not train_records:
        raise InputError("no training records")
    full, _ = graph_from_records(
        list(full_records) if full_records is not None else train_records + test_records
    )
    g, _ = graph_from_records(train_records)
    lcc, _ = largest_connected_component(g)
    if lcc.n < 2:
        raise InputError("largest connected component has fewer than 2 vertices")
    ids = {lab: i for i, lab in enumerate(lcc.labels)}
    pairs, outside = [], 0
    for r in test_records:
        a, b = ids.get(r.u), ids.get(r.v)
        if a is None or b is None:
            outside += 1
            continue
        pairs.append((min(a, b), max(a, b)))
    arr = np.unique(np.array(pairs, dtype=np.int64).reshape(-1, 2), axis=0)
    is_edge = lcc.contains_pairs(arr[:, 0], arr[:, 1]) if len(arr) else np.zeros(0, bool)
    arr = arr[~is_edge]
    if len(arr) == 0:
        log.warning("no test links survive LCC reduction and edge filtering")
    stats = InstanceStats(
        full_nodes=full.n,
        full_edges=full.num_edges,
        nodes=lcc.n,
        edges=lcc.num_edges,
        test_links=len(arr),
        dropped_outside_lcc=outside,
        dropped_train_edges=int(is_edge.sum()),
    )
    return LinkPredictionInstance(lcc, arr, stats)


def _write_labels(path, labels):
    with open(path, "w", encoding="utf-8") as fh:
        for lab in labels:
            fh.write(f"{lab}\n")


def write_instance(instance, outdir, provenance=None):
    """Write ``labels.txt``, ``train.tsv``, ``test.tsv`` and ``manifest.json``.

    Edge files hold one ``u<TAB>v`` label pair per line; vertex ids are the
    line numbers (from 0) of ``labels.txt``.
    """
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    labels = instance.labels
    _write_labels(out / "labels.txt", labels)
    for name, pairs in (("train.tsv", instance.train.edges), ("test.tsv", instance.test_links)):
        with open(out / name, "w", encoding="utf-8") as fh:
            for a, b in pairs.tolist():
                fh.write(f"{labels[a]}\t{labels[b]}\n")
    manifest = {
        "label_type": "int" if all(isinstance(x, int) for x in labels) else "str",
        "stats": asdict(instance.stats),
        "average_degree": instance.stats.average_degree,
        "full_average_degree": instance.stats.full_average_degree,
        **instance.provenance,
        **(provenance or {}),
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, default=str) + "\n")
    return out


def read_instance(outdir):
    out = Path(outdir)
    if not (out / "manifest.json").exists():
        raise InputError(f"no instance manifest in {out}")
    manifest = json.loads((out / "manifest.json").read_text())
    conv = int if manifest.get("label_type") == "int" else str
    labels = [conv(x) for x in (out / "labels.txt").read_text(encoding="utf-8").splitlines()]
    ids = {lab: i for i, lab in enumerate(labels)}

    def pairs(name):
        rows = []
        for line in (out / name).read_text(encoding="utf-8").splitlines():
            if line:
                a, b = line.split("\t")
                rows.append((ids[conv(a)], ids[conv(b)]))
        return np.array(rows, dtype=np.int64).reshape(-1, 2)

    train = build_graph(pairs("train.tsv"), len(labels), labels=labels)
    test = pairs("test.tsv")
    test = np.unique(np.column_stack([test.min(axis=1), test.max(axis=1)]), axis=0) if len(test) else test
    stats = InstanceStats(**manifest["stats"])
    provenance = {k: v for k, v in manifest.items() if k not in ("stats", "label_type")}
    return LinkPredictionInstance(train, test, stats, provenance)
