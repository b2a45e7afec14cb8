"""Precision-at-k scoring, random baseline and report files."""

from __future__ import annotations

import csv
import math
import time
from dataclasses import asdict, dataclass, fields

import numpy as np

from .errors import ConfigError, PredictionValidationError

REPORT_COLUMNS = ("name", "k", "correct", "percent", "seconds", "baseline_percent")


@dataclass(frozen=True)
class EvaluationReport:
    name: str
    k: int
    correct: int
    percent: float
    seconds: float
    baseline_percent: float
    nodes: int = 0
    edges: int = 0
    test_links: int = 0

    def row(self):
        return {
            "name": self.name,
            "k": str(self.k),
            "correct": str(self.correct),
            "percent": repr(float(self.percent)),
            "seconds": repr(float(self.seconds)),
            "baseline_percent": repr(float(self.baseline_percent)),
        }

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})


def _codes(x, y, n):
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    return np.minimum(x, y) * np.int64(n) + np.maximum(x, y)


def evaluate(predictions, instance, name="", seconds=float("nan"), k=None):
    """Count how many predicted pairs are test links.

    ``k`` defaults to the number of predictions; pass the requested k when a
    predictor returned fewer pairs than asked, so the shortfall counts as
    misses.

    Raises
    ------
    PredictionValidationError
        If a prediction is an edge of the training graph.
    """
    g = instance.train
    xs = np.array([p[0] for p in predictions], dtype=np.int64)
    ys = np.array([p[1] for p in predictions], dtype=np.int64)
    bad = g.contains_pairs(xs, ys) if len(xs) else np.zeros(0, dtype=bool)
    if bad.any():
        first = int(np.argmax(bad))
        raise PredictionValidationError(
            f"{name or 'predictor'} predicted training edge ({xs[first]}, {ys[first]})"
        )
    k = len(predictions) if k is None else int(k)
    codes = np.unique(_codes(xs, ys, g.n))
    correct = int(np.isin(codes, instance.test_codes).sum())
    percent = 100.0 * correct / k if k else 0.0
    st = instance.stats
    return EvaluationReport(
        name, k, correct, percent, float(seconds), random_baseline(instance),
        st.nodes, st.edges, st.test_links,
    )


def random_baseline(instance):
    """Percent chance that a uniformly random non-edge is a test link."""
    g = instance.train
    non_edges = g.n * (g.n - 1) // 2 - g.num_edges
    if non_edges <= 0:
        return 0.0
    return 100.0 * len(instance.test_links) / non_edges


def choose_k(test_link_count, policy="ten-percent", fixed=None):
    """Number of links to predict.

    ``ten-percent`` rounds 10% of the test links half-up, with a floor of 1;
    ``fixed`` returns ``fixed`` unchanged.
    """
    if policy == "fixed":
        if fixed is None or fixed < 1:
            raise ConfigError("fixed k policy needs a positive k")
        return int(fixed)
    if policy != "ten-percent":
        raise ConfigError(f"unknown k policy {policy!r}")
    return max(1, math.floor(0.1 * test_link_count + 0.5 + 1e-9))


def timed(fn, *args, **kwargs):
    """Call ``fn`` and return ``(result, wall seconds)``."""
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def write_report(reports, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=REPORT_COLUMNS)
        writer.writeheader()
        for rep in reports:
            writer.writerow(rep.row())


def read_report(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != REPORT_COLUMNS:
            raise ValueError(f"{path} lacks the report header {','.join(REPORT_COLUMNS)}")
        return [
            EvaluationReport(
                r["name"], int(r["k"]), int(r["correct"]), float(r["percent"]),
                float(r["seconds"]), float(r["baseline_percent"]),
            )
            for r in reader
        ]


def format_table(reports):
    """Plain-text table: Predictor, Correct (%), Time (s)."""
    rows = [("Predictor", "Correct (%)", "Time (s)")]
    rows += [(r.name, f"{r.percent:.2f}", f"{r.seconds:.2f}") for r in reports]
    widths = [max(len(row[i]) for row in rows) for i in range(3)]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in rows)
