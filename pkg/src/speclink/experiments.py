"""Run a predictor roster on one instance and tabulate the results."""

from __future__ import annotations

import logging

from .evaluation import choose_k, evaluate, timed
from .predictors import PredictorSpec, run_predictor
from .reference import ACCURACY

log = logging.getLogger(__name__)

DEFAULT_ROSTER = (
    "katz", "common-neighbors", "preferential-attachment",
    "spec_euclid1", "spec_cosine1", "spec_euclid2", "spec_cosine2",
    "spec_euclid4", "spec_cosine4", "spec_euclid8", "spec_cosine8",
    "spec_euclid16", "spec_cosine16",
)


def run_roster(instance, predictors=DEFAULT_ROSTER, k=None, skip_errors=True, **params):
    """Evaluate each named predictor on ``instance``.

    ``k`` defaults to 10% of the test links. Predictors that fail (for
    example a dense kernel above the size guard) are logged and skipped
    unless ``skip_errors`` is false.
    """
    if k is None:
        k = choose_k(len(instance.test_links))
    reports = []
    for name in predictors:
        spec = PredictorSpec.parse(name, **params)
        try:
            preds, seconds = timed(run_predictor, spec, instance.train, k, enforce_k_limit=False)
        except Exception as exc:
            if not skip_errors:
                raise
            log.warning("%s skipped: %s", spec.label, exc)
            continue
        reports.append(evaluate(preds, instance, name=spec.label, seconds=seconds, k=k))
    return reports


def compare_with_reference(reports, network):
    """Rows of (predictor, measured %, published %) for ``network``."""
    published = ACCURACY.get(network, {})
    return [(r.name, r.percent, published.get(r.name)) for r in reports]
