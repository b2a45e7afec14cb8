"""Name-based access to every predictor, as used by the CLI and experiments."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import kernels, local
from .embedding import EmbeddingPredictorConfig, predict_embedding
from .errors import ConfigError

ALIASES = {
    "commonneighbors": "common-neighbors",
    "common-neighbors": "common-neighbors",
    "cn": "common-neighbors",
    "jaccard": "jaccard",
    "adamicadar": "adamic-adar",
    "adamic-adar": "adamic-adar",
    "resourceallocation": "resource-allocation",
    "resource-allocation": "resource-allocation",
    "prefattach": "preferential-attachment",
    "preferential-attachment": "preferential-attachment",
    "katz": "katz",
    "pagerank": "pagerank",
    "rooted-pagerank": "pagerank",
    "resistance": "resistance",
    "commute-time": "resistance",
    "shortest-path": "shortest-path",
    "spec_euclid": "spec_euclid",
    "spec_cosine": "spec_cosine",
}

PREDICTOR_NAMES = tuple(sorted(set(ALIASES.values())))


@dataclass(frozen=True)
class PredictorSpec:
    """A predictor name plus its parameters.

    Names like ``spec_euclid8`` carry the embedding dimension as a suffix.
    """

    name: str
    dim: int = 8
    beta: float = kernels.DEFAULT_KATZ_BETA
    alpha: float = kernels.DEFAULT_PAGERANK_ALPHA
    dense_guard: int | None = kernels.DEFAULT_DENSE_GUARD
    extra: dict = field(default_factory=dict)

    @classmethod
    def parse(cls, text, **params):
        m = re.fullmatch(r"(spec_(?:euclid|cosine))(\d+)", text)
        if m:
            params["dim"] = int(m.group(2))
            text = m.group(1)
        key = ALIASES.get(text.lower().replace("_", "-") if not text.startswith("spec_") else text)
        if key is None:
            raise ConfigError(
                f"unknown predictor {text!r}; valid names: {', '.join(PREDICTOR_NAMES)}"
            )
        return cls(key, **params)

    @property
    def label(self):
        if self.name.startswith("spec_"):
            return f"{self.name}{self.dim}"
        return self.name


def run_predictor(spec, g, k, embedding=None, enforce_k_limit=True):
    """Top-k predictions of ``spec`` on ``g`` as a list of ScoredPair."""
    name = spec.name
    if name in local.LOCAL_METRICS:
        return local.predict_local(g, name, k)
    if name == "preferential-attachment":
        return local.predict_preferential_attachment(g, k)
    if name == "katz":
        K = kernels.katz_kernel(g, kernels.KatzParams(spec.beta), spec.dense_guard)
    elif name == "pagerank":
        K = kernels.rooted_pagerank_kernel(g, kernels.PageRankParams(spec.alpha), spec.dense_guard)
    elif name == "resistance":
        K = kernels.exact_resistance_kernel(g, spec.dense_guard)
    elif name == "shortest-path":
        K = kernels.shortest_path_kernel(g, spec.dense_guard)
    elif name in ("spec_euclid", "spec_cosine"):
        config = EmbeddingPredictorConfig(
            dim=spec.dim, score=name.split("_")[1], k=k, enforce_k_limit=enforce_k_limit
        )
        return predict_embedding(g, config, embedding)
    else:  # pragma: no cover - guarded by PredictorSpec.parse
        raise ConfigError(f"unknown predictor {name!r}")
    return kernels.predict_from_kernel(g, K, k)
