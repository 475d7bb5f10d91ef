"""Composite scoring: weighted features to borrowing probabilities.

The pipeline per word is:

    min-max normalize features over the vocabulary
    -> s  = weighted linear combination (weights rescaled per mode)
    -> s' = s * length modifier * part-of-speech modifier
    -> P  = scaled sigmoid of s'
    -> P' = anomaly-boosted probability, clamped to 1

Feature polarity: ``avg_trans_prob`` enters inverted (low average
transition probability is loan-like); every other feature enters as-is.
The polarity map is configurable per feature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .features import CORE_FEATURES, SEGMENTAL_FEATURES

DEFAULT_WEIGHTS: dict[str, float] = {
    "rare_ngram_score": 0.30,
    "rare_transition_score": 0.20,
    "trans_entropy": 0.15,
    "ngram_entropy": 0.15,
    "avg_trans_prob": 0.10,
    "len_z": 0.10,
    # segmental block, used in aug mode only
    "cv_anomaly": 0.10,
    "char_dist_anomaly": 0.10,
    "cluster_score": 0.10,
    "vowel_ratio": 0.10,
}

DEFAULT_POS_WEIGHTS: dict[str, float] = {
    "noun": 1.0,
    "adjective": 0.5,
    "verb": 0.3,
    "adverb": 0.2,
    "function": 0.05,
}

# Features whose normalized value is flipped before weighting/boosting.
DEFAULT_POLARITY: dict[str, int] = {name: 1 for name in DEFAULT_WEIGHTS}
DEFAULT_POLARITY["avg_trans_prob"] = -1

ALL_FEATURES = CORE_FEATURES + SEGMENTAL_FEATURES


class MissingWeightError(KeyError):
    pass


@dataclass(frozen=True)
class ScoringConfig:
    """Weights, modifiers, and sigmoid/boost constants for the scorer."""

    weights: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    pos_weights: Mapping[str, float] = field(
        default_factory=lambda: dict(DEFAULT_POS_WEIGHTS)
    )
    polarity: Mapping[str, int] = field(default_factory=lambda: dict(DEFAULT_POLARITY))
    gamma: float = 8.0
    center: float = 0.5
    anomaly_thresholds: Mapping[str, float] = field(
        default_factory=lambda: {name: 0.8 for name in ALL_FEATURES}
    )
    anomaly_boosts: Mapping[str, float] = field(
        default_factory=lambda: {name: 0.5 for name in ALL_FEATURES}
    )

    def __post_init__(self) -> None:
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")
        for pos, beta in self.pos_weights.items():
            if not 0 < beta <= 1:
                raise ValueError(f"pos weight for {pos} must be in (0, 1]")


@dataclass(frozen=True)
class ScoreResult:
    raw: float
    adjusted: float
    probability: float
    boosted: float
    anomalies: frozenset[str]


def _logistic(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def normalize_features(
    vectors: Sequence[Mapping[str, float]],
) -> list[dict[str, float]]:
    """Per-feature min-max normalization over the vocabulary.

    Constant features map to 0.5 for every word (a single-word vocabulary
    therefore normalizes to all 0.5s).
    """
    if not vectors:
        raise ValueError("no feature vectors to normalize")
    names = list(vectors[0])
    lo = {n: min(v[n] for v in vectors) for n in names}
    hi = {n: max(v[n] for v in vectors) for n in names}
    out: list[dict[str, float]] = []
    for v in vectors:
        normed: dict[str, float] = {}
        for n in names:
            span = hi[n] - lo[n]
            normed[n] = 0.5 if span == 0 else (v[n] - lo[n]) / span
        out.append(normed)
    return out


def _signal(name: str, value: float, polarity: Mapping[str, int]) -> float:
    return value if polarity.get(name, 1) >= 0 else 1.0 - value


def composite_score(normed: Mapping[str, float], cfg: ScoringConfig) -> float:
    """Weighted sum of the present features, with mode-rescaled weights.

    The weights of the present features are rescaled so their sum equals
    the full core-feature weight mass, preserving total weight across
    ablation/augmentation modes while keeping relative importance.
    """
    missing = [n for n in normed if n not in cfg.weights]
    if missing:
        raise MissingWeightError(missing[0])
    base_total = sum(cfg.weights[n] for n in CORE_FEATURES if n in cfg.weights)
    present_total = sum(cfg.weights[n] for n in normed)
    if present_total <= 0:
        raise ValueError("present-feature weights sum to zero")
    factor = base_total / present_total
    return sum(
        cfg.weights[n] * factor * _signal(n, x, cfg.polarity)
        for n, x in normed.items()
    )


def length_modifier(len_z: float) -> float:
    """Amplify scores for length outliers: 1 + 0.5*(logistic(3(|z|-1.5)) - 0.5).

    Neutral (exactly 1) at |z| = 1.5; approaches 0.75 for average-length
    words and 1.25 for extreme outliers.
    """
    return 1.0 + 0.5 * (_logistic(3.0 * (abs(len_z) - 1.5)) - 0.5)


def pos_modifier(pos: str, cfg: ScoringConfig) -> float:
    try:
        return cfg.pos_weights[pos]
    except KeyError:
        raise MissingWeightError(pos) from None


def to_probability(adjusted: float, cfg: ScoringConfig) -> float:
    """Scaled sigmoid: 1 / (1 + exp(-gamma * (s' - center)))."""
    return _logistic(cfg.gamma * (adjusted - cfg.center))


def boost(
    prob: float, normed: Mapping[str, float], cfg: ScoringConfig
) -> tuple[float, frozenset[str]]:
    """Multiply P by (1 + eta_f * excess) per feature over its anomaly threshold.

    The excess is measured on the polarity-adjusted normalized value, so
    an anomaly always means "strongly loan-indicating". Returns the
    boosted probability (clamped to 1) and the set of triggered features.
    """
    anomalies: set[str] = set()
    factor = 1.0
    for name, value in normed.items():
        threshold = cfg.anomaly_thresholds.get(name)
        if threshold is None:
            continue
        signal = _signal(name, value, cfg.polarity)
        if signal > threshold:
            anomalies.add(name)
            factor *= 1.0 + cfg.anomaly_boosts.get(name, 0.0) * (signal - threshold)
    return min(prob * factor, 1.0), frozenset(anomalies)


def score_all(
    vectors: Sequence[Mapping[str, float]],
    pos_tags: Sequence[str],
    cfg: ScoringConfig,
) -> list[ScoreResult]:
    """Run the full scoring pipeline over a vocabulary, input order preserved."""
    if len(vectors) != len(pos_tags):
        raise ValueError("need one POS tag per feature vector")
    normed = normalize_features(vectors)
    results: list[ScoreResult] = []
    for vec, nvec, pos in zip(vectors, normed, pos_tags):
        s = composite_score(nvec, cfg)
        adjusted = s * length_modifier(vec.get("len_z", 0.0)) * pos_modifier(pos, cfg)
        prob = to_probability(adjusted, cfg)
        boosted, anomalies = boost(prob, nvec, cfg)
        results.append(
            ScoreResult(
                raw=s,
                adjusted=adjusted,
                probability=prob,
                boosted=boosted,
                anomalies=anomalies,
            )
        )
    return results
