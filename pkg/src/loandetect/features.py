"""Distributional statistics and per-word feature extraction.

All features are computed against a reference word set's statistics:
n-gram probabilities (n in [2, 10], normalized per n-gram length), bigram
transition probabilities (row-normalized per left symbol), and word-length
mean/standard deviation. N-grams or transitions absent from the reference
take probability 0, which is the maximum-penalty convention: during
iterative refinement the reference shrinks to native candidates, so
absence itself is the signal.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .ipa import SymbolInventory, cv_pattern, default_inventory

Word = Sequence[str]

# Canonical feature names. The first six are the core set; the segmental
# block is added in "aug" mode only.
CORE_FEATURES = (
    "rare_ngram_score",
    "ngram_entropy",
    "rare_transition_score",
    "trans_entropy",
    "avg_trans_prob",
    "len_z",
)
SEGMENTAL_FEATURES = (
    "cv_anomaly",
    "char_dist_anomaly",
    "cluster_score",
    "vowel_ratio",
)
NGRAM_FEATURES = ("rare_ngram_score", "ngram_entropy")
TRANSITION_FEATURES = ("rare_transition_score", "trans_entropy", "avg_trans_prob")

MODES = ("full", "no_ngram", "no_transition", "aug")

NGRAM_MIN = 2
NGRAM_MAX = 10


class EmptyReferenceError(ValueError):
    pass


@dataclass(frozen=True)
class VocabStatistics:
    """Distributional statistics of a reference word set."""

    ngram_prob: Mapping[tuple[str, ...], float]
    ngram_count: Mapping[tuple[str, ...], int]
    trans_prob: Mapping[tuple[str, str], float]
    length_mean: float
    length_std: float
    word_count: int
    cv_templates: frozenset[str]
    symbol_freq: Mapping[str, float]


def word_ngrams(
    word: Word, nmin: int = NGRAM_MIN, nmax: int = NGRAM_MAX
) -> list[tuple[str, ...]]:
    """Multiset of the word's contiguous n-grams for n in [nmin, min(nmax, |w|)]."""
    grams: list[tuple[str, ...]] = []
    top = min(nmax, len(word))
    for n in range(nmin, top + 1):
        for i in range(len(word) - n + 1):
            grams.append(tuple(word[i : i + n]))
    return grams


def word_transitions(word: Word) -> list[tuple[str, str]]:
    return [(word[i], word[i + 1]) for i in range(len(word) - 1)]


def build_statistics(
    reference: Iterable[Word],
    *,
    ngram_min: int = NGRAM_MIN,
    ngram_max: int = NGRAM_MAX,
    inventory: SymbolInventory | None = None,
) -> VocabStatistics:
    """Count n-grams, transitions, and lengths over a reference word set.

    N-gram probabilities are normalized within each n-gram length, so for
    every n the probabilities of the observed n-grams of that length sum
    to 1. The length standard deviation is population-based and replaced
    by 1 when fewer than two words are available or the variance is zero.
    """
    words = [tuple(w) for w in reference]
    if not words:
        raise EmptyReferenceError("reference word set is empty")
    inv = inventory or default_inventory()

    ngram_count: Counter[tuple[str, ...]] = Counter()
    totals_by_len: Counter[int] = Counter()
    trans_count: Counter[tuple[str, str]] = Counter()
    out_count: Counter[str] = Counter()
    symbol_count: Counter[str] = Counter()
    templates: set[str] = set()

    for w in words:
        for g in word_ngrams(w, ngram_min, ngram_max):
            ngram_count[g] += 1
            totals_by_len[len(g)] += 1
        for a, b in word_transitions(w):
            trans_count[(a, b)] += 1
            out_count[a] += 1
        symbol_count.update(w)
        cv = cv_pattern(w, inv)
        for i in range(len(cv) - 2):
            templates.add(cv[i : i + 3])

    ngram_prob = {g: c / totals_by_len[len(g)] for g, c in ngram_count.items()}
    trans_prob = {(a, b): c / out_count[a] for (a, b), c in trans_count.items()}

    lengths = [len(w) for w in words]
    mean = sum(lengths) / len(lengths)
    if len(lengths) < 2:
        std = 1.0
    else:
        var = sum((x - mean) ** 2 for x in lengths) / len(lengths)
        std = math.sqrt(var) if var > 0 else 1.0

    total_symbols = sum(symbol_count.values())
    symbol_freq = {s: c / total_symbols for s, c in symbol_count.items()}

    return VocabStatistics(
        ngram_prob=ngram_prob,
        ngram_count=dict(ngram_count),
        trans_prob=trans_prob,
        length_mean=mean,
        length_std=std,
        word_count=len(words),
        cv_templates=frozenset(templates),
        symbol_freq=symbol_freq,
    )


def rare_ngram_score(
    word: Word,
    stats: VocabStatistics,
    eps1: float = 0.005,
    eps2: float = 0.02,
    c1: float = 100.0,
    c2: float = 20.0,
    *,
    ngram_min: int = NGRAM_MIN,
    ngram_max: int = NGRAM_MAX,
) -> float:
    """Mean two-tier rarity penalty over the word's n-grams.

    Each n-gram with probability p contributes c1*(eps1-p) when p < eps1,
    else c2*(eps2-p) when p < eps2, else nothing. Words too short to have
    any n-gram score 0.
    """
    if eps1 >= eps2:
        raise ValueError("eps1 must be below eps2")
    grams = word_ngrams(word, ngram_min, ngram_max)
    if not grams:
        return 0.0
    total = 0.0
    for g in grams:
        p = stats.ngram_prob.get(g, 0.0)
        if p < eps1:
            total += c1 * (eps1 - p)
        elif p < eps2:
            total += c2 * (eps2 - p)
    return total / len(grams)


def ngram_entropy(
    word: Word,
    stats: VocabStatistics,
    *,
    ngram_min: int = NGRAM_MIN,
    ngram_max: int = NGRAM_MAX,
) -> float:
    """-sum p(g) log2 p(g) over the word's n-gram multiset (0 log 0 = 0)."""
    total = 0.0
    for g in word_ngrams(word, ngram_min, ngram_max):
        p = stats.ngram_prob.get(g, 0.0)
        if p > 0.0:
            total -= p * math.log2(p)
    return total


def rare_transition_score(
    word: Word,
    stats: VocabStatistics,
    eps1: float = 0.01,
    eps2: float = 0.05,
    c1: float = 100.0,
    c2: float = 20.0,
) -> float:
    """Mean two-tier rarity penalty over the word's symbol transitions."""
    trans = word_transitions(word)
    if not trans:
        return 0.0
    total = 0.0
    for t in trans:
        p = stats.trans_prob.get(t, 0.0)
        if p < eps1:
            total += c1 * (eps1 - p)
        elif p < eps2:
            total += c2 * (eps2 - p)
    return total / len(trans)


def transition_entropy(word: Word, stats: VocabStatistics) -> float:
    total = 0.0
    for t in word_transitions(word):
        p = stats.trans_prob.get(t, 0.0)
        if p > 0.0:
            total -= p * math.log2(p)
    return total


def avg_transition_prob(word: Word, stats: VocabStatistics) -> float:
    """Arithmetic mean transition probability; unseen transitions count 0."""
    trans = word_transitions(word)
    if not trans:
        return 0.0
    return sum(stats.trans_prob.get(t, 0.0) for t in trans) / len(trans)


def length_z(word: Word, stats: VocabStatistics) -> float:
    return (len(word) - stats.length_mean) / stats.length_std


# --- Segmental block (aug mode) ------------------------------------------------


def cv_anomaly(
    word: Word, stats: VocabStatistics, inventory: SymbolInventory | None = None
) -> float:
    """Fraction of the word's CV 3-templates unattested in the reference."""
    cv = cv_pattern(word, inventory or default_inventory())
    templates = [cv[i : i + 3] for i in range(len(cv) - 2)]
    if not templates:
        return 0.0
    missing = sum(1 for t in templates if t not in stats.cv_templates)
    return missing / len(templates)


def char_dist_anomaly(word: Word, stats: VocabStatistics) -> float:
    """Mean |in-word symbol frequency - reference symbol frequency|."""
    if not word:
        return 0.0
    counts = Counter(word)
    return sum(
        abs(counts[s] / len(word) - stats.symbol_freq.get(s, 0.0)) for s in word
    ) / len(word)


def cluster_score(
    word: Word, inventory: SymbolInventory | None = None
) -> float:
    """(longest consonant run - 1) / |w|, floored at 0 for vowel-only words."""
    inv = inventory or default_inventory()
    longest = run = 0
    for s in word:
        run = run + 1 if not inv.is_vowel(s) else 0
        longest = max(longest, run)
    return max(longest - 1, 0) / len(word)


def vowel_ratio(word: Word, inventory: SymbolInventory | None = None) -> float:
    inv = inventory or default_inventory()
    return sum(1 for s in word if inv.is_vowel(s)) / len(word)


# --- Mode dispatch --------------------------------------------------------------


@dataclass(frozen=True)
class FeatureParams:
    """Constants governing the rarity penalties and n-gram range."""

    rare_ngram_eps1: float = 0.005
    rare_ngram_eps2: float = 0.02
    rare_ngram_c1: float = 100.0
    rare_ngram_c2: float = 20.0
    rare_trans_eps1: float = 0.01
    rare_trans_eps2: float = 0.05
    rare_trans_c1: float = 100.0
    rare_trans_c2: float = 20.0
    ngram_min: int = NGRAM_MIN
    ngram_max: int = NGRAM_MAX


def feature_names(mode: str) -> tuple[str, ...]:
    """The feature set extracted in a given mode."""
    if mode == "full":
        return CORE_FEATURES
    if mode == "no_ngram":
        return tuple(f for f in CORE_FEATURES if f not in NGRAM_FEATURES)
    if mode == "no_transition":
        return tuple(f for f in CORE_FEATURES if f not in TRANSITION_FEATURES)
    if mode == "aug":
        return CORE_FEATURES + SEGMENTAL_FEATURES
    raise ValueError(f"unknown mode {mode!r}")


def extract(
    word: Word,
    stats: VocabStatistics,
    mode: str = "full",
    params: FeatureParams | None = None,
    inventory: SymbolInventory | None = None,
) -> dict[str, float]:
    """Compute the feature vector for one word under the given mode.

    Words of length 1 have no n-grams or transitions; their sequence
    features are 0 by convention.
    """
    p = params or FeatureParams()
    names = feature_names(mode)
    out: dict[str, float] = {}
    if "rare_ngram_score" in names:
        out["rare_ngram_score"] = rare_ngram_score(
            word,
            stats,
            p.rare_ngram_eps1,
            p.rare_ngram_eps2,
            p.rare_ngram_c1,
            p.rare_ngram_c2,
            ngram_min=p.ngram_min,
            ngram_max=p.ngram_max,
        )
        out["ngram_entropy"] = ngram_entropy(
            word, stats, ngram_min=p.ngram_min, ngram_max=p.ngram_max
        )
    if "rare_transition_score" in names:
        out["rare_transition_score"] = rare_transition_score(
            word,
            stats,
            p.rare_trans_eps1,
            p.rare_trans_eps2,
            p.rare_trans_c1,
            p.rare_trans_c2,
        )
        out["trans_entropy"] = transition_entropy(word, stats)
        out["avg_trans_prob"] = avg_transition_prob(word, stats)
    out["len_z"] = length_z(word, stats)
    if mode == "aug":
        out["cv_anomaly"] = cv_anomaly(word, stats, inventory)
        out["char_dist_anomaly"] = char_dist_anomaly(word, stats)
        out["cluster_score"] = cluster_score(word, inventory)
        out["vowel_ratio"] = vowel_ratio(word, inventory)
    return out


def extract_all(
    words: Sequence[Word],
    stats: VocabStatistics,
    mode: str = "full",
    params: FeatureParams | None = None,
    inventory: SymbolInventory | None = None,
) -> list[dict[str, float]]:
    return [extract(w, stats, mode, params, inventory) for w in words]
