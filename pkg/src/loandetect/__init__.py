"""Unsupervised loanword detection over IPA-transcribed wordlists."""

from .config import RunConfig, load_config
from .crossling import detect_scaled
from .evaluation import (
    EvalReport,
    Grammar,
    evaluate,
    generate_synthetic,
    generate_synthetic_multilingual,
    run_ablations,
    run_proportion_experiment,
)
from .refiner import DetectionState, detect, detect_wordlist
from .wordlist import LexicalEntry, Wordlist, load_wordlist, normalize_ipa

__version__ = "0.1.0"

__all__ = [
    "DetectionState",
    "EvalReport",
    "Grammar",
    "LexicalEntry",
    "RunConfig",
    "Wordlist",
    "detect",
    "detect_scaled",
    "detect_wordlist",
    "evaluate",
    "generate_synthetic",
    "generate_synthetic_multilingual",
    "load_config",
    "load_wordlist",
    "normalize_ipa",
    "run_ablations",
    "run_proportion_experiment",
    "__version__",
]
