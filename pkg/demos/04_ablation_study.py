# Feature ablations: what each feature family contributes.
#
# Four modes run over the same corpus: the full feature set, one without
# n-gram features, one without transition features, and an augmented mode
# that adds segmental features (consonant-vowel templates, character
# distribution anomaly, cluster length, vowel ratio). Remaining weights
# are rescaled so total weight mass is preserved.
#
# On this corpus the loans are foreign in every channel at once, so every
# mode does well; directional claims about a single feature family need a
# corpus whose loan signal is confined to that family (see the
# channel-isolated fixtures in tests/fixtures.py).

from loandetect import Grammar, RunConfig, generate_synthetic, run_ablations

native = Grammar(
    language="reca",
    consonants=("p", "t", "k"),
    vowels=("a", "i", "u"),
    templates=("CV",),
    min_syllables=2,
    max_syllables=3,
)
donor = Grammar(
    language="donb",
    consonants=("b", "d", "ɡ", "z", "ʒ", "ʁ"),
    vowels=("ø", "y", "ɛ"),
    templates=("CVC", "CV"),
    min_syllables=3,
    max_syllables=4,
)

vocab = generate_synthetic(native, donor, n_native=40, n_loans=10, seed=11)
reports = run_ablations(vocab, RunConfig())

print(f"{'mode':<15} {'P':>6} {'R':>6} {'F1':>6}   TP  FP  TN  FN")
for mode, r in reports.items():
    print(
        f"{mode:<15} {r.precision:>6.2f} {r.recall:>6.2f} {r.f1:>6.2f}   "
        f"{r.tp:>3} {r.fp:>3} {r.tn:>3} {r.fn:>3}"
    )
