# Detection quality as a function of data quantity.
#
# Stratified subsamples preserve the per-language and per-label mix. The
# table is plot-ready (proportion, precision, recall, F1).

from loandetect import Grammar, RunConfig, generate_synthetic, run_proportion_experiment

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

vocab = generate_synthetic(native, donor, n_native=60, n_loans=15, seed=5)
rows = run_proportion_experiment(
    vocab, RunConfig(), proportions=(0.2, 0.4, 0.6, 0.8, 1.0), seed=13
)

print(f"{'proportion':>10} {'n':>4} {'P':>6} {'R':>6} {'F1':>6}")
for proportion, report in rows:
    print(
        f"{proportion:>10.1f} {report.total:>4} "
        f"{report.precision:>6.2f} {report.recall:>6.2f} {report.f1:>6.2f}"
    )
