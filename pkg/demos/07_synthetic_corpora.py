# The synthetic contact-corpus generator and its integration mutator.
#
# Loans are sampled from a donor grammar; with increasing integration
# probability, segments foreign to the recipient inventory are replaced by
# their phonologically nearest native segment (minimal feature distance,
# ties broken alphabetically), modeling progressively deeper adaptation.

from loandetect import Grammar, generate_synthetic

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

print("the same five borrowed words at increasing integration:")
for integration in (0.0, 0.5, 1.0):
    vocab = generate_synthetic(
        native, donor, n_native=5, n_loans=5, seed=21, integration=integration
    )
    loans = [e for e in vocab if e.gold_label == 1]
    forms = "  ".join(e.ipa_text for e in loans)
    print(f"  integration {integration:.1f}: {forms}")

print()
print("native sample:", "  ".join(e.ipa_text for e in vocab if e.gold_label == 0))
