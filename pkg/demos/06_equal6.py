"""Exact acceptance probabilities of the six-counter probabilistic machine."""

from fractions import Fraction

from opda import catalog
from opda.ppda import equal6_probability, equal6_word, error_scan, exact_acceptance_probability

print("coin:", exact_acceptance_probability(catalog.coin(), tuple("01")))

for counts in [(6, 6, 6, 6, 6, 6), (6, 7, 6, 6, 6, 7), (6, 7, 7, 7, 6, 6), (7, 6, 6, 6, 6, 6)]:
    print(counts, equal6_probability(equal6_word(counts)))

for variant in ("corrected", "literal"):
    rep = error_scan((6, 8), variant=variant)
    print(rep.summary())
    print("    12/25 =", float(Fraction(12, 25)), "1/3 =", float(Fraction(1, 3)))
