"""Combinatorics of the symmetric beta-shift.

The shift consists of all digit sequences whose every tail stays between
the reflected kneading sequence and the kneading sequence (the quasi-greedy
expansion of 1).  This script enumerates admissible words, extracts minimal
forbidden words, measures preimage digit sets against the guaranteed
interval, and reports the transitivity verdict.
"""

import math

from symbeta import (Params, build_kneading, check_transitivity, digit_interval,
                     digit_interval_integers, enumerate_words, forbidden_words,
                     kneading_self_admissible, preimage_digits)

for m, beta in [(2, "beta_T"), (3, "3.5"), (3, 4)]:
    p = Params.make(m, beta)
    K = build_kneading(p, 64)
    print(f"== m={m}, beta={beta} ==")
    head = K.upper_prefix(16)
    tag = "exact" if K.exact else f"truncated at {K.depth}"
    print(f"  kneading sequence: {''.join(map(str, head))}...  ({tag})")
    print(f"  self-admissible:   {kneading_self_admissible(K)}")

    counts = [len(enumerate_words(p, K, n)) for n in range(1, 9)]
    print(f"  admissible words n=1..8:  {counts}")
    growth = [math.log(c) / n for n, c in enumerate(counts, start=1)]
    print(f"  log-growth estimates:     {[round(g, 4) for g in growth]}")

    forb = forbidden_words(p, K, 4)
    print(f"  minimal forbidden words (len <= 4): "
          f"{[''.join(map(str, w)) for w in forb] or 'none'}")

    lo, hi = digit_interval(p)
    ints = sorted(digit_interval_integers(p))
    basis = enumerate_words(p, K, 6)
    mins = min(len(preimage_digits(w, p, K)) for w in basis.words)
    print(f"  guaranteed preimage digits ({float(lo):.3f}, {float(hi):.3f}) -> {ints}; "
          f"measured min over depth-6 words: {mins}")

    t = check_transitivity(p, K)
    print(f"  transitivity: {t.verdict}  ({t.reason})")
    print()
