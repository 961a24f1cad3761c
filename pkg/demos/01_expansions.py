"""Digit expansions in a non-integer base.

A number a in [0, m/(beta-1)] usually has many expansions a = sum x(n) beta^-n
with digits in {0, ..., m}.  The greedy expansion is the lexicographically
largest, the lazy the smallest, and the quasi-greedy the largest one that
never terminates.  All arithmetic below is exact (rational or quadratic),
so every digit printed is certain.
"""

from symbeta import (Params, PeriodicSeq, beta_t, eval_series, golden_ratio,
                     greedy_expansion, lazy_expansion, quasi_greedy_of_one,
                     quasi_lazy, unique_expansion)


def show(title, digits):
    print(f"  {title:<28} {''.join(map(str, digits))}")


# the classical example: the golden ratio with digits {0, 1}
p = Params.make(1, "golden")
print(f"m=1, beta = golden ratio = {float(p.beta):.15f}")
show("greedy expansion of 1:", greedy_expansion(1, p, 24))
show("lazy expansion of 1:", lazy_expansion(1, p, 24))
q = quasi_greedy_of_one(p)
print(f"  quasi-greedy of 1:           {q}  (exact)")
print(f"  1 has a unique expansion?    {unique_expansion(1, p, 60)}")
print(f"  series value of {q}:    {float(eval_series(q, p))}")
print()

# the distinguished transitive base: quasi-greedy expansion of 1 is periodic
for m in (2, 4):
    p = Params.make(m, "beta_T")
    print(f"m={m}, beta_T = {float(p.beta):.15f} "
          f"(golden ratio G({m}) = {float(golden_ratio(m)):.6f})")
    print(f"  quasi-greedy of 1:           {quasi_greedy_of_one(p)}  (exact)")
print()

# a rational base inside the operator regime: the expansion never cycles,
# but every digit is still exact
p = Params.make(3, "3.5")
print(f"m=3, beta = 3.5 (operator regime: {p.operator_regime})")
show("greedy expansion of 1:", greedy_expansion(1, p, 24))
ql = quasi_lazy("0.75", p, 24)
show("quasi-lazy of 0.75:", ql.prefix(24) if isinstance(ql, PeriodicSeq) else ql)
print()
print(f"beta_T(3) by exact bisection:  {float(beta_t(3)):.15f}")
