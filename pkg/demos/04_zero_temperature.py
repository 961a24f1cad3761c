"""Zero-temperature limits of equilibrium states.

Scaling a potential by t (inverse temperature) and letting t grow, the
equilibrium entropies h(t) converge to the maximal entropy among the
measures maximizing the potential average.  Three closed-form checks on a
full shift: a unique maximizing digit forces h -> 0, two tied maximizing
digits force h -> log 2, and the zero potential keeps h constant.  A
constrained shift (m=3, beta=3.5) selects an orbit mixing high-value
digits, found independently by the periodic-orbit search.
"""

import math

from symbeta import (Params, PotentialSpec, build_kneading, max_ergodic_average,
                     periodic_orbits, zero_temperature_scan)


def show(curve, title):
    print(f"== {title} ==")
    print("      t        pressure        entropy        average   mode")
    for pt in curve.points:
        print(f"  {pt.t:6.0f}  {pt.pressure:14.8f} {pt.entropy:14.10f} "
              f"{pt.average:14.10f}   {pt.mode}")
    print(f"  residual entropy estimate: {curve.residual_entropy:.3e}  "
          f"(Cesaro tail {curve.cesaro_tail:.3e}, monotone tail: {curve.monotone_tail})")
    print(f"  max average: orbit bound {curve.max_avg_lower:.6f}, "
          f"pressure-slope estimate {curve.max_avg_upper:.6f}")
    print()


p4 = Params.make(3, 4)
K4 = build_kneading(p4, 64)
show(zero_temperature_scan(p4, K4, PotentialSpec.digit_table([0.3, 0.0, 0.1, 0.05]),
                           depth=4),
     "full shift, unique maximizing digit (h -> 0)")
show(zero_temperature_scan(p4, K4, PotentialSpec.digit_table([0.3, 0.3, 0.0, 0.1]),
                           depth=4),
     f"full shift, two tied maximizing digits (h -> log 2 = {math.log(2):.6f})")

p35 = Params.make(3, "3.5")
K35 = build_kneading(p35, 64)
A = PotentialSpec.digit_table([0.3, 0.0, 0.1, 0.05])
show(zero_temperature_scan(p35, K35, A, depth=6),
     "constrained shift (3, 3.5): the fixed point of the best digit is forbidden")

orbits = sorted(periodic_orbits(p35, K35, A, 4), key=lambda o: -o.average)[:5]
print("best periodic orbits of the constrained shift:")
for o in orbits:
    print(f"  ({''.join(map(str, o.word))})^inf   average = {o.average:.6f}")
rep = max_ergodic_average(p35, K35, A, 6)
print(f"max ergodic average lower bound (period <= 6): {rep.lower_bound:.6f}")
