"""
Periodic model: every entrance law forgets its path geometrically.

For a T-periodic contraction the pull-back of any path over n periods decays
like exp(-omega n T), so all laws collapse onto the zero-path law. The
discrepancy after n periods is printed with its successive ratios.
"""

import math

from mehlerlab import Extremal, FromInitial, Zero, periodic_residual, preset

cfg = preset("periodic-stable")
m, probes = cfg.model(), cfg.probes()
c, omega = m.certificate
T = m.period
print(f"certificate c={c:.4f}, omega={omega}, period T={T}; bound on ratio {math.exp(-omega * T) * 1.01:.4f}")

for label, law in (("3-component mixture", cfg.law(m)), ("extremal", Extremal(m, FromInitial(m.U, [2.0, 0.0, -1.0])))):
    res = [periodic_residual(law, 0.0, n, probes) for n in range(11)]
    print(label)
    for n in range(1, 11):
        print(f"  n={n:>2}  residual={res[n]:.3e}  ratio={res[n] / res[n - 1]:.4f}")

print("zero-path law:", periodic_residual(Extremal(m, Zero(3)), 0.0, 10, probes))
