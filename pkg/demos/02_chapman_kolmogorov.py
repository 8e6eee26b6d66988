"""
Chapman-Kolmogorov identity for the convolution family, checked on every preset.

mu_{s,t}(a) should factor as mu_{s,r}(U*_{r,t} a) mu_{r,t}(a). The residual
is evaluated over random (s, r, t) and the whole probe set.
"""

import numpy as np

from mehlerlab import CORE_PRESETS, ck_residuals, preset
from mehlerlab.verify import random_times

for name in CORE_PRESETS:
    cfg = preset(name)
    m, P = cfg.model(), cfg.probes().probes
    worst = max(ck_residuals(m, s, r, t, P).max() for s, r, t in random_times(25, 0, -2.0, 2.0))
    print(f"{name:<20} max residual over 25 triples x {len(P)} probes: {worst:.2e}")

# s = -inf works too: the stationary law factors through any finite r
m = preset("cp-scalar").model()
print("cp-scalar, s=-inf   :", ck_residuals(m, -np.inf, -0.3, 0.4, preset("cp-scalar").probes().probes).max())
