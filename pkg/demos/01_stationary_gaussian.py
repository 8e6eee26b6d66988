"""
Stationary Ornstein-Uhlenbeck law on a three-mode truncation.

With U_{s,t} = e^{-(t-s)}, sigma = I and a Gaussian symbol with R = I,
the backward-infinite exponent is ||a||^2 / 4 and the covariance is I/2.
The quadrature path never uses these closed forms; this script compares.
"""

import numpy as np

from mehlerlab import NEG_INF, exponent_batch, gaussian_covariance, mu_cf_values, preset

cfg = preset("gaussian-scalar")
m = cfg.model()
P = cfg.probes().probes

E, err = exponent_batch(m, NEG_INF, 0.0, P)
exact = np.sum(P**2, axis=1) / 4
print("probe norms     :", np.round(np.linalg.norm(P, axis=1)[:8], 3))
print("max |E - |a|^2/4| =", np.max(np.abs(E - exact)), " (reported err", err.max(), ")")

R = gaussian_covariance(m, NEG_INF, 0.0)
print("covariance diag :", R)

# finite start: the law fills in as s -> -inf
for s in (-0.1, -1.0, -5.0, -20.0, NEG_INF):
    v = mu_cf_values(m, s, 0.0, np.array([[1.0, 0.0, 0.0]]))[0]
    print(f"mu_(s={s:>6},0)(e1) = {v.real:.15f}")
print("exp(-1/4)            =", np.exp(-0.25))
