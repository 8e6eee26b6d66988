"""
Checkable sufficient conditions for existence of the stationary objects.

Contraction rate (c, omega), sup of sigma, symbol symmetry and the tail
moment of the Levy measure. The stable tail constant is compared with the
Gamma-function identity.
"""

import math

from mehlerlab import PRESETS, hypothesis_certificates, levy_tail_moment, preset, stable_constant
from mehlerlab.verify import stable_constant_closed_form

for alpha in (1.1, 1.5, 1.9):
    print(f"c_alpha({alpha}) quadrature {stable_constant(alpha):.15f}  Gamma form {stable_constant_closed_form(alpha):.15f}")

lam = preset("stable-mixing").model().symbol
print("stable-mixing tail moment:", levy_tail_moment(lam), " closed form:", 1 / (stable_constant_closed_form(1.5) * 0.5))

for name in PRESETS:
    cfg = preset(name)
    cert = hypothesis_certificates(cfg.model(), cfg.probes())
    flags = {k: ("ok" if v["ok"] else "FAIL") for k, v in cert.items()}
    print(f"{name:<20} c,omega={cert['contraction']['c']:.3g},{cert['contraction']['omega']:.3g}  "
          f"tail={cert['tail_moment']['status']}  {flags}")

# the Dirichlet trace sum converges to 1/6 at rate 1/(pi^2 dim)
for dim in (4, 16, 64):
    partial = sum(1 / (math.pi**2 * i**2) for i in range(1, dim + 1))
    print(f"dim {dim:>3}: 1/6 - sum = {1 / 6 - partial:.5f}  <= {1 / (math.pi**2 * dim):.5f}")
