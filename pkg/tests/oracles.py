"""
Independent high-precision reference values.

Everything here is written against mpmath from the model definitions alone:
the periodic decay rate is integrated numerically instead of using the
closed-form antiderivative, and the integrals run over the whole backward
half-line instead of a truncated horizon. The frozen tables at the bottom
were produced by ``python tests/oracles.py`` and are what the tests compare
against; ``test_oracles.py`` recomputes a few of them to keep the tables honest.
"""

from __future__ import annotations

import mpmath as mp

mp.mp.dps = 20


def _dot(a, b):
    return mp.fsum(mp.mpf(x) * mp.mpf(y) for x, y in zip(a, b))


def _norm(a):
    return mp.sqrt(_dot(a, a))


# decay G(r, t) = ∫_r^t omega(q) dq ---------------------------------------------


def scalar_decay(omega):
    return lambda r, t: mp.mpf(omega) * (t - r)


def periodic_decay(omega0, amp, period):
    w = lambda q: omega0 * (1 + amp * mp.sin(2 * mp.pi * q / period))  # noqa: E731
    return lambda r, t: mp.quad(w, [r, t])


# symbols on a vector b -------------------------------------------------------------


def gaussian(R):
    return lambda b: mp.mpf(1) / 2 * mp.fsum(mp.mpf(r) * x * x for r, x in zip(R, b))


def stable_norm(alpha, S):
    return lambda b: mp.sqrt(mp.fsum(mp.mpf(s) * x * x for s, x in zip(S, b))) ** alpha


def stable_mixing(alpha, weights, atoms):
    return lambda b: mp.fsum(w * abs(_dot(b, x)) ** alpha for w, x in zip(weights, atoms))


def compound_poisson(masses, jumps):
    return lambda b: mp.fsum(m * (1 - mp.cos(_dot(b, v))) for m, v in zip(masses, jumps))


def exponent(symbol, decay, sigma, t, a, s=None, per_mode=None, breaks=50):
    """``∫_s^t lambda(sigma(r) U_{r,t} a) dr`` with ``s=None`` meaning ``-inf``.

    ``decay`` gives the scalar decay; ``per_mode`` (list of rates) overrides it
    with a diagonal family.
    """
    t = mp.mpf(t)
    a = [mp.mpf(x) for x in a]

    def integrand(u):
        r = t - u
        if per_mode is not None:
            b = [mp.exp(-lam * u) * x for lam, x in zip(per_mode, a)]
        else:
            f = mp.exp(-decay(r, t))
            b = [f * x for x in a]
        sg = sigma(r)
        return symbol([sg * x for x in b])

    if s is None:
        pts = mp.linspace(0, breaks, breaks + 1) + [mp.inf]
    else:
        L = t - mp.mpf(s)
        n = max(1, int(L))
        pts = mp.linspace(0, L, n + 1)
    return mp.quad(integrand, pts)


def stable_constant(alpha):
    """``∫_0^∞ (1 - cos u) u^{-1-alpha} du``.

    On ``[0, 1]`` the Taylor series of ``1 - cos u`` is integrated termwise,
    ``sum_n (-1)^{n+1} / ((2n)! (2n - alpha))``. On ``[1, ∞)`` the power part is
    ``1/alpha`` and the cosine part is moved onto the contour ``u = 1 + iy``,
    ``∫_1^∞ e^{iu} u^{-1-alpha} du = i e^{i} ∫_0^∞ e^{-y} (1 + iy)^{-1-alpha} dy``,
    which is smooth and exponentially damped.
    """
    alpha = mp.mpf(alpha)
    head = mp.nsum(lambda n: (-1) ** (n + 1) / (mp.factorial(2 * n) * (2 * n - alpha)), [1, mp.inf])
    rotated = 1j * mp.exp(1j) * mp.quad(lambda y: mp.exp(-y) * (1 + 1j * y) ** (-1 - alpha), [0, 1, 10, mp.inf])
    return head + 1 / alpha - mp.re(rotated)


def _print_tables():
    one = lambda r: mp.mpf(1)  # noqa: E731
    mod = lambda r: 1 + mp.mpf("0.5") * mp.cos(2 * mp.pi * r)  # noqa: E731
    per = periodic_decay(1, mp.mpf("0.5"), 1)
    st = stable_norm(mp.mpf("1.5"), [1, 1, 1])
    cp = compound_poisson([mp.mpf("0.7"), mp.mpf("0.5")], [[1, 0, 0], [mp.mpf("0.5"), mp.mpf("-1.5"), mp.mpf("0.3")]])
    rows = {
        "periodic_inf_0_e1": exponent(st, per, mod, 0, [1, 0, 0]),
        "periodic_inf_0.3_a": exponent(st, per, mod, "0.3", [0.5, -1, 2]),
        "periodic_-0.7_0.4_e2": exponent(st, per, mod, "0.4", [0, 1, 0], s="-0.7"),
        "cp_0_1_e1": exponent(cp, scalar_decay(1), one, 1, [1, 0, 0], s=0),
        "cp_inf_0_a": exponent(cp, scalar_decay(1), one, 0, [1, 2, -1]),
        "cp_-1.5_0.5_a": exponent(cp, scalar_decay(1), one, "0.5", [3, -0.5, 0.25], s="-1.5"),
        "mixing_inf_0_a": exponent(
            stable_mixing(mp.mpf("1.3"), [mp.mpf("0.4"), mp.mpf("1.1")], [[1, 0, 0], [0.6, 0.8, 0]]),
            scalar_decay(mp.mpf("0.8")), one, 0, [0.3, -2, 1.5],
        ),
        "c_1.2": stable_constant("1.2"),
        "c_1.5": stable_constant("1.5"),
        "c_1.8": stable_constant("1.8"),
    }
    for k, v in rows.items():
        print(f'    "{k}": {mp.nstr(v, 18)},')


# frozen reference values (20-digit mpmath, printed to 18 significant digits) ------

FROZEN = {
    "periodic_inf_0_e1": 0.781461681243510505,
    "periodic_inf_0.3_a": 2.51640352918287938,
    "periodic_-0.7_0.4_e2": 0.510937812173914549,
    "cp_0_1_e1": 0.171020707059342724,
    "cp_inf_0_a": 0.878041565620152975,
    "cp_-1.5_0.5_a": 1.58889549117033345,
    "mixing_inf_0_a": 1.74893589535741214,
    "c_1.2": 1.49902819540582801,
    "c_1.5": 1.671085516420667,
    "c_1.8": 3.03204988027020344,
}

if __name__ == "__main__":
    _print_tables()
