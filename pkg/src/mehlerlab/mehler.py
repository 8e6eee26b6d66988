"""
Time-inhomogeneous generalized Mehler semigroups.

The central quantity is the exponent

    E(s, t, a) = ∫_s^t lambda(sigma(r) U_{r,t} a) dr,

so that ``exp(-E)`` is the characteristic function of the stochastic
convolution law ``mu_{s,t}`` and ``exp(i <a, U_{s,t} x> - E)`` that of the
transition kernel ``pi_{s,t}(x, .)``. ``s = -inf`` is supported through a
finite horizon derived from the contraction certificate of ``U``.

Quadrature is done in the backward variable ``u = t - r`` with
:func:`scipy.integrate.quad_vec`, batched over probe vectors. Each probe's
integrand is divided by its own size estimate before integration so that the
shared ``max`` error norm acts as a per-probe relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import integrate

from . import symbols as sym
from .errors import DimensionError, DomainError, QuadratureError, UndefinedForKindError
from .evolution import EvolutionFamily, Sigma, evolve
from .space import ProbeSet, TruncatedSpace

NEG_INF = float("-inf")

#: largest probe norm used by the package; horizons that must serve every probe use it
PROBE_NORM_MAX = 10.0


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    horizon_slack: float = 2.0

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol", "max_subdivisions", "horizon_slack"):
            if not getattr(self, name) > 0:
                raise ValueError(f"QuadConfig.{name} must be positive")


@dataclass(frozen=True)
class CFValue:
    value: complex
    exponent: float
    quad_error_estimate: float

    def __complex__(self):
        return complex(self.value)


@dataclass(frozen=True, eq=False)
class MehlerModel:
    """Evolution family, diffusion coefficient and symbol on one truncated space."""

    space: TruncatedSpace
    U: EvolutionFamily
    sigma: Sigma
    symbol: sym.LevySymbol
    quad: QuadConfig = field(default_factory=QuadConfig)

    def __post_init__(self):
        n = self.space.dim
        for name, obj in (("U", self.U), ("sigma", self.sigma), ("symbol", self.symbol)):
            d = getattr(obj, "dim", None)
            if d is not None and d != n:
                raise DimensionError(f"{name} has dim {d} but the space has dim {n}")
        c, omega = self.U.certificate()
        if not (c > 0 and omega > 0):
            raise ValueError("evolution family needs a contraction certificate with c, omega > 0")

    @property
    def certificate(self) -> tuple[float, float]:
        return self.U.certificate()

    @property
    def C_sigma(self) -> float:
        """``c * sup_r ||sigma(r)||``."""
        return self.certificate[0] * self.sigma.sup_norm()

    @property
    def period(self) -> float | None:
        periods = {p for p in (self.U.period, self.sigma.period) if p is not None}
        if len(periods) > 1:
            return None
        return periods.pop() if periods else None

    def with_symbol(self, symbol: sym.LevySymbol) -> "MehlerModel":
        return replace(self, symbol=symbol)

    def with_quad(self, **kw) -> "MehlerModel":
        return replace(self, quad=replace(self.quad, **kw))

    def tail_bound(self, a_norm: float, T: float) -> float:
        """Bound on ``∫_T^∞ lambda(sigma U* a) du`` for ``||a|| = a_norm``."""
        _, omega = self.certificate
        Ca = self.C_sigma * a_norm
        return sum(K * Ca**p * math.exp(-p * omega * T) / (p * omega) for K, p in self.symbol.envelope())

    def horizon(self, a_norm: float) -> float:
        """Backward horizon ``T*`` (slack included) for the ``s = -inf`` integral."""
        if a_norm <= 0:
            return 0.0
        _, omega = self.certificate
        env = self.symbol.envelope()
        tol = self.quad.abs_tol / len(env)
        Ca = self.C_sigma * a_norm
        T = 0.0
        for K, p in env:
            if K <= 0:
                continue
            T = max(T, math.log(K * Ca**p / (p * omega * tol)) / (p * omega))
        return self.quad.horizon_slack * T

    def cf(self, s: float, t: float):
        """Callable ``A -> mu_{s,t}^(A)`` on arrays of probe vectors."""
        return lambda A: mu_cf_values(self, s, t, A)


def _interval(m: MehlerModel, s: float, t: float, a_norm: float) -> tuple[float, float]:
    """Integration length in ``u = t - r`` and the truncation error it leaves."""
    if s > t:
        raise DomainError(f"need s <= t, got s={s}, t={t}")
    T = m.horizon(a_norm)
    length = t - s
    if length <= T:
        return length, 0.0
    return T, m.tail_bound(a_norm, T)


def _quad(f, length, scale, cfg: QuadConfig, what: str):
    res, err, info = integrate.quad_vec(
        f,
        0.0,
        length,
        epsabs=cfg.abs_tol / float(scale.max()),
        epsrel=cfg.rel_tol,
        norm="max",
        limit=cfg.max_subdivisions,
        full_output=True,
    )
    if info.status != 0:
        raise QuadratureError(
            f"{what}: quadrature did not converge within {cfg.max_subdivisions} subdivisions",
            estimate=res * scale,
            error=err * scale,
        )
    return np.asarray(res) * scale, err * scale


_SCALE_FLOOR = math.sqrt(np.finfo(float).tiny)


def exponent_batch(m: MehlerModel, s: float, t: float, A) -> tuple[np.ndarray, np.ndarray]:
    """Exponents ``E(s, t, a)`` and error estimates for every row ``a`` of ``A``."""
    A = np.atleast_2d(m.space.check(A, "probe"))
    if s > t:
        raise DomainError(f"need s <= t, got s={s}, t={t}")
    P = A.shape[0]
    if s == t:
        return np.zeros(P), np.zeros(P)
    norms = np.linalg.norm(A, axis=1)
    if not norms.any():
        return np.zeros(P), np.zeros(P)
    length, tail = _interval(m, s, t, float(norms.max()))
    scale = np.asarray(m.symbol.scale(m.C_sigma * norms), dtype=float)
    # probes pushed far down a stiff mode have subnormal scales; floor them so
    # the normalised integrand stays well conditioned
    scale = np.where(scale > 0, np.maximum(scale, _SCALE_FLOOR), 1.0)
    lam, sigma, U = m.symbol, m.sigma, m.U

    def integrand(u):
        r = t - u
        return lam(sigma(r) * U.factor(r, t) * A) / scale

    vals, err = _quad(integrand, length, scale, m.quad, "exponent")
    return vals, np.full(P, err) + tail


def exponent(m: MehlerModel, s: float, t: float, a) -> tuple[float, float]:
    vals, errs = exponent_batch(m, s, t, np.asarray(a, dtype=float)[None, :])
    return float(vals[0]), float(errs[0])


def mu_cf_values(m: MehlerModel, s: float, t: float, A) -> np.ndarray:
    """``mu_{s,t}^(a)`` as a complex array; the imaginary part is exactly zero."""
    E, _ = exponent_batch(m, s, t, A)
    return np.exp(-E) + 0j


def mu_cf(m: MehlerModel, s: float, t: float, a) -> CFValue:
    E, err = exponent(m, s, t, a)
    return CFValue(complex(math.exp(-E), 0.0), E, err)


def transition_cf(m: MehlerModel, s: float, t: float, x, a) -> CFValue:
    """Characteristic function of ``pi_{s,t}(x, .)`` at ``a``."""
    x = m.space.check(x)
    a = m.space.check(a)
    base = mu_cf(m, s, t, a)
    phase = float(np.dot(a, evolve(m.U, s, t, x)))
    return CFValue(complex(math.cos(phase), math.sin(phase)) * base.value, base.exponent, base.quad_error_estimate)


def gaussian_covariance(m: MehlerModel, s: float, t: float) -> np.ndarray:
    """Diagonal of ``R_{s,t} = ∫_s^t U_{r,t} sigma(r) R sigma(r)* U*_{r,t} dr``."""
    R = sym.gaussian_part(m.symbol)
    if R is None:
        raise UndefinedForKindError("symbol has no Gaussian part")
    if s > t:
        raise DomainError(f"need s <= t, got s={s}, t={t}")
    if s == t or not R.any():
        return np.zeros(m.space.dim)
    gm = m.with_symbol(sym.GaussianForm(R))
    length, _ = _interval(gm, s, t, PROBE_NORM_MAX)
    scale = np.where(R > 0, R * m.C_sigma**2, 1.0)
    sigma, U = m.sigma, m.U

    def integrand(u):
        r = t - u
        g = sigma(r) * U.factor(r, t) * np.ones(m.space.dim)
        return R * g * g / scale

    vals, _ = _quad(integrand, length, scale, m.quad, "gaussian_covariance")
    return vals


def ck_residuals(m: MehlerModel, s: float, r: float, t: float, A) -> np.ndarray:
    """``|mu_{s,t}^(a) - mu_{s,r}^(U*_{r,t} a) mu_{r,t}^(a)|`` for every row of A."""
    if not s <= r <= t:
        raise DomainError(f"need s <= r <= t, got {s}, {r}, {t}")
    if not math.isfinite(r):
        raise DomainError("intermediate time r must be finite")
    A = np.atleast_2d(m.space.check(A, "probe"))
    lhs = mu_cf_values(m, s, t, A)
    rhs = mu_cf_values(m, s, r, evolve(m.U, r, t, A)) * mu_cf_values(m, r, t, A)
    return np.abs(lhs - rhs)


def ck_residual(m: MehlerModel, s: float, r: float, t: float, a) -> float:
    return float(ck_residuals(m, s, r, t, np.asarray(a, dtype=float)[None, :])[0])


def positive_definite_check(cf, probes) -> float:
    """Minimum eigenvalue of the Hermitian Gram matrix ``G_jk = phi(a_j - a_k)``.

    ``cf`` maps an ``(n, dim)`` array of vectors to ``n`` complex values.
    """
    P = probes.probes if isinstance(probes, ProbeSet) else np.atleast_2d(np.asarray(probes, dtype=float))
    if P.shape[0] < 2:
        raise ValueError("need at least two probes")
    n, d = P.shape
    diffs = (P[:, None, :] - P[None, :, :]).reshape(-1, d)
    G = np.asarray(cf(diffs), dtype=complex).reshape(n, n)
    G = 0.5 * (G + G.conj().T)
    return float(np.linalg.eigvalsh(G).min())
