"""
Monte Carlo realisation of ``mu_{s,t}``, ``mu_{-inf,t}`` and entrance laws.

* Gaussian parts are sampled exactly from ``N(0, R_{s,t})``.
* Compound-Poisson parts are sampled exactly as a finite random sum of
  transported jumps ``U_{r,t} sigma(r) v``.
* Stable parts use a midpoint Euler grid of the stochastic convolution; each
  increment is drawn exactly, so the only bias is the Riemann sum of the
  exponent (see :func:`stable_grid_exponent`).

``s = -inf`` is replaced by ``t - T*`` with the model's horizon for the
largest probe norm, the same truncation the quadrature uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import symbols as sym
from .entrance import EntranceLaw
from .errors import DomainError, UndefinedForKindError
from .mehler import NEG_INF, PROBE_NORM_MAX, MehlerModel, gaussian_covariance
from .space import TruncatedSpace

_CHUNK = 20_000


@dataclass(frozen=True)
class RngStream:
    """Deterministic stream: ``(seed, stream_id)`` fixes the whole output sequence.

    Sub-streams for independent noise parts are derived with :meth:`child`
    and map to distinct :class:`numpy.random.SeedSequence` spawn keys.
    """

    seed: int
    stream_id: int = 0
    path: tuple = ()

    def generator(self) -> np.random.Generator:
        key = (self.stream_id, *self.path)
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=key)))

    def child(self, k: int) -> "RngStream":
        return RngStream(self.seed, self.stream_id, (*self.path, k))


@dataclass(frozen=True, eq=False)
class SampleBatch:
    space: TruncatedSpace
    t: float
    draws: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        d = np.asarray(self.draws, dtype=float)
        if d.ndim != 2 or d.shape[0] < 1 or d.shape[1] != self.space.dim:
            raise ValueError(f"draws must have shape (N >= 1, {self.space.dim}), got {d.shape}")
        if not np.all(np.isfinite(d)):
            raise ValueError("draws contain non-finite entries")
        d.setflags(write=False)
        object.__setattr__(self, "draws", d)

    @property
    def N(self) -> int:
        return self.draws.shape[0]

    def merge(self, other: "SampleBatch") -> "SampleBatch":
        if other.space.dim != self.space.dim or other.t != self.t:
            raise ValueError("can only merge batches of the same space and time")
        return SampleBatch(self.space, self.t, np.vstack([self.draws, other.draws]), {"merged": [self.provenance, other.provenance]})


@dataclass(frozen=True)
class CFEstimate:
    value: complex
    stderr: float


def _start(m: MehlerModel, s: float, t: float) -> float:
    if s > t:
        raise DomainError(f"need s <= t, got s={s}, t={t}")
    if s == NEG_INF:
        return t - m.horizon(PROBE_NORM_MAX)
    return s


def _gaussian_draws(m, s, t, N, gen):
    var = gaussian_covariance(m, s, t)
    return gen.standard_normal((N, m.space.dim)) * np.sqrt(var)


def sample_gaussian(m: MehlerModel, s: float, t: float, N: int, rng: RngStream) -> SampleBatch:
    if sym.gaussian_part(m.symbol) is None:
        raise UndefinedForKindError("symbol has no Gaussian part")
    draws = _gaussian_draws(m, s, t, N, rng.generator())
    return SampleBatch(m.space, t, draws, {"sampler": "gaussian", "s": s, "seed": rng.seed, "stream": rng.stream_id})


def _cp_parts(lam):
    return [p for p in lam.parts() if isinstance(p, sym.CompoundPoisson)]


def _cp_draws(m, cp: sym.CompoundPoisson, s, t, N, gen):
    s0 = _start(m, s, t)
    length = t - s0
    dim = m.space.dim
    out = np.zeros((N, dim))
    if length == 0:
        return out
    rate = cp.total_mass * length
    probs = cp.masses / cp.total_mass
    for lo in range(0, N, _CHUNK):
        n = min(_CHUNK, N - lo)
        K = gen.poisson(rate, size=n)
        total = int(K.sum())
        if total == 0:
            continue
        owner = np.repeat(np.arange(n), K)
        r = gen.uniform(s0, t, size=total)
        j = gen.choice(cp.masses.size, size=total, p=probs)
        sign = np.where(gen.random(total) < 0.5, -1.0, 1.0)
        jumps = sign[:, None] * cp.jumps[j]
        contrib = m.U.factor(r, t) * m.sigma(r) * jumps
        for i in range(dim):
            out[lo : lo + n, i] += np.bincount(owner, weights=contrib[:, i], minlength=n)
    return out


def sample_compound_poisson(m: MehlerModel, s: float, t: float, N: int, rng: RngStream) -> SampleBatch:
    parts = _cp_parts(m.symbol)
    if not parts:
        raise UndefinedForKindError("symbol has no compound-Poisson part")
    gen = rng.generator()
    draws = sum(_cp_draws(m, cp, s, t, N, gen) for cp in parts)
    return SampleBatch(m.space, t, draws, {"sampler": "compound_poisson", "s": s, "seed": rng.seed, "stream": rng.stream_id})


def positive_stable(beta: float, size, gen: np.random.Generator) -> np.ndarray:
    """Positive ``beta``-stable variables with Laplace transform ``exp(-u^beta)``, ``0 < beta < 1``.

    Kanter's representation (the one-sided Chambers–Mallows–Stuck formula).
    """
    V = gen.uniform(0.0, np.pi, size=size)
    W = gen.standard_exponential(size=size)
    return (
        np.sin(beta * V) / np.sin(V) ** (1.0 / beta) * (np.sin((1.0 - beta) * V) / W) ** ((1.0 - beta) / beta)
    )


def isotropic_stable(alpha: float, dt: float, shape, gen: np.random.Generator) -> np.ndarray:
    """Vectors with characteristic function ``exp(-dt ||b||^alpha)``.

    Sub-Gaussian construction ``dt^{1/alpha} sqrt(2 A) Z`` with A positive
    ``alpha/2``-stable and Z standard normal. ``shape = (N, d)``.
    """
    A = positive_stable(0.5 * alpha, shape[0], gen)
    return dt ** (1.0 / alpha) * np.sqrt(2.0 * A)[:, None] * gen.standard_normal(shape)


def symmetric_stable(alpha: float, dt: float, size, gen: np.random.Generator) -> np.ndarray:
    """Scalars with characteristic function ``exp(-dt |s|^alpha)``."""
    return isotropic_stable(alpha, dt, (size, 1), gen)[:, 0]


def _stable_parts(lam):
    return [p for p in lam.parts() if isinstance(p, (sym.StableNorm, sym.StableMixing))]


def _stable_increment(part, dt, N, dim, gen):
    if isinstance(part, sym.StableNorm):
        return np.sqrt(part.S) * isotropic_stable(part.alpha, dt, (N, dim), gen)
    out = np.zeros((N, dim))
    for w, x in zip(part.weights, part.atoms):
        out += np.outer(symmetric_stable(part.alpha, w * dt, N, gen), x)
    return out


def _grid(m, s, t, grid_steps):
    s0 = _start(m, s, t)
    dt = (t - s0) / grid_steps
    mids = s0 + (np.arange(grid_steps) + 0.5) * dt
    return s0, dt, mids


def _stable_draws(m, part, s, t, N, grid_steps, gen):
    _, dt, mids = _grid(m, s, t, grid_steps)
    out = np.zeros((N, m.space.dim))
    if dt == 0:
        return out
    for r in mids:
        gain = m.U.factor(r, t) * m.sigma(r)
        out += gain * _stable_increment(part, dt, N, m.space.dim, gen)
    return out


def sample_stable(m: MehlerModel, s: float, t: float, N: int, grid_steps: int, rng: RngStream) -> SampleBatch:
    parts = _stable_parts(m.symbol)
    if not parts:
        raise UndefinedForKindError("symbol has no stable part")
    if grid_steps < 4:
        raise ValueError("grid_steps must be at least 4")
    gen = rng.generator()
    draws = sum(_stable_draws(m, p, s, t, N, grid_steps, gen) for p in parts)
    return SampleBatch(
        m.space, t, draws, {"sampler": "stable", "s": s, "grid_steps": grid_steps, "seed": rng.seed, "stream": rng.stream_id}
    )


def stable_grid_exponent(m: MehlerModel, s: float, t: float, grid_steps: int, A) -> np.ndarray:
    """Exact exponent of the Euler-grid sampler's law (midpoint sum of the stable terms)."""
    A = np.atleast_2d(A)
    _, dt, mids = _grid(m, s, t, grid_steps)
    out = np.zeros(A.shape[0])
    for part in _stable_parts(m.symbol):
        for r in mids:
            out += dt * part(m.sigma(r) * m.U.factor(r, t) * A)
    return out


def sample_base(m: MehlerModel, s: float, t: float, N: int, rng: RngStream, grid_steps: int = 256) -> SampleBatch:
    """Draws from ``mu_{s,t}``, summing independent samples of each symbol part."""
    draws = np.zeros((N, m.space.dim))
    kinds = []
    if sym.gaussian_part(m.symbol) is not None:
        draws += _gaussian_draws(m, s, t, N, rng.child(0).generator())
        kinds.append("gaussian")
    for k, cp in enumerate(_cp_parts(m.symbol)):
        draws += _cp_draws(m, cp, s, t, N, rng.child(1 + k).generator())
        kinds.append("compound_poisson")
    for k, part in enumerate(_stable_parts(m.symbol)):
        draws += _stable_draws(m, part, s, t, N, grid_steps, rng.child(100 + k).generator())
        kinds.append("stable")
    return SampleBatch(m.space, t, draws, {"sampler": "+".join(kinds), "s": s, "grid_steps": grid_steps, "seed": rng.seed, "stream": rng.stream_id})


def sample_entrance(law: EntranceLaw, t: float, N: int, rng: RngStream, grid_steps: int = 256) -> SampleBatch:
    """Draws from ``nu_t``: base draws from ``mu_{-inf,t}`` shifted by a chosen ``kappa_t``."""
    base = sample_base(law.model, NEG_INF, t, N, rng, grid_steps)
    comps = law.components()
    shifts = np.array([kappa(t) for _, kappa in comps])
    if len(comps) == 1:
        draws = base.draws + shifts[0]
    else:
        w = np.array([p for p, _ in comps])
        pick = rng.child(999).generator().choice(len(comps), size=N, p=w / w.sum())
        draws = base.draws + shifts[pick]
    return SampleBatch(law.model.space, t, draws, {**base.provenance, "law": type(law).__name__, "components": len(comps)})


def empirical_cf(batch: SampleBatch, a) -> CFEstimate:
    v = empirical_cf_values(batch, np.asarray(a, dtype=float)[None, :])[0]
    return CFEstimate(complex(v), cf_stderr(v, batch.N))


def empirical_cf_values(batch: SampleBatch, A) -> np.ndarray:
    A = np.atleast_2d(A)
    out = np.empty(A.shape[0], dtype=complex)
    for lo in range(0, batch.N, _CHUNK):
        block = np.exp(1j * (batch.draws[lo : lo + _CHUNK] @ A.T)).sum(axis=0)
        out = block if lo == 0 else out + block
    return out / batch.N


def cf_stderr(value, N: int):
    """``sqrt((1 - |v|^2) / N)`` capped below by ``1/sqrt(N)``."""
    v = np.abs(value)
    return np.maximum(np.sqrt(np.clip(1.0 - v * v, 0.0, None) / N), 1.0 / math.sqrt(N))
