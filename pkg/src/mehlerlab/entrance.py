"""
Entrance laws of a Mehler semigroup.

For a path ``kappa`` with ``U_{s,t} kappa_s = kappa_t`` the family
``nu_t = mu_{-inf,t}( . - kappa_t)`` is an extremal entrance law with
characteristic function ``exp(i <a, kappa_t>) mu_{-inf,t}^(a)``. Finite convex
combinations of such laws are the mixtures handled here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .evolution import EvolutionFamily, evolve
from .mehler import NEG_INF, CFValue, MehlerModel, exponent_batch, mu_cf_values
from .space import ProbeSet

#: cap on the growth exponent of backward-extended paths
MAX_BACKWARD_EXPONENT = 700.0


class KappaPath:
    """Path ``t -> kappa_t`` in the truncated space."""

    def __call__(self, t: float) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Zero(KappaPath):
    dim: int

    def __call__(self, t):
        return np.zeros(self.dim)


@dataclass(frozen=True, eq=False)
class FromInitial(KappaPath):
    """``kappa_t = U_{0,t} x0``, extended to ``t < 0`` by the closed-form inverse.

    The backward extension grows like ``exp(lambda_i |t|)`` per mode; a mode
    with nonzero coefficient whose growth exponent exceeds
    :data:`MAX_BACKWARD_EXPONENT` raises :class:`DomainError`.
    """

    family: EvolutionFamily
    x0: np.ndarray

    def __post_init__(self):
        x0 = np.array(self.x0, dtype=float)
        x0.setflags(write=False)
        object.__setattr__(self, "x0", x0)

    @property
    def dim(self):
        return self.x0.size

    def __call__(self, t):
        g = np.broadcast_to(np.asarray(self.family.log_decay(0.0, t), dtype=float), self.x0.shape)
        active = self.x0 != 0
        if np.any(-g[active] > MAX_BACKWARD_EXPONENT):
            raise DomainError(f"backward extension to t={t} overflows (growth exponent > {MAX_BACKWARD_EXPONENT})")
        out = np.zeros_like(self.x0)
        out[active] = np.exp(-g[active]) * self.x0[active]
        return out


@dataclass(frozen=True, eq=False)
class Shifted(KappaPath):
    """``base(t) + offset``: generally NOT in K(U); used as a negative control."""

    base: KappaPath
    offset: np.ndarray

    @property
    def dim(self):
        return np.size(self.offset)

    def __call__(self, t):
        return self.base(t) + np.asarray(self.offset, dtype=float)


def kappa_eval(kappa: KappaPath, t: float) -> np.ndarray:
    return kappa(t)


class EntranceLaw:
    model: MehlerModel

    def components(self) -> list[tuple[float, KappaPath]]:
        raise NotImplementedError

    def cf(self, t: float):
        """Callable ``A -> nu_t^(A)`` on arrays of probe vectors."""
        return lambda A: entrance_cf_values(self, t, A)


@dataclass(frozen=True, eq=False)
class Extremal(EntranceLaw):
    model: MehlerModel
    kappa: KappaPath

    def components(self):
        return [(1.0, self.kappa)]


@dataclass(frozen=True, eq=False)
class Mixture(EntranceLaw):
    """Finite mixture ``sum_k p_k nu^{kappa_k}`` of extremal laws."""

    model: MehlerModel
    weights: tuple
    kappas: tuple

    def __post_init__(self):
        w = tuple(float(p) for p in self.weights)
        if len(w) != len(self.kappas) or not w:
            raise ValueError("need one weight per component")
        if any(p <= 0 for p in w):
            raise ValueError("mixture weights must be positive")
        if abs(math.fsum(w) - 1.0) > 1e-12:
            raise ValueError(f"mixture weights must sum to 1, got {math.fsum(w)}")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "kappas", tuple(self.kappas))

    def components(self):
        return list(zip(self.weights, self.kappas))


def _phase_sum(law: EntranceLaw, t: float, A: np.ndarray) -> np.ndarray:
    out = np.zeros(A.shape[0], dtype=complex)
    for p, kappa in law.components():
        out += p * np.exp(1j * (A @ kappa(t)))
    return out


def entrance_cf_values(law: EntranceLaw, t: float, A) -> np.ndarray:
    A = np.atleast_2d(law.model.space.check(A, "probe"))
    return _phase_sum(law, t, A) * mu_cf_values(law.model, NEG_INF, t, A)


def entrance_cf(law: EntranceLaw, t: float, a) -> CFValue:
    a = np.asarray(a, dtype=float)[None, :]
    E, err = exponent_batch(law.model, NEG_INF, t, a)
    phase = _phase_sum(law, t, a)[0]
    return CFValue(complex(phase * math.exp(-E[0])), float(E[0]), float(err[0]))


def flow_residual(law: EntranceLaw, s: float, t: float, probes) -> float:
    """``max_a |nu_t^(a) - nu_s^(U*_{s,t} a) mu_{s,t}^(a)|``."""
    return float(flow_residuals(law, s, t, probes).max())


def flow_residuals(law: EntranceLaw, s: float, t: float, probes) -> np.ndarray:
    if s > t:
        raise DomainError(f"need s <= t, got s={s}, t={t}")
    A = probes.probes if isinstance(probes, ProbeSet) else np.atleast_2d(probes)
    m = law.model
    lhs = entrance_cf_values(law, t, A)
    rhs = entrance_cf_values(law, s, evolve(m.U, s, t, A)) * mu_cf_values(m, s, t, A)
    return np.abs(lhs - rhs)


def mean_projection(law: EntranceLaw, t: float, h: float = 1e-5) -> np.ndarray:
    """Mean vector of ``nu_t`` from central differences of its characteristic function.

    ``d/dh Im nu_t^(h e_i)`` at 0 equals the i-th mean coordinate. Central
    differences at steps h and h/2 are combined by one Richardson step.
    """
    dim = law.model.space.dim
    eye = np.eye(dim)
    A = np.vstack([h * eye, -h * eye, 0.5 * h * eye, -0.5 * h * eye])
    im = entrance_cf_values(law, t, A).imag.reshape(4, dim)
    d_h = (im[0] - im[1]) / (2 * h)
    d_half = (im[2] - im[3]) / h
    return (4.0 * d_half - d_h) / 3.0


def expected_mean(law: EntranceLaw, t: float) -> np.ndarray:
    return sum(p * kappa(t) for p, kappa in law.components())


def periodic_residual(law: EntranceLaw, t: float, n: int, probes) -> float:
    """Pulled-back phase discrepancy after ``n`` periods.

    ``max_a |sum_k p_k exp(i <a, U_{t-nT,t} kappa_k(t)>) - 1| * mu_{-inf,t}^(a)``.
    For a contraction family this decays like ``exp(-omega n T)``, the
    mechanism behind uniqueness of the periodic entrance law.
    """
    m = law.model
    T = m.period
    if T is None:
        raise DomainError("periodic_residual needs a T-periodic model")
    A = probes.probes if isinstance(probes, ProbeSet) else np.atleast_2d(probes)
    phase = np.zeros(A.shape[0], dtype=complex)
    for p, kappa in law.components():
        pulled = evolve(m.U, t - n * T, t, kappa(t))
        phase += p * np.exp(1j * (A @ pulled))
    base = mu_cf_values(m, NEG_INF, t, A).real
    return float((np.abs(phase - 1.0) * base).max())
