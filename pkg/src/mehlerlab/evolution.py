"""
Evolution families ``U_{s,t}`` and diffusion coefficients ``sigma(r)``.

All families are diagonal, ``U_{s,t} = diag(exp(-G_i(s, t)))`` with a closed
form log-decay ``G``, so the cocycle ``U_{r,t} U_{s,r} = U_{s,t}`` holds to
machine precision and ``U* = U``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError


def _column(g):
    # scalar families evaluated at an array of times broadcast against (..., dim)
    g = np.asarray(g, dtype=float)
    return g[..., None] if g.ndim else g


class EvolutionFamily:
    """Base class. Subclasses implement :meth:`log_decay` and :meth:`certificate`."""

    #: time period T when the family is T-periodic and not time-homogeneous
    period: float | None = None
    dim: int | None = None

    def log_decay(self, s, t):
        """Signed ``G(s, t) = ∫_s^t rate(r) dr``; valid for any ordering of s, t."""
        raise NotImplementedError

    def certificate(self) -> tuple[float, float]:
        """``(c, omega)`` with ``||U_{s,t}|| <= c exp(-omega (t - s))``."""
        raise NotImplementedError

    def factor(self, s, t) -> np.ndarray:
        """Diagonal of ``U_{s,t}`` (scalar-valued families return a 0-d or broadcastable array)."""
        return np.exp(-np.asarray(self.log_decay(s, t), dtype=float))

    def evolve(self, s, t, x) -> np.ndarray:
        return evolve(self, s, t, x)


@dataclass(frozen=True)
class ScalarContraction(EvolutionFamily):
    """``U_{s,t} = exp(-omega (t - s)) I``."""

    omega: float

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError("omega must be positive")

    def log_decay(self, s, t):
        return _column(self.omega * (np.asarray(t, dtype=float) - s))

    def certificate(self):
        return 1.0, float(self.omega)


@dataclass(frozen=True, eq=False)
class DiagonalSemigroup(EvolutionFamily):
    """``U_{s,t} = diag(exp(-lambda_i (t - s)))``, i.e. ``exp((t - s) A)`` with ``A e_i = -lambda_i e_i``."""

    eigs: np.ndarray

    def __post_init__(self):
        eigs = np.array(self.eigs, dtype=float)
        if eigs.ndim != 1 or eigs.size == 0:
            raise ValueError("eigs must be a non-empty 1-D array")
        if not np.all(eigs > 0):
            raise ValueError("all eigenvalues lambda_i must be positive")
        eigs.setflags(write=False)
        object.__setattr__(self, "eigs", eigs)
        object.__setattr__(self, "dim", eigs.size)

    @classmethod
    def dirichlet_laplacian(cls, dim: int) -> "DiagonalSemigroup":
        """Dirichlet Laplacian on (0, 1): ``lambda_i = pi^2 i^2``."""
        i = np.arange(1, dim + 1, dtype=float)
        return cls(np.pi**2 * i**2)

    def log_decay(self, s, t):
        dt = np.asarray(t, dtype=float) - s
        return self.eigs * dt[..., None] if np.ndim(dt) else self.eigs * float(dt)

    def certificate(self):
        return 1.0, float(self.eigs.min())


@dataclass(frozen=True)
class PeriodicScalar(EvolutionFamily):
    """Scalar family with periodic rate ``omega(r) = omega0 (1 + amp sin(2 pi r / T))``."""

    omega0: float
    amp: float
    period: float

    def __post_init__(self):
        if not self.omega0 > 0:
            raise ValueError("omega0 must be positive")
        if not 0 <= self.amp < 1:
            raise ValueError("amp must lie in [0, 1)")
        if not self.period > 0:
            raise ValueError("period must be positive")

    def log_decay(self, s, t):
        t = np.asarray(t, dtype=float)
        k = 2 * np.pi / self.period
        osc = self.amp / k * (np.cos(k * t) - np.cos(k * s))
        return _column(self.omega0 * ((t - s) - osc))

    def certificate(self):
        c = math.exp(self.omega0 * self.amp * self.period / math.pi)
        return c, self.omega0 * (1 - self.amp)


def evolve(U: EvolutionFamily, s: float, t: float, x) -> np.ndarray:
    """``U_{s,t} x``; since ``U* = U`` this also computes ``U*_{s,t} a``.

    ``x`` may carry leading batch axes.
    """
    if s > t:
        raise DomainError(f"evolve needs s <= t, got s={s}, t={t}")
    x = np.asarray(x, dtype=float)
    if U.dim is not None and x.shape[-1] != U.dim:
        raise DimensionError(f"family has dim {U.dim}, vector has {x.shape[-1]}")
    if s == t:
        return x.copy()
    return U.factor(s, t) * x


def contraction_certificate(U: EvolutionFamily) -> tuple[float, float]:
    return U.certificate()


class Sigma:
    """Diffusion coefficient ``sigma(r)``, diagonal for every r."""

    period: float | None = None
    dim: int

    def __call__(self, r) -> np.ndarray:
        raise NotImplementedError

    def sup_norm(self) -> float:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class ConstantDiag(Sigma):
    diag: np.ndarray

    def __post_init__(self):
        d = np.array(self.diag, dtype=float)
        d.setflags(write=False)
        object.__setattr__(self, "diag", d)

    @property
    def dim(self):
        return self.diag.size

    def __call__(self, r):
        return self.diag

    def sup_norm(self):
        return float(np.abs(self.diag).max())


@dataclass(frozen=True, eq=False)
class PeriodicScalarMod(Sigma):
    """``sigma(r) = (1 + amp cos(2 pi r / T)) * base``."""

    base: np.ndarray
    amp: float
    period: float

    def __post_init__(self):
        d = np.array(self.base, dtype=float)
        d.setflags(write=False)
        object.__setattr__(self, "base", d)
        if not 0 <= self.amp < 1:
            raise ValueError("amp must lie in [0, 1)")
        if not self.period > 0:
            raise ValueError("period must be positive")

    @property
    def dim(self):
        return self.base.size

    def __call__(self, r):
        scale = _column(1.0 + self.amp * np.cos(2 * np.pi * np.asarray(r, dtype=float) / self.period))
        return scale * self.base

    def sup_norm(self):
        return (1.0 + self.amp) * float(np.abs(self.base).max())


def sigma_eval(sigma: Sigma, r: float) -> np.ndarray:
    return sigma(r)
