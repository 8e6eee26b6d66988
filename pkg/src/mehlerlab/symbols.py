"""
Symmetric Lévy symbols ``lambda`` and their Lévy–Khinchin data.

Every symbol here is real, even and vanishes at 0, so it has the symmetric
form ``lambda(a) = 1/2 <a, R a> + ∫ (1 - cos <a, x>) M(dx)`` with a symmetric
Lévy measure ``M`` and zero drift. Symbols are callable on arrays of shape
``(..., dim)`` and return arrays of shape ``(...)``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import DimensionError, UndefinedForKindError

__all__ = [
    "LevySymbol",
    "GaussianForm",
    "StableNorm",
    "StableMixing",
    "CompoundPoisson",
    "Sum",
    "LevyTriple",
    "StableRay",
    "GaussianMixedRay",
    "FiniteAtoms",
    "symbol_eval",
    "negative_definite_check",
    "levy_tail_moment",
    "to_triple",
    "stable_constant",
    "gaussian_part",
]


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def _check_alpha(alpha):
    if not 1.0 < alpha < 2.0:
        raise ValueError(f"stable index alpha must lie strictly inside (1, 2), got {alpha}")


class LevySymbol:
    """Base class for symbols."""

    dim: int

    def __call__(self, b) -> np.ndarray:
        raise NotImplementedError

    def envelope(self) -> list[tuple[float, float]]:
        """Pairs ``(K, p)`` with ``lambda(b) <= sum K ||b||^p`` for all b."""
        raise NotImplementedError

    def scale(self, bnorm) -> np.ndarray:
        """Size estimate of ``lambda`` on vectors of norm ``bnorm``, used to normalise quadrature."""
        return sum(K * np.asarray(bnorm, dtype=float) ** p for K, p in self.envelope())

    def parts(self) -> list["LevySymbol"]:
        return [self]

    def _check(self, b):
        b = np.asarray(b, dtype=float)
        if b.shape[-1] != self.dim:
            raise DimensionError(f"symbol has dim {self.dim}, argument has {b.shape[-1]}")
        return b


@dataclass(frozen=True, eq=False)
class GaussianForm(LevySymbol):
    """``lambda(a) = 1/2 <a, R a>`` for a diagonal covariance R >= 0."""

    R: np.ndarray

    def __post_init__(self):
        R = _frozen(self.R)
        if np.any(R < 0):
            raise ValueError("covariance R must be nonnegative")
        object.__setattr__(self, "R", R)

    @property
    def dim(self):
        return self.R.size

    def __call__(self, b):
        b = self._check(b)
        return 0.5 * np.einsum("...i,i,...i->...", b, self.R, b)

    def envelope(self):
        return [(0.5 * float(self.R.max()), 2.0)]


@dataclass(frozen=True, eq=False)
class StableNorm(LevySymbol):
    """Isotropic-type stable symbol ``lambda(a) = ||S^{1/2} a||^alpha``."""

    alpha: float
    S: np.ndarray

    def __post_init__(self):
        _check_alpha(self.alpha)
        S = _frozen(self.S)
        if np.any(S < 0):
            raise ValueError("S must be nonnegative")
        object.__setattr__(self, "S", S)

    @property
    def dim(self):
        return self.S.size

    def __call__(self, b):
        b = self._check(b)
        q = np.einsum("...i,i,...i->...", b, self.S, b)
        return q ** (0.5 * self.alpha)

    def envelope(self):
        return [(float(self.S.max()) ** (0.5 * self.alpha), float(self.alpha))]


@dataclass(frozen=True, eq=False)
class StableMixing(LevySymbol):
    """``lambda(a) = sum_k w_k |<a, x_k>|^alpha`` for a finite mixing measure."""

    alpha: float
    weights: np.ndarray
    atoms: np.ndarray

    def __post_init__(self):
        _check_alpha(self.alpha)
        w = _frozen(self.weights)
        x = _frozen(np.atleast_2d(self.atoms))
        if w.ndim != 1 or x.shape[0] != w.size:
            raise ValueError("need one weight per atom")
        if np.any(w <= 0):
            raise ValueError("mixing weights must be positive")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "atoms", x)

    @property
    def dim(self):
        return self.atoms.shape[1]

    def __call__(self, b):
        b = self._check(b)
        return np.abs(b @ self.atoms.T) ** self.alpha @ self.weights

    def envelope(self):
        norms = np.linalg.norm(self.atoms, axis=1)
        return [(float(self.weights @ norms**self.alpha), float(self.alpha))]


@dataclass(frozen=True, eq=False)
class CompoundPoisson(LevySymbol):
    """``lambda(a) = sum_j m_j (1 - cos <a, v_j>)``.

    The Lévy measure is the symmetrised atom set: mass ``m_j / 2`` at each of
    ``±v_j``, total mass ``sum_j m_j``.
    """

    masses: np.ndarray
    jumps: np.ndarray

    def __post_init__(self):
        m = _frozen(self.masses)
        v = _frozen(np.atleast_2d(self.jumps))
        if m.ndim != 1 or v.shape[0] != m.size:
            raise ValueError("need one mass per jump")
        if np.any(m <= 0):
            raise ValueError("jump masses must be positive")
        object.__setattr__(self, "masses", m)
        object.__setattr__(self, "jumps", v)

    @property
    def dim(self):
        return self.jumps.shape[1]

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum())

    def __call__(self, b):
        b = self._check(b)
        # 1 - cos x = 2 sin^2(x/2) keeps relative accuracy for small arguments
        return 2.0 * np.sin(0.5 * (b @ self.jumps.T)) ** 2 @ self.masses

    def envelope(self):
        norms = np.linalg.norm(self.jumps, axis=1)
        return [(0.5 * float(self.masses @ norms**2), 2.0)]

    def scale(self, bnorm):
        return np.minimum(super().scale(bnorm), 2.0 * self.total_mass)


@dataclass(frozen=True, eq=False)
class Sum(LevySymbol):
    """Sum of independent symbols (convolution of the noises)."""

    terms: tuple = field(default_factory=tuple)

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise ValueError("Sum needs at least one term")
        dims = {t.dim for t in terms}
        if len(dims) != 1:
            raise DimensionError(f"Sum terms live in different dimensions {sorted(dims)}")
        object.__setattr__(self, "terms", terms)

    @property
    def dim(self):
        return self.terms[0].dim

    def __call__(self, b):
        b = self._check(b)
        return sum(term(b) for term in self.terms)

    def envelope(self):
        return [pair for term in self.terms for pair in term.envelope()]

    def scale(self, bnorm):
        return sum(term.scale(bnorm) for term in self.terms)

    def parts(self):
        return [p for term in self.terms for p in term.parts()]


def symbol_eval(lam: LevySymbol, a) -> float | np.ndarray:
    return lam(a)[()]


def gaussian_part(lam: LevySymbol) -> np.ndarray | None:
    """Summed covariance of all Gaussian terms, or None if there are none."""
    Rs = [p.R for p in lam.parts() if isinstance(p, GaussianForm)]
    if not Rs:
        return None
    return _frozen(np.sum(Rs, axis=0))


def without_gaussian(lam: LevySymbol) -> LevySymbol | None:
    rest = [p for p in lam.parts() if not isinstance(p, GaussianForm)]
    if not rest:
        return None
    return rest[0] if len(rest) == 1 else Sum(tuple(rest))


@functools.lru_cache(maxsize=None)
def stable_constant(alpha: float) -> float:
    """``c_alpha = ∫_0^∞ (1 - cos u) u^{-1-alpha} du`` by quadrature.

    Split at u = 1: the near part is regular after writing ``1 - cos u =
    2 sin^2(u/2)``; the far part is a power integral minus a Fourier integral
    handled by QUADPACK's QAWF routine.
    """
    _check_alpha(alpha)
    opts = dict(epsabs=0.0, epsrel=1e-12, limit=200)
    near, _ = integrate.quad(lambda u: 2.0 * math.sin(0.5 * u) ** 2 * u ** (-1.0 - alpha), 0.0, 1.0, **opts)
    power = 1.0 / alpha
    fourier, _ = integrate.quad(lambda u: u ** (-1.0 - alpha), 1.0, np.inf, weight="cos", wvar=1.0, limlst=100)
    return near + power - fourier


def levy_tail_moment(lam: LevySymbol) -> float:
    """``∫_{||x|| > 1} ||x|| M(dx)`` for stable-mixing and compound-Poisson symbols.

    Gaussian terms carry no Lévy measure and are skipped inside a Sum; a pure
    Gaussian symbol, or any StableNorm term, raises
    :class:`UndefinedForKindError`.
    """
    parts = lam.parts()
    if all(isinstance(p, GaussianForm) for p in parts):
        raise UndefinedForKindError("Gaussian symbol has no Lévy measure; tail moment is vacuous")
    total = 0.0
    for p in parts:
        if isinstance(p, GaussianForm):
            continue
        if isinstance(p, StableMixing):
            norms = np.linalg.norm(p.atoms, axis=1)
            total += float(p.weights @ norms**p.alpha) / (stable_constant(p.alpha) * (p.alpha - 1.0))
        elif isinstance(p, CompoundPoisson):
            norms = np.linalg.norm(p.jumps, axis=1)
            total += float(p.masses @ np.where(norms > 1.0, norms, 0.0))
        else:
            raise UndefinedForKindError(f"tail moment not available for {type(p).__name__}")
    return total


@dataclass(frozen=True, eq=False)
class StableRay:
    """``M(B) = c_alpha^{-1} sum_k w_k ∫_0^∞ 1_B(t x_k) t^{-1-alpha} dt``."""

    alpha: float
    weights: np.ndarray
    atoms: np.ndarray
    c_alpha: float


@dataclass(frozen=True, eq=False)
class GaussianMixedRay:
    """Ray measure of ``||S^{1/2} a||^alpha``, mixed over the centred Gaussian N(0, S)."""

    alpha: float
    S: np.ndarray


@dataclass(frozen=True, eq=False)
class FiniteAtoms:
    """Symmetrised atoms: mass ``masses[j]`` at each ``jumps[j]`` (both signs present)."""

    masses: np.ndarray
    jumps: np.ndarray


@dataclass(frozen=True, eq=False)
class LevyTriple:
    """``(b, R, M)``; ``M`` is a tuple of measure descriptors, empty when M = 0."""

    b: np.ndarray
    R: np.ndarray
    M: tuple = ()


def to_triple(lam: LevySymbol) -> LevyTriple:
    dim = lam.dim
    R = gaussian_part(lam)
    measures = []
    for p in lam.parts():
        if isinstance(p, StableMixing):
            measures.append(StableRay(p.alpha, p.weights, p.atoms, stable_constant(p.alpha)))
        elif isinstance(p, StableNorm):
            measures.append(GaussianMixedRay(p.alpha, p.S))
        elif isinstance(p, CompoundPoisson):
            measures.append(
                FiniteAtoms(
                    _frozen(np.concatenate([p.masses, p.masses]) / 2.0),
                    _frozen(np.vstack([p.jumps, -p.jumps])),
                )
            )
    return LevyTriple(
        b=_frozen(np.zeros(dim)),
        R=R if R is not None else _frozen(np.zeros(dim)),
        M=tuple(measures),
    )


def negative_definite_check(phi, n: int = 5, seed: int = 0, trials: int = 50, dim: int | None = None) -> float:
    """Largest value of ``Re sum_{ij} phi(a_i - a_j) c_i conj(c_j)`` found with ``sum c_i = 0``.

    Each trial draws ``n`` Gaussian probe vectors and a random complex
    coefficient vector with zero sum; the trial also evaluates the worst
    unit-norm zero-sum coefficient vector (top eigenvector of the projected
    matrix), so the returned value is a search over both. A true negative
    definite ``phi`` gives a value at rounding level.
    """
    if n < 2:
        raise ValueError("need n >= 2 probes")
    dim = dim if dim is not None else phi.dim
    rng = np.random.default_rng(seed)
    P = np.eye(n) - 1.0 / n
    worst = -np.inf
    for _ in range(trials):
        a = rng.standard_normal((n, dim))
        D = np.asarray(phi(a[:, None, :] - a[None, :, :]), dtype=float)
        D = 0.5 * (D + D.T)
        c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        c -= c.mean()
        c /= np.linalg.norm(c)
        random_form = float(np.real(c @ D @ np.conj(c)))
        top = float(np.linalg.eigvalsh(P @ D @ P).max())
        worst = max(worst, random_form, top)
    return worst
