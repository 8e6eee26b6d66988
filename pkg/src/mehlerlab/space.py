"""
Finite truncation of a separable Hilbert space.

Vectors are 1-D float arrays of coefficients in the fixed orthonormal basis
``e_1, ..., e_n``; diagonal operators are 1-D arrays of their diagonal
entries. Every operator in the package is diagonal in that basis, so the
adjoint of an operator is the operator itself.

Example
-------
>>> sp = TruncatedSpace(3)
>>> inner(sp.basis(1), sp.vec([1.0, 2.0, 3.0]))
1.0
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class TruncatedSpace:
    """Span of the first ``dim`` basis vectors."""

    dim: int
    label: str = "H"

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))

    def vec(self, coords) -> np.ndarray:
        v = _frozen(coords)
        if v.shape != (self.dim,):
            raise DimensionError(f"expected {self.dim} coordinates, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("vector coordinates must be finite")
        return v

    def zeros(self) -> np.ndarray:
        return _frozen(np.zeros(self.dim))

    def basis(self, i: int) -> np.ndarray:
        """Unit vector e_i (1-based, as in the notation e_1, ..., e_n)."""
        if not 1 <= i <= self.dim:
            raise DimensionError(f"basis index {i} outside 1..{self.dim}")
        v = np.zeros(self.dim)
        v[i - 1] = 1.0
        return _frozen(v)

    def diag(self, entries) -> np.ndarray:
        """Diagonal operator; a scalar is broadcast to ``scalar * I``."""
        d = np.asarray(entries, dtype=float)
        if d.ndim == 0:
            d = np.full(self.dim, float(d))
        if d.shape != (self.dim,):
            raise DimensionError(f"expected {self.dim} diagonal entries, got shape {d.shape}")
        if not np.all(np.isfinite(d)):
            raise ValueError("diagonal entries must be finite")
        return _frozen(d)

    def identity(self) -> np.ndarray:
        return self.diag(1.0)

    def check(self, x, what="vector") -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1:] != (self.dim,):
            raise DimensionError(f"{what} has trailing dimension {x.shape[-1:]}, space has {self.dim}")
        return x


def _same_dim(x: np.ndarray, y: np.ndarray):
    if x.shape[-1] != y.shape[-1]:
        raise DimensionError(f"dimension mismatch: {x.shape[-1]} vs {y.shape[-1]}")


def inner(x, y) -> float | np.ndarray:
    """Euclidean inner product of coordinate vectors (broadcasts over leading axes)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    _same_dim(x, y)
    return np.einsum("...i,...i->...", x, y)[()]


def norm(x) -> float | np.ndarray:
    return np.sqrt(inner(x, x))


def apply_diag(op, x) -> np.ndarray:
    """Coordinatewise product ``op_i * x_i``."""
    op = np.asarray(op, dtype=float)
    x = np.asarray(x, dtype=float)
    _same_dim(op, x)
    return op * x


@dataclass(frozen=True)
class ProbeSet:
    """Finite family of test vectors standing in for "all a in H".

    Always contains the zero vector, the signed basis vectors ``±e_i`` and
    ``n_random >= 16`` pseudorandom vectors whose norms are log-spaced over
    ``[0.1, 10]`` with uniformly random directions.
    """

    probes: np.ndarray
    seed: int
    space: TruncatedSpace = field(repr=False)

    @classmethod
    def build(cls, space: TruncatedSpace, seed: int = 0, n_random: int = 16) -> "ProbeSet":
        if n_random < 16:
            raise ValueError("a probe set needs at least 16 random vectors")
        rng = np.random.default_rng(seed)
        eye = np.eye(space.dim)
        directions = rng.standard_normal((n_random, space.dim))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        norms = np.geomspace(0.1, 10.0, n_random)
        rng.shuffle(norms)
        rows = np.vstack([np.zeros((1, space.dim)), eye, -eye, directions * norms[:, None]])
        return cls(_frozen(rows), int(seed), space)

    @classmethod
    def with_total(cls, space: TruncatedSpace, total: int, seed: int = 0) -> "ProbeSet":
        """Probe set of exactly ``total`` vectors (if that leaves >= 16 random ones)."""
        return cls.build(space, seed, n_random=total - 1 - 2 * space.dim)

    def __len__(self):
        return self.probes.shape[0]

    def __iter__(self):
        return iter(self.probes)

    def __getitem__(self, i):
        return self.probes[i]
