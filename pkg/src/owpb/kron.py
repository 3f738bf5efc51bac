"""Vectors of length ``2**k`` kept as Kronecker products of length-2 factors."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

__all__ = ["KroneckerVector", "kron_expand", "kron_dot"]


def kron_expand(factors) -> np.ndarray:
    """Dense Kronecker product of the factors, first factor most significant."""
    return reduce(np.kron, (np.asarray(f) for f in factors), np.ones(1, dtype=np.result_type(*factors, np.int64)))


def kron_dot(xs, ys) -> complex:
    """Symmetric (non-conjugating) dot product of two factored vectors.

    Uses ``(X1 (x) ... (x) Xk, Y1 (x) ... (x) Yk) = prod_i (Xi, Yi)``, which
    needs factors of equal dimension.
    """
    if len(xs) != len(ys):
        raise ValueError(f"factor counts differ: {len(xs)} vs {len(ys)}")
    out = 1
    for x, y in zip(xs, ys):
        x = np.asarray(x)
        y = np.asarray(y)
        if x.shape != y.shape:
            raise ValueError(f"factor shapes differ: {x.shape} vs {y.shape}")
        out = out * (x @ y)
    return out


@dataclass(frozen=True)
class KroneckerVector:
    """A vector stored as an ordered tuple of length-2 factors."""

    factors: tuple

    def __post_init__(self):
        factors = tuple(np.asarray(f) for f in self.factors)
        for f in factors:
            if f.shape != (2,):
                raise ValueError(f"factors must have shape (2,), got {f.shape}")
            f.setflags(write=False)
        object.__setattr__(self, "factors", factors)

    def __len__(self):
        return 1 << len(self.factors)

    def expand(self) -> np.ndarray:
        return kron_expand(self.factors)

    def dot(self, other) -> complex:
        return kron_dot(self.factors, other.factors)
