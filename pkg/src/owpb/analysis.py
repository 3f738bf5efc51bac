"""Determinism diagnostics and pattern equality."""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .pattern import Pattern
from .structure import structured_matrix

__all__ = [
    "DEFAULT_TOL",
    "DEFAULT_SEED",
    "DeterminismVerdict",
    "UniformVerdict",
    "EqualityVerdict",
    "gram",
    "check_determinism",
    "check_uniform_determinism",
    "patterns_equal",
    "probe_angles",
]

DEFAULT_TOL = 1e-9
DEFAULT_SEED = 20240601
MAX_PROBES = 256
PROBE_GRID = (0.0, math.pi / 2, math.pi, 3 * math.pi / 2)


@dataclass(frozen=True)
class DeterminismVerdict:
    deterministic: bool
    lambda_: float
    max_deviation: float
    strongly_uniform_probability: bool

    def to_dict(self) -> dict:
        return {
            "deterministic": self.deterministic,
            "lambda": self.lambda_,
            "max_deviation": self.max_deviation,
            "strongly_uniform_probability": self.strongly_uniform_probability,
        }


@dataclass(frozen=True)
class UniformVerdict:
    uniform: bool
    samples_checked: int
    seed: int
    witness: tuple | None = None

    @property
    def message(self) -> str:
        if self.uniform:
            return f"no counterexample in {self.samples_checked} samples"
        return f"counterexample found after {self.samples_checked} samples"

    def to_dict(self) -> dict:
        out = asdict(self)
        out["witness"] = None if self.witness is None else list(self.witness)
        out["message"] = self.message
        return out


class EqualityVerdict(NamedTuple):
    equal: bool
    max_deviation: float


def gram(p: Pattern, cap=None) -> np.ndarray:
    """Column inner products of the raw matrix, ``G[i, j] = <col_i, col_j>``."""
    mat = structured_matrix(p, "decomposition", "raw", cap)
    return mat.conj().T @ mat


def check_determinism(p: Pattern, tol: float = DEFAULT_TOL, cap=None) -> DeterminismVerdict:
    """Whether the Gram matrix is proportional to the identity.

    ``lambda`` is the mean diagonal; equiprobable branches give
    ``lambda = 2**(m-n)`` in raw scaling.
    """
    g = gram(p, cap)
    lam = float(np.mean(g.diagonal().real))
    deviation = float(np.max(np.abs(g - lam * np.eye(g.shape[0]))))
    return DeterminismVerdict(
        deterministic=deviation <= tol,
        lambda_=lam,
        max_deviation=deviation,
        strongly_uniform_probability=abs(lam - 2.0 ** (p.m - p.n)) <= tol,
    )


def probe_angles(a: int, limit: int = MAX_PROBES):
    """Auxiliary angle assignments from the quarter-turn grid, at most ``limit`` of them."""
    return list(itertools.islice(itertools.product(PROBE_GRID, repeat=a), limit))


def check_uniform_determinism(
    p: Pattern, samples: int = 100, seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL, cap=None
) -> UniformVerdict:
    """Probe determinism over auxiliary angles; input angles stay as given.

    The quarter-turn grid is checked first, then ``samples`` uniform draws on
    ``[0, 2 pi)``.  Draw ``s`` uses its own generator seeded by ``(seed, s)``.
    A ``True`` verdict means no counterexample was found, not a proof.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if p.a == 0:
        ok = check_determinism(p, tol, cap).deterministic
        return UniformVerdict(uniform=ok, samples_checked=1, seed=seed, witness=None if ok else p.theta)

    def candidates():
        yield from probe_angles(p.a)
        for s in range(samples):
            yield tuple(np.random.default_rng([seed, s]).uniform(0.0, 2 * math.pi, size=p.a))

    checked = 0
    for aux in candidates():
        checked += 1
        trial = p.with_aux_angles(aux)
        if not check_determinism(trial, tol, cap).deterministic:
            return UniformVerdict(uniform=False, samples_checked=checked, seed=seed, witness=trial.theta)
    return UniformVerdict(uniform=True, samples_checked=checked, seed=seed)


def _phase_anchor(mat: np.ndarray) -> complex:
    flat = mat.reshape(-1)
    mags = np.abs(flat)
    peak = mags.max()
    if peak == 0:
        return 1.0
    # first row-major entry within rounding of the maximum, so near-ties resolve the same way for equal inputs
    idx = int(np.flatnonzero(mags >= peak * (1 - 1e-12))[0])
    return flat[idx] / mags[idx]


def patterns_equal(
    pa: Pattern, pb: Pattern, tol: float = DEFAULT_TOL, up_to_global_phase: bool = False
) -> EqualityVerdict:
    """Compare the physical positive-branch matrices of two patterns entrywise."""
    if pa.n != pb.n:
        raise ValueError(f"patterns act on different numbers of qubits: n={pa.n} vs n={pb.n}")
    ma = structured_matrix(pa, scaling="physical")
    mb = structured_matrix(pb, scaling="physical")
    if up_to_global_phase:
        ma = ma / _phase_anchor(ma)
        mb = mb / _phase_anchor(mb)
    deviation = float(np.max(np.abs(ma - mb)))
    return EqualityVerdict(deviation <= tol, deviation)
