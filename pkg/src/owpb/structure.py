"""Column structure of the positive-branch matrix.

Column ``i`` of the raw matrix is ``eps_i * B_i @ phi`` where

* ``eps_i`` is the product of ``e^{-i theta_k}`` over the inputs selected by ``i``;
* ``phi`` is the factored vector ``(x)_k [1, e^{-i theta_k}]`` over pure auxiliaries;
* ``B_i`` is the ``2**n x 2**a`` sign pattern matrix, entry ``(p, q)`` being
  the edge-count parity of the subgraph induced by the inputs selected by
  ``i``, the auxiliaries selected by ``q`` and the outputs selected by ``p``.

``B_i`` factors as ``gamma_i * Delta_i @ S @ B @ N @ Omega_i`` with diagonal
sign matrices built from :mod:`owpb.signs`.  Physical amplitudes are the raw
values times ``2**-(m-n)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .dense import phi2_diagonal
from .exceptions import CapExceededError, PreconditionError
from .kron import KroneckerVector
from .pattern import Pattern, select, subset_bits
from .signs import b_vector, p_vector, sign_parity

__all__ = [
    "DEFAULT_SIGN_CAP_LOG2",
    "FactorBundle",
    "PhaseColumn",
    "epsilon_phase",
    "phase_vector",
    "sign_pattern_matrix",
    "sign_pattern_matrix_from_diagonal",
    "decompose_column_factors",
    "structured_column",
    "structured_matrix",
    "physical_scale",
    "FastEvaluator",
    "fast_entry",
]

DEFAULT_SIGN_CAP_LOG2 = 24
METHODS = ("theorem1", "decomposition")
SCALINGS = ("raw", "physical")


def sign_cap_log2(cap=None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get("OWPB_CAP")
    return int(env) if env else DEFAULT_SIGN_CAP_LOG2


def _check_cap(p: Pattern, cap):
    limit = sign_cap_log2(cap)
    if p.n + p.a > limit:
        raise CapExceededError(
            f"sign pattern matrices of size 2^{p.n} x 2^{p.a} exceed the cap of 2^{limit} entries"
        )


def _check_column(p: Pattern, i: int):
    if not 1 <= i <= 1 << p.n:
        raise ValueError(f"column index {i} out of range 1..{1 << p.n}")


def physical_scale(p: Pattern) -> float:
    return 2.0 ** -(p.m - p.n)


def epsilon_phase(p: Pattern, i: int) -> complex:
    """Column phase: product of ``e^{-i theta_k}`` over inputs selected by ``i``."""
    _check_column(p, i)
    total = sum(p.theta[k - 1] for k in select(p.inputs, i))
    return complex(np.exp(-1j * total))


def phase_vector(p: Pattern) -> KroneckerVector:
    """Unnormalized auxiliary phase vector, one factor ``[1, e^{-i theta}]`` per pure auxiliary."""
    return KroneckerVector(tuple(np.array([1.0, np.exp(-1j * t)]) for t in p.aux_angles))


@dataclass(frozen=True)
class PhaseColumn:
    epsilon: complex
    raw_column: np.ndarray


@dataclass(frozen=True)
class FactorBundle:
    """The six sign factors of ``B_i = gamma * Delta @ S @ B @ N @ Omega``.

    Diagonal factors are stored as their diagonals.
    """

    column: int
    gamma: int
    delta: np.ndarray
    s: np.ndarray
    b_full: np.ndarray
    n_diag: np.ndarray
    omega: np.ndarray

    def product(self) -> np.ndarray:
        left = self.gamma * self.delta * self.s
        right = self.n_diag * self.omega
        return left[:, None] * self.b_full * right[None, :]

    def apply(self, vec) -> np.ndarray:
        """``B_i @ vec`` evaluated right to left without forming ``B_i``."""
        return self.gamma * self.delta * self.s * (self.b_full @ (self.n_diag * self.omega * vec))

    def to_dict(self) -> dict:
        return {
            "column": self.column,
            "gamma": int(self.gamma),
            "delta": self.delta.tolist(),
            "s": self.s.tolist(),
            "b_full": self.b_full.tolist(),
            "n_diag": self.n_diag.tolist(),
            "omega": self.omega.tolist(),
        }


# --------------------------------------------------------------------------
# sign pattern matrices


def _induced_parities(upper: np.ndarray, x: np.ndarray, chunk: int = 1 << 16) -> np.ndarray:
    """``(-1)**(x U x^T)`` for each row of the 0/1 matrix ``x``."""
    out = np.empty(x.shape[0], dtype=np.int64)
    for start in range(0, x.shape[0], chunk):
        rows = x[start : start + chunk]
        out[start : start + chunk] = np.einsum("ki,ij,kj->k", rows, upper, rows) % 2
    return 1 - 2 * out


def sign_pattern_matrix(p: Pattern, i: int, cap=None) -> np.ndarray:
    """``B_i`` from the induced-subgraph rule, row ``p`` over outputs, column ``q`` over auxiliaries."""
    _check_column(p, i)
    _check_cap(p, cap)
    n, a, m = p.n, p.a, p.m
    upper = np.triu(p.adjacency, k=1)
    out = np.empty((1 << n, 1 << a), dtype=np.int64)
    x = np.zeros((1 << a, m), dtype=np.int64)
    for v in select(p.inputs, i):
        x[:, v - 1] = 1
    x[:, n : n + a] = subset_bits(a)
    out_bits = subset_bits(n)
    for row in range(1 << n):
        x[:, m - n :] = out_bits[row]
        out[row] = _induced_parities(upper, x)
    return out


def sign_pattern_matrix_from_diagonal(p: Pattern, i: int, diagonal=None, cap=None) -> np.ndarray:
    """``B_i`` read off the entangler diagonal: ``(B_i)_{j,l} = b[(i-1) 2^(m-n) + (l-1) 2^n + j]``."""
    _check_column(p, i)
    _check_cap(p, cap)
    b = phi2_diagonal(p) if diagonal is None else np.asarray(diagonal)
    n, a, m = p.n, p.a, p.m
    j = np.arange(1, (1 << n) + 1)[:, None]
    l = np.arange(1, (1 << a) + 1)[None, :]
    return b[(i - 1) * (1 << (m - n)) + (l - 1) * (1 << n) + j - 1]


def decompose_column_factors(p: Pattern, i: int) -> FactorBundle:
    _check_column(p, i)
    chosen_inputs = select(p.inputs, i)
    # rows of B are B(Sel(O, row), Aux); its entries are parities of x_O C x_A
    block = p.adjacency[np.ix_(np.array(p.outputs, np.int64) - 1, np.array(p.aux, np.int64) - 1)]
    b_full = 1 - 2 * ((subset_bits(p.n) @ block @ subset_bits(p.a).T) % 2)
    return FactorBundle(
        column=i,
        gamma=int(p_vector(p, p.inputs)[i - 1]),
        delta=b_vector(p, chosen_inputs, p.outputs),
        s=p_vector(p, p.outputs),
        b_full=b_full,
        n_diag=p_vector(p, p.aux),
        omega=b_vector(p, chosen_inputs, p.aux),
    )


# --------------------------------------------------------------------------
# matrices


def structured_column(p: Pattern, i: int, method: str = "decomposition", cap=None) -> PhaseColumn:
    _check_column(p, i)
    _check_cap(p, cap)
    eps = epsilon_phase(p, i)
    phi = phase_vector(p).expand()
    if method == "theorem1":
        col = sign_pattern_matrix(p, i, cap) @ phi
    elif method == "decomposition":
        col = decompose_column_factors(p, i).apply(phi)
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return PhaseColumn(epsilon=eps, raw_column=eps * col)


def structured_matrix(p: Pattern, method: str = "decomposition", scaling: str = "raw", cap=None) -> np.ndarray:
    """Positive-branch matrix assembled column by column from its sign structure."""
    if scaling not in SCALINGS:
        raise ValueError(f"unknown scaling {scaling!r}; expected one of {SCALINGS}")
    _check_cap(p, cap)
    mat = np.column_stack([structured_column(p, i, method, cap).raw_column for i in range(1, (1 << p.n) + 1)])
    if scaling == "physical":
        mat = mat * physical_scale(p)
    return mat


# --------------------------------------------------------------------------
# fast path for unconnected pure auxiliaries


def _masks(adj_rows: np.ndarray) -> list[int]:
    return [int(sum(1 << int(j) for j in np.flatnonzero(row))) for row in adj_rows]


class FastEvaluator:
    """Entry-wise evaluation of the raw matrix when no two pure auxiliaries are adjacent.

    With ``N`` the identity, row ``p`` of ``B_i`` restricted to auxiliaries is
    ``B_hat(v_p xor w_i)`` and its dot product with ``phi`` factors into
    ``prod_k (1 + (-1)**bit_k e^{-i theta_k})``.  Construction costs ``O(m^2)``;
    each entry costs ``O(n + a)`` integer and complex operations.
    """

    def __init__(self, p: Pattern):
        if p.aux_connected:
            raise PreconditionError("pure auxiliaries are connected; use the dense or structured path")
        self.pattern = p
        n, a = p.n, p.a
        adj = p.adjacency
        ins = np.arange(n)
        aux = np.arange(n, n + a)
        outs = np.arange(n + a, n + a + n)
        # neighbourhoods as bit masks; bit j of an aux mask is aux position j
        self._in_aux = _masks(adj[np.ix_(ins, aux)])
        self._out_aux = _masks(adj[np.ix_(outs, aux)])
        self._in_in = _masks(adj[np.ix_(ins, ins)])
        self._out_out = _masks(adj[np.ix_(outs, outs)])
        self._in_out = _masks(adj[np.ix_(ins, outs)])
        self._in_theta = p.input_angles
        phases = np.exp(-1j * np.asarray(p.aux_angles, dtype=float))
        self._plus = [complex(1 + z) for z in phases]
        self._minus = [complex(1 - z) for z in phases]

    def _chosen(self, index: int, size: int) -> list[int]:
        code = index - 1
        return [pos for pos in range(size) if (code >> (size - 1 - pos)) & 1]

    def entry(self, row: int, col: int) -> complex:
        n, a = self.pattern.n, self.pattern.a
        if not (1 <= row <= 1 << n and 1 <= col <= 1 << n):
            raise ValueError(f"entry ({row}, {col}) out of range 1..{1 << n}")
        ins = self._chosen(col, n)
        outs = self._chosen(row, n)
        in_mask = sum(1 << k for k in ins)
        out_mask = sum(1 << k for k in outs)

        # within inputs, within outputs, inputs <-> outputs
        count = sum((self._in_in[k] & in_mask).bit_count() for k in ins) // 2
        count += sum((self._out_out[k] & out_mask).bit_count() for k in outs) // 2
        count += sum((self._in_out[k] & out_mask).bit_count() for k in ins)
        sign = sign_parity(count)

        # parities of auxiliary neighbourhoods: v_p xor w_i
        u = 0
        for k in ins:
            u ^= self._in_aux[k]
        for k in outs:
            u ^= self._out_aux[k]

        value = complex(sign)
        for k in range(a):
            value *= self._minus[k] if (u >> k) & 1 else self._plus[k]
        if ins:
            value *= complex(np.exp(-1j * sum(self._in_theta[k] for k in ins)))
        return value


def fast_entry(p: Pattern, row: int, col: int) -> complex:
    """Raw matrix entry ``(row, col)`` via :class:`FastEvaluator`."""
    return FastEvaluator(p).entry(row, col)
