"""Brute-force state-vector simulation of the positive branch.

Each column of the positive-branch matrix is obtained by literally running
the projection-based computation on a ``2**m`` amplitude vector:

1. prepare ``|i>`` on the inputs and ``|+>`` on every other qubit;
2. rotate each measured qubit by ``Z(-theta)`` (phase ``e^{-i theta}`` on
   ``|1>``), since ``<+_theta| = <+| Z(-theta)``;
3. apply ``CZ`` for every edge, one at a time;
4. contract the ``m - n`` measured qubits against normalized ``<+|``.

The result is in physical scaling, i.e. the actual amplitudes of the
post-selected branch.
"""

from __future__ import annotations

import os

import numpy as np

from .exceptions import CapExceededError
from .pattern import Pattern, subset_bits

__all__ = ["DEFAULT_QUBIT_CAP", "phi2_diagonal", "cz_diagonal", "dense_apply", "dense_column", "dense_positive_branch"]

DEFAULT_QUBIT_CAP = 22


def qubit_cap(cap=None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get("OWPB_CAP")
    return int(env) if env else DEFAULT_QUBIT_CAP


def _qubit_bits(m: int) -> np.ndarray:
    # column l-1 holds the value of qubit l in every basis state (qubit 1 most significant)
    return subset_bits(m)


def phi2_diagonal(p: Pattern) -> np.ndarray:
    """Diagonal of the full entangler: ``(-1)**sum_{(i,j) in E} x_i x_j`` per basis state."""
    x = _qubit_bits(p.m)
    parity = np.zeros(1 << p.m, dtype=np.int64)
    for u, v in p.edges:
        parity ^= x[:, u - 1] & x[:, v - 1]
    return 1 - 2 * parity


def cz_diagonal(m: int, u: int, v: int) -> np.ndarray:
    """Diagonal of ``CZ`` acting on qubits ``u`` and ``v`` of an ``m``-qubit register."""
    diag = np.ones((2,) * m, dtype=np.int64)
    index = [slice(None)] * m
    index[u - 1] = 1
    index[v - 1] = 1
    diag[tuple(index)] = -1
    return diag.reshape(-1)


def _check_cap(p: Pattern, cap):
    limit = qubit_cap(cap)
    if p.m > limit:
        raise CapExceededError(f"dense simulation of m={p.m} qubits exceeds the cap of {limit} (use --cap to raise it)")


def dense_apply(p: Pattern, psi, cap=None, edge_order=None) -> np.ndarray:
    """Physical output state of the positive branch for input state ``psi``.

    ``edge_order`` optionally fixes the order in which the ``CZ`` gates are
    applied (a permutation of ``p.edges``).
    """
    _check_cap(p, cap)
    n, m = p.n, p.m
    k = m - n
    psi = np.array(psi, dtype=complex)
    if psi.shape != (1 << n,):
        raise ValueError(f"input state must have length {1 << n}, got shape {psi.shape}")
    edges = p.edges if edge_order is None else tuple(edge_order)
    if sorted(map(tuple, map(sorted, edges))) != sorted(p.edges):
        raise ValueError("edge_order must be a permutation of the pattern's edges")

    # P: |psi> (x) |+>^(m-n)
    plus = np.full(2, 1 / np.sqrt(2), dtype=complex)
    state = psi
    for _ in range(k):
        state = np.kron(state, plus)

    # Phi_1: Z(-theta) on every measured qubit
    tensor = state.reshape((2,) * m)
    for q, t in enumerate(p.theta):
        index = [slice(None)] * m
        index[q] = 1
        tensor[tuple(index)] *= np.exp(-1j * t)
    state = tensor.reshape(-1)

    # Phi_2: one CZ per edge
    for u, v in edges:
        state = state * cz_diagonal(m, u, v)

    # R: <+|^(m-n) (x) I on the leading m-n qubits, rows summed in ascending order
    block = state.reshape(1 << k, 1 << n)
    return np.add.reduce(block, axis=0) * (2.0 ** (-k / 2))


def dense_column(p: Pattern, i: int, cap=None, edge_order=None) -> np.ndarray:
    """Column ``i`` (1-based) of the physical positive-branch matrix."""
    if not 1 <= i <= 1 << p.n:
        raise ValueError(f"column index {i} out of range 1..{1 << p.n}")
    basis = np.zeros(1 << p.n, dtype=complex)
    basis[i - 1] = 1.0
    return dense_apply(p, basis, cap, edge_order)


def dense_positive_branch(p: Pattern, cap=None, edge_order=None) -> np.ndarray:
    """Physical matrix ``R Phi P`` of shape ``(2**n, 2**n)``, built column by column."""
    _check_cap(p, cap)
    return np.column_stack([dense_column(p, i, cap, edge_order) for i in range(1, (1 << p.n) + 1)])
