"""Sign-parity vectors of graphs and bipartite graphs.

Two families of +-1 vectors describe how edge counts of induced subgraphs
flip signs:

* ``p_vector(p, S)`` has entry ``k`` equal to ``(-1)**#E(S_k)``, where
  ``S_k = select(S, k)`` and ``#E`` counts edges of the induced subgraph.
* ``b_vector(p, V, W)`` has entry ``k`` equal to ``(-1)**#E(V <-> W_k)``,
  counting only the edges between ``V`` and the selected part of ``W``.

All vectors use the most-significant-digit-first index convention of
:func:`owpb.pattern.sel` and hold exact integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kron import KroneckerVector
from .pattern import Pattern, _check_subset, edge_count_between, edge_count_within, select, subset_bits

__all__ = [
    "sign_parity",
    "KroneckerSignVector",
    "b_hat",
    "p_vector",
    "p_vector_from_edge_list",
    "b_vector",
    "column_parity",
    "pair_endpoints",
    "induced_edge_list",
]

P_METHODS = ("enumerate", "quadratic_form", "edge_list")
B_METHODS = ("enumerate", "column_parity")


def sign_parity(k) -> int:
    """``(-1)**k`` for any integer ``k``."""
    return -1 if int(k) % 2 else 1


@dataclass(frozen=True)
class KroneckerSignVector:
    """Factored sign vector ``(x)_i [1, (-1)**b_i]``."""

    bits: tuple

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"bits must be 0 or 1, got {bits}")
        object.__setattr__(self, "bits", bits)

    def __len__(self):
        return 1 << len(self.bits)

    @property
    def factors(self):
        return tuple(np.array([1, -1 if b else 1], dtype=np.int64) for b in self.bits)

    def expand(self) -> np.ndarray:
        # entry k-1 is (-1) ** (number of selected positions whose bit is set)
        width = len(self.bits)
        mask = subset_bits(width) @ np.array(self.bits, dtype=np.int64) if width else np.zeros(1, np.int64)
        return 1 - 2 * (mask % 2)

    def as_kronecker(self) -> KroneckerVector:
        return KroneckerVector(self.factors)


def b_hat(bits) -> KroneckerSignVector:
    return KroneckerSignVector(tuple(bits))


# --------------------------------------------------------------------------
# P function


def _induced_adjacency(p: Pattern, subset) -> np.ndarray:
    idx = np.asarray(subset, dtype=np.int64) - 1
    return p.adjacency[np.ix_(idx, idx)]


def pair_endpoints(k: int) -> tuple[int, int]:
    """Endpoints ``(smaller, larger)`` of the ``k``-th pair in colexicographic order.

    The larger endpoint is ``f(k) + 1`` with ``f(k) = floor((sqrt(8k-7)+1)/2)``.
    """
    f = (math.isqrt(8 * k - 7) + 1) // 2
    return k - f * (f - 1) // 2, f + 1


def induced_edge_list(p: Pattern, subset) -> np.ndarray:
    """Edge binary list of the induced subgraph, its vertices relabeled ``1..|S|``."""
    sub = _induced_adjacency(p, subset)
    s = len(subset)
    return np.array([sub[i, j] for j in range(1, s) for i in range(j)], dtype=np.int64)


def _bit_reverse(codes: np.ndarray, width: int) -> np.ndarray:
    out = np.zeros_like(codes)
    for pos in range(width):
        out |= ((codes >> pos) & 1) << (width - 1 - pos)
    return out


def p_vector_from_edge_list(bits, num_vertices: int) -> np.ndarray:
    """P vector of a graph given by its colex edge binary list.

    Pair ``k`` joins ``(v_p, v_q)``; its term is ``(-1)**(b_k * X1 * X2)`` with
    ``X1`` digit ``q`` and ``X2`` digit ``p`` of the code counted from the
    least significant end (digit 1 = LSB).  The code fed in is the
    bit-reversed ``k - 1``, which maps digit ``v`` from the LSB onto the
    ``v``-th most significant digit used by :func:`owpb.pattern.sel`.
    """
    bits = np.asarray(bits, dtype=np.int64)
    if bits.shape != (num_vertices * (num_vertices - 1) // 2,):
        raise ValueError(f"edge list of {num_vertices} vertices needs {num_vertices * (num_vertices - 1) // 2} bits")
    codes = _bit_reverse(np.arange(1 << num_vertices, dtype=np.int64), num_vertices)
    parity = np.zeros_like(codes)
    for k in np.flatnonzero(bits) + 1:
        f = (math.isqrt(8 * int(k) - 7) + 1) // 2
        x1 = (codes >> f) & 1
        x2 = (codes >> (int(k) - f * (f - 1) // 2 - 1)) & 1
        parity ^= x1 & x2
    return 1 - 2 * parity


def p_vector(p: Pattern, subset, method: str = "quadratic_form") -> np.ndarray:
    """Sign parities of edge counts of every induced subgraph of ``Gamma_S``."""
    s = _check_subset(p, subset)
    if method == "enumerate":
        return np.array(
            [sign_parity(edge_count_within(p, select(s, k))) for k in range(1, (1 << len(s)) + 1)],
            dtype=np.int64,
        )
    if method == "quadratic_form":
        # edges oriented small -> large: the positive part is strictly upper triangular
        upper = np.triu(_induced_adjacency(p, s), k=1)
        x = subset_bits(len(s))
        counts = np.einsum("ki,ij,kj->k", x, upper, x)
        return 1 - 2 * (counts % 2)
    if method == "edge_list":
        return p_vector_from_edge_list(induced_edge_list(p, s), len(s))
    raise ValueError(f"unknown method {method!r}; expected one of {P_METHODS}")


# --------------------------------------------------------------------------
# B function


def _check_disjoint(p: Pattern, first, second):
    v = _check_subset(p, first, "first")
    w = _check_subset(p, second, "second")
    common = set(v) & set(w)
    if common:
        raise ValueError(f"vertex sets are not disjoint: common {sorted(common)}")
    return v, w


def column_parity(p: Pattern, first, second) -> np.ndarray:
    """Mod-2 column sums of the ``first x second`` biadjacency block."""
    v, w = _check_disjoint(p, first, second)
    block = p.adjacency[np.ix_(np.asarray(v, np.int64) - 1, np.asarray(w, np.int64) - 1)]
    return block.sum(axis=0).astype(np.int64) % 2


def b_vector(p: Pattern, first, second, method: str = "column_parity") -> np.ndarray:
    """Cross-edge sign parities between ``first`` and every subset of ``second``."""
    v, w = _check_disjoint(p, first, second)
    if method == "enumerate":
        return np.array(
            [sign_parity(edge_count_between(p, v, select(w, k))) for k in range(1, (1 << len(w)) + 1)],
            dtype=np.int64,
        )
    if method == "column_parity":
        return b_hat(column_parity(p, v, w)).expand()
    raise ValueError(f"unknown method {method!r}; expected one of {B_METHODS}")
