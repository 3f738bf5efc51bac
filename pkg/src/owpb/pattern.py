"""Open graph patterns: data model, labeling, subset selection and file I/O.

A pattern on ``m = 2n + a`` qubits is stored with canonical labels
``1..m``: inputs are ``1..n``, pure auxiliaries ``n+1..n+a`` and outputs
``m-n+1..m``.  Every measured qubit (inputs and pure auxiliaries) carries a
measurement angle ``theta`` in radians, i.e. it is projected onto
``|+_theta> = (|0> + e^{i theta}|1>)/sqrt(2)``.

Subsets of vertices are plain ascending tuples of labels.  Bit strings index
subsets most-significant-digit first: in a universe of ``u`` elements, the
index ``k`` (1-based) selects element ``l`` iff digit ``l`` from the left of
the ``u``-digit binary expansion of ``k - 1`` is one.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .exceptions import PatternError

__all__ = [
    "Pattern",
    "parse_pattern",
    "pattern_from_dict",
    "pattern_to_dict",
    "serialize_pattern",
    "load_pattern",
    "sel",
    "select",
    "subset_bits",
    "edge_count_within",
    "edge_count_between",
    "edge_binary_list",
    "colex_pairs",
]


def _colex_key(edge):
    return (edge[1], edge[0])


@dataclass(frozen=True)
class Pattern:
    """Open graph state with measurement angles, canonically labeled.

    Parameters
    ----------
    n : int
        Number of inputs (equal to the number of outputs).
    a : int
        Number of pure auxiliary qubits.
    edges : iterable of pairs
        Undirected edges over labels ``1..m``.  Stored as ``(small, large)``
        pairs sorted colexicographically.
    theta : sequence of float
        One angle per measured qubit, for labels ``1..n+a`` in order.
    """

    n: int
    a: int
    edges: tuple = ()
    theta: tuple = field(default=())

    def __post_init__(self):
        for name in ("n", "a"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 0:
                raise PatternError(f"must be a non-negative integer, got {value!r}", name)
            object.__setattr__(self, name, int(value))
        m = 2 * self.n + self.a

        seen = set()
        for edge in self.edges:
            if len(edge) != 2:
                raise PatternError(f"edge {edge!r} is not a pair", "edges")
            u, v = (int(x) for x in edge)
            if u == v:
                raise PatternError(f"self-loop on vertex {u}", "edges")
            if not (1 <= u <= m and 1 <= v <= m):
                raise PatternError(f"edge {edge!r} has a label outside 1..{m}", "edges")
            pair = (min(u, v), max(u, v))
            if pair in seen:
                raise PatternError(f"duplicate edge {pair}", "edges")
            seen.add(pair)
        object.__setattr__(self, "edges", tuple(sorted(seen, key=_colex_key)))

        theta = tuple(float(t) for t in self.theta)
        if len(theta) != self.n + self.a:
            raise PatternError(
                f"expected {self.n + self.a} angles (one per measured qubit), got {len(theta)}", "angles"
            )
        if not all(math.isfinite(t) for t in theta):
            raise PatternError("angles must be finite", "angles")
        object.__setattr__(self, "theta", theta)

    @property
    def m(self) -> int:
        return 2 * self.n + self.a

    @property
    def inputs(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def aux(self) -> tuple[int, ...]:
        return tuple(range(self.n + 1, self.n + self.a + 1))

    @property
    def outputs(self) -> tuple[int, ...]:
        return tuple(range(self.m - self.n + 1, self.m + 1))

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(1, self.m + 1))

    @property
    def input_angles(self) -> tuple[float, ...]:
        return self.theta[: self.n]

    @property
    def aux_angles(self) -> tuple[float, ...]:
        return self.theta[self.n :]

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Symmetric 0/1 adjacency matrix, row/column ``l-1`` for label ``l``."""
        adj = np.zeros((self.m, self.m), dtype=np.int64)
        for u, v in self.edges:
            adj[u - 1, v - 1] = adj[v - 1, u - 1] = 1
        adj.setflags(write=False)
        return adj

    @property
    def aux_connected(self) -> bool:
        """True when at least one edge joins two pure auxiliaries."""
        lo, hi = self.n + 1, self.n + self.a
        return any(lo <= u and v <= hi for u, v in self.edges)

    def with_angles(self, theta: Sequence[float]) -> "Pattern":
        return replace(self, theta=tuple(theta))

    def with_input_angles(self, input_theta: Sequence[float]) -> "Pattern":
        return replace(self, theta=tuple(input_theta) + self.aux_angles)

    def with_aux_angles(self, aux_theta: Sequence[float]) -> "Pattern":
        return replace(self, theta=self.input_angles + tuple(aux_theta))


def _check_subset(p: Pattern, subset: Iterable[int], what: str = "subset") -> tuple[int, ...]:
    s = tuple(sorted(int(v) for v in subset))
    if len(set(s)) != len(s):
        raise ValueError(f"{what} has repeated vertices: {s}")
    if s and (s[0] < 1 or s[-1] > p.m):
        raise ValueError(f"{what} {s} is not a subset of the vertices 1..{p.m}")
    return s


# --------------------------------------------------------------------------
# selection function


def sel(universe_size: int, k: int) -> tuple[int, ...]:
    """Positions (1-based) selected by the integer ``k`` in ``1..2**universe_size``.

    >>> sel(4, 3)
    (3,)
    """
    if universe_size < 0:
        raise ValueError("universe_size must be non-negative")
    if not 1 <= k <= 1 << universe_size:
        raise ValueError(f"k={k} out of range 1..{1 << universe_size}")
    code = k - 1
    return tuple(l for l in range(1, universe_size + 1) if (code >> (universe_size - l)) & 1)


def select(vertices: Sequence[int], k: int) -> tuple[int, ...]:
    """Subset of an ordered vertex tuple selected by ``k`` (order-preserving bijection)."""
    return tuple(vertices[pos - 1] for pos in sel(len(vertices), k))


def subset_bits(universe_size: int) -> np.ndarray:
    """All selections of a universe as a ``(2**u, u)`` 0/1 array.

    Row ``k-1`` is the indicator of ``sel(u, k)``.
    """
    codes = np.arange(1 << universe_size, dtype=np.int64)
    shifts = np.arange(universe_size - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts[None, :]) & 1).astype(np.int64)


# --------------------------------------------------------------------------
# edge counting


def edge_count_within(p: Pattern, subset: Iterable[int]) -> int:
    """Number of edges of the subgraph induced by ``subset``."""
    s = set(_check_subset(p, subset))
    return sum(1 for u, v in p.edges if u in s and v in s)


def edge_count_between(p: Pattern, first: Iterable[int], second: Iterable[int]) -> int:
    """Number of edges with one endpoint in ``first`` and the other in ``second``."""
    a = set(_check_subset(p, first, "first"))
    b = set(_check_subset(p, second, "second"))
    if a & b:
        raise ValueError(f"vertex sets are not disjoint: common {sorted(a & b)}")
    return sum(1 for u, v in p.edges if (u in a and v in b) or (u in b and v in a))


def colex_pairs(num_vertices: int) -> list[tuple[int, int]]:
    """Vertex pairs ``(i, j)``, ``i < j``, ordered by ``j`` then ``i``."""
    return [(i, j) for j in range(2, num_vertices + 1) for i in range(1, j)]


def edge_binary_list(p: Pattern) -> np.ndarray:
    """Incidence bits of the graph over the colexicographic pair order."""
    edges = set(p.edges)
    return np.array([1 if pair in edges else 0 for pair in colex_pairs(p.m)], dtype=np.int64)


# --------------------------------------------------------------------------
# file format


def _label_list(doc, key):
    value = doc.get(key)
    if not isinstance(value, list):
        raise PatternError("must be a list of integer labels", key)
    out = []
    for x in value:
        if isinstance(x, bool) or not isinstance(x, int) or x < 1:
            raise PatternError(f"label {x!r} is not a positive integer", key)
        out.append(x)
    if len(set(out)) != len(out):
        raise PatternError("repeated label", key)
    return out


def pattern_from_dict(doc: dict) -> Pattern:
    """Validate a decoded pattern document and relabel it canonically."""
    if not isinstance(doc, dict):
        raise PatternError("document must be a JSON object")
    missing = [key for key in ("m", "inputs", "outputs", "edges", "angles") if key not in doc]
    if missing:
        raise PatternError("missing required field", missing[0])

    m = doc["m"]
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise PatternError(f"must be a non-negative integer, got {m!r}", "m")
    inputs = _label_list(doc, "inputs")
    outputs = _label_list(doc, "outputs")
    if set(inputs) & set(outputs):
        raise PatternError(f"overlapping input/output labels {sorted(set(inputs) & set(outputs))}", "outputs")
    if len(inputs) != len(outputs):
        raise PatternError(f"{len(inputs)} inputs but {len(outputs)} outputs", "outputs")

    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise PatternError("must be a list of label pairs", "edges")
    edges = []
    seen = set()
    for e in raw_edges:
        if (
            not isinstance(e, list)
            or len(e) != 2
            or any(isinstance(x, bool) or not isinstance(x, int) or x < 1 for x in e)
        ):
            raise PatternError(f"edge {e!r} is not a pair of positive integer labels", "edges")
        u, v = e
        if u == v:
            raise PatternError(f"self-loop on vertex {u}", "edges")
        key = frozenset(e)
        if key in seen:
            raise PatternError(f"duplicate edge {e!r}", "edges")
        seen.add(key)
        edges.append((u, v))

    angles_doc = doc["angles"]
    if not isinstance(angles_doc, dict):
        raise PatternError("must be an object mapping labels to angles", "angles")
    angles = {}
    for key, value in angles_doc.items():
        try:
            label = int(key)
        except (TypeError, ValueError):
            raise PatternError(f"key {key!r} is not an integer label", "angles") from None
        if label < 1 or str(label) != str(key).strip():
            raise PatternError(f"key {key!r} is not a positive integer label", "angles")
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise PatternError(f"angle for label {label} must be a finite number", "angles")
        if label in angles:
            raise PatternError(f"label {label} given twice", "angles")
        angles[label] = float(value)

    labels = set(inputs) | set(outputs) | set(angles)
    for u, v in edges:
        labels.update((u, v))
    if labels <= set(range(1, m + 1)):
        labels = set(range(1, m + 1))
    if len(labels) != m:
        raise PatternError(f"pattern mentions {len(labels)} distinct labels but m={m}", "m")

    io = set(inputs) | set(outputs)
    aux = sorted(labels - io)
    n = len(inputs)
    if m - 2 * n != len(aux):
        raise PatternError("inconsistent partition sizes", "m")
    order = sorted(inputs) + aux + sorted(outputs)
    relabel = {old: new for new, old in enumerate(order, start=1)}

    measured = sorted(inputs) + aux
    if set(angles) != set(measured):
        missing = sorted(set(measured) - set(angles))
        extra = sorted(set(angles) - set(measured))
        detail = []
        if missing:
            detail.append(f"missing angles for {missing}")
        if extra:
            detail.append(f"angles given for unmeasured labels {extra}")
        raise PatternError(
            f"angle count mismatch: expected {len(measured)}, got {len(angles)} ({'; '.join(detail)})",
            "angles",
        )
    theta = [angles[old] for old in measured]
    return Pattern(
        n=n,
        a=len(aux),
        edges=[(relabel[u], relabel[v]) for u, v in edges],
        theta=theta,
    )


def parse_pattern(text) -> Pattern:
    """Parse a JSON pattern document (``str`` or ``bytes``)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PatternError(f"malformed JSON ({exc.msg} at line {exc.lineno})") from None
    return pattern_from_dict(doc)


def load_pattern(path) -> Pattern:
    with open(path, encoding="utf-8") as fh:
        return parse_pattern(fh.read())


def pattern_to_dict(p: Pattern) -> dict:
    return {
        "m": p.m,
        "inputs": list(p.inputs),
        "outputs": list(p.outputs),
        "edges": [list(e) for e in p.edges],
        "angles": {str(label): t for label, t in zip(p.inputs + p.aux, p.theta)},
    }


def serialize_pattern(p: Pattern) -> str:
    """Deterministic JSON text; keys in fixed order, edges colex-sorted."""
    return json.dumps(pattern_to_dict(p), indent=2) + "\n"
