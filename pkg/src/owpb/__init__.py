"""Positive-branch matrices of one-way measurement patterns.

The positive branch of a pattern (every measured qubit projected onto
``|+_theta>``) is a linear map on the input register.  This package computes
it by brute-force simulation and through its sign structure, cross-checks the
two, evaluates single entries quickly when pure auxiliaries are unconnected,
and analyses determinism and pattern equality.
"""

from .analysis import (
    DeterminismVerdict,
    EqualityVerdict,
    UniformVerdict,
    check_determinism,
    check_uniform_determinism,
    gram,
    patterns_equal,
)
from .dense import dense_apply, dense_column, dense_positive_branch, phi2_diagonal
from .estimator import DeterminismClassifier, PositiveBranch
from .exceptions import CapExceededError, PatternError, PreconditionError
from .kron import KroneckerVector, kron_dot
from .pattern import (
    Pattern,
    edge_binary_list,
    edge_count_between,
    edge_count_within,
    load_pattern,
    parse_pattern,
    sel,
    select,
    serialize_pattern,
)
from .signs import KroneckerSignVector, b_hat, b_vector, column_parity, p_vector, sign_parity
from .structure import (
    FactorBundle,
    FastEvaluator,
    decompose_column_factors,
    epsilon_phase,
    fast_entry,
    phase_vector,
    sign_pattern_matrix,
    sign_pattern_matrix_from_diagonal,
    structured_matrix,
)

__version__ = "0.1.0"
