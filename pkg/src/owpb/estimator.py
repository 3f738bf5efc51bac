"""scikit-learn style wrappers.

``PositiveBranch`` fits to a pattern and transforms batches of input states
through the positive-branch map; ``DeterminismClassifier`` labels patterns
as deterministic or not.  Both follow the estimator conventions (parameters
set in ``__init__`` only, learned state suffixed with ``_``), so
``get_params``/``set_params``/``clone`` work as usual.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .analysis import DEFAULT_SEED, DEFAULT_TOL, check_determinism, check_uniform_determinism
from .dense import dense_positive_branch
from .structure import METHODS, SCALINGS, structured_matrix
from .validation import check_choice, check_pattern, check_states


class PositiveBranch(TransformerMixin, BaseEstimator):
    """Linear map implemented by the all-``+`` measurement branch of a pattern.

    Parameters
    ----------
    method : {"decomposition", "theorem1", "dense"}
        How the matrix is computed.
    scaling : {"physical", "raw"}
        Physical amplitudes, or the unnormalized sign/phase structure.
    cap : int or None
        Size cap (qubits for ``dense``, log2 of sign entries otherwise).

    Attributes
    ----------
    pattern_ : Pattern
    matrix_ : ndarray of shape (2**n, 2**n)
    n_inputs_ : int
    """

    def __init__(self, method="decomposition", scaling="physical", cap=None):
        self.method = method
        self.scaling = scaling
        self.cap = cap

    def fit(self, X, y=None):
        check_choice(self.method, "method", METHODS + ("dense",))
        check_choice(self.scaling, "scaling", SCALINGS)
        pattern = check_pattern(X)
        if self.method == "dense":
            mat = dense_positive_branch(pattern, self.cap)
            if self.scaling == "raw":
                mat = mat * 2.0 ** (pattern.m - pattern.n)
        else:
            mat = structured_matrix(pattern, self.method, self.scaling, self.cap)
        self.pattern_ = pattern
        self.matrix_ = mat
        self.n_inputs_ = pattern.n
        return self

    def transform(self, X):
        """Map each row of ``X`` (an input state) to the unnormalized output state."""
        check_is_fitted(self, "matrix_")
        X = check_states(X, self.n_inputs_)
        return X @ self.matrix_.T

    def gram(self):
        check_is_fitted(self, "matrix_")
        return self.matrix_.conj().T @ self.matrix_


class DeterminismClassifier(ClassifierMixin, BaseEstimator):
    """Predicts whether each pattern in a list is (uniformly) deterministic.

    Stateless: ``fit`` only validates parameters.
    """

    def __init__(self, uniform=False, samples=100, seed=DEFAULT_SEED, tol=DEFAULT_TOL):
        self.uniform = uniform
        self.samples = samples
        self.seed = seed
        self.tol = tol

    def fit(self, X=None, y=None):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        self.classes_ = np.array([False, True])
        return self

    def _verdict(self, pattern):
        if self.uniform:
            return check_uniform_determinism(pattern, self.samples, self.seed, self.tol).uniform
        return check_determinism(pattern, self.tol).deterministic

    def predict(self, X):
        check_is_fitted(self, "classes_")
        return np.array([self._verdict(check_pattern(x)) for x in X], dtype=bool)
