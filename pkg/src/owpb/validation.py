"""Input validation helpers shared by the estimators and the CLI."""

from __future__ import annotations

import os

import numpy as np

from .pattern import Pattern, load_pattern, parse_pattern, pattern_from_dict


def check_pattern(obj) -> Pattern:
    """Coerce a pattern, a decoded document, JSON text or a file path into a :class:`Pattern`."""
    if isinstance(obj, Pattern):
        return obj
    if isinstance(obj, dict):
        return pattern_from_dict(obj)
    if isinstance(obj, os.PathLike):
        return load_pattern(obj)
    if isinstance(obj, (str, bytes)):
        text = obj.decode("utf-8") if isinstance(obj, bytes) else obj
        if text.lstrip().startswith("{"):
            return parse_pattern(text)
        return load_pattern(text)
    raise TypeError(f"cannot interpret {type(obj).__name__} as a pattern")


def check_states(X, n: int) -> np.ndarray:
    """Validate a batch of input state vectors, shape ``(n_samples, 2**n)``.

    A single vector is promoted to a batch of one.  Complex values are kept
    (``sklearn.utils.check_array`` rejects them).
    """
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ValueError(f"expected a 2D array of state vectors, got shape {X.shape}")
    if X.shape[1] != 1 << n:
        raise ValueError(f"state vectors must have length 2**{n} = {1 << n}, got {X.shape[1]}")
    if not np.issubdtype(X.dtype, np.number) or X.dtype == np.bool_:
        raise ValueError(f"state vectors must be numeric, got dtype {X.dtype}")
    X = X.astype(complex)
    if not np.all(np.isfinite(X)):
        raise ValueError("state vectors contain NaN or infinity")
    return X


def check_choice(value, name: str, choices) -> str:
    if value not in choices:
        raise ValueError(f"{name}={value!r} is not one of {tuple(choices)}")
    return value
