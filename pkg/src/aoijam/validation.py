"""Input validation helpers shared across the package.

All helpers raise ValueError with the offending parameter named, so that
callers (library users and the CLI) get actionable messages.
"""

import numbers

import numpy as np

NODES = (1, 2, 3)


def require_probability(name, value):
    """Validate a probability in [0, 1] and return it as float."""
    if not isinstance(value, numbers.Real) or not np.isfinite(value):
        raise ValueError(f"{name} must be a finite number, got {value!r}")
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {value}")
    return value


def require_nonnegative(name, value):
    if not isinstance(value, numbers.Real) or not np.isfinite(value):
        raise ValueError(f"{name} must be a finite number, got {value!r}")
    value = float(value)
    if value < 0.0:
        raise ValueError(f"{name} must be >= 0, got {value}")
    return value


def require_positive(name, value):
    value = require_nonnegative(name, value)
    if value == 0.0:
        raise ValueError(f"{name} must be > 0")
    return value


def require_positive_int(name, value):
    if not isinstance(value, numbers.Integral) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def require_node(name, node):
    """Validate a node index in {1, 2, 3}."""
    if node not in NODES:
        raise ValueError(f"{name} must be one of {NODES}, got {node!r}")
    return int(node)


def require_members(name, members):
    """Validate an active-set membership, returning it as a frozenset."""
    members = frozenset(members)
    if not members <= set(NODES):
        raise ValueError(f"{name} must be a subset of {NODES}, got {sorted(members)}")
    return members


def check_iq_matrix(X, n_samples=None):
    """Validate a batch of IQ packets as a complex (n_packets, n_samples) array."""
    X = np.asarray(X)
    if X.ndim != 2:
        raise ValueError(f"X must be 2-D (n_packets, n_samples), got shape {X.shape}")
    if not np.iscomplexobj(X):
        # real input means Q=0 everywhere; accept and promote
        X = X.astype(np.complex128)
    else:
        X = X.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(X.view(np.float64))):
        raise ValueError("X contains non-finite samples")
    if n_samples is not None and X.shape[1] != n_samples:
        raise ValueError(
            f"X has {X.shape[1]} samples per packet, expected {n_samples}"
        )
    return X


def check_binary_labels(y, n_packets=None):
    """Validate 0/1 labels (1 = signal present) as an int array."""
    y = np.asarray(y)
    if y.ndim != 1:
        raise ValueError(f"y must be 1-D, got shape {y.shape}")
    if not np.all(np.isin(y, (0, 1))):
        raise ValueError("y must contain only 0 (no signal) and 1 (signal)")
    if n_packets is not None and y.shape[0] != n_packets:
        raise ValueError(f"y has {y.shape[0]} labels for {n_packets} packets")
    return y.astype(np.int64)
