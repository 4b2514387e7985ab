"""
Dense real tensors as plain numpy arrays.

Every dual space is identified with its space through the fixed basis, so a
contraction is a sum over a diagonal and needs no metric.

>>> tensor_product(np.array([1.0, 0.0]), np.array([0.0, 1.0]))
array([[0., 1.],
       [0., 0.]])
"""

from __future__ import annotations

import warnings

import numpy as np

__all__ = ["ZeroNormWarning", "as_tensor", "tensor_product", "contract", "inner",
           "norm", "cosine", "kronecker_power", "to_json", "from_json"]


class ZeroNormWarning(RuntimeWarning):
    """A cosine was asked of a zero tensor; the result is reported as 0."""


def as_tensor(x) -> np.ndarray:
    t = np.asarray(x, dtype=np.float64)
    if any(d < 1 for d in t.shape):
        raise ValueError(f"tensor dimensions must be positive, got {t.shape}")
    return t


def tensor_product(a, b) -> np.ndarray:
    """Outer product; the result's shape is ``a.shape + b.shape``."""
    a, b = as_tensor(a), as_tensor(b)
    return np.multiply.outer(a, b)


def contract(t, i: int, j: int) -> np.ndarray:
    """Sum the diagonal of axes ``i`` and ``j``; both axes disappear."""
    t = as_tensor(t)
    i, j = (k % t.ndim if t.ndim else k for k in (i, j))
    if i == j:
        raise ValueError("cannot contract an axis with itself")
    if t.shape[i] != t.shape[j]:
        raise ValueError(f"dimension mismatch: axis {i} has {t.shape[i]}, axis {j} has {t.shape[j]}")
    return np.trace(t, axis1=i, axis2=j)


def inner(a, b) -> float:
    a, b = as_tensor(a), as_tensor(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.vdot(a, b))


def norm(a) -> float:
    return float(np.linalg.norm(as_tensor(a).ravel()))


def cosine(a, b) -> float:
    """
    Cosine of the angle between ``a`` and ``b``.

    A zero input has no angle; the result is then 0 and a ZeroNormWarning is
    issued so that a batch of comparisons can carry on.
    """
    dot = inner(a, b)
    na, nb = norm(a), norm(b)
    if na == 0.0 or nb == 0.0:
        warnings.warn("cosine of a zero tensor taken as 0", ZeroNormWarning, stacklevel=2)
        return 0.0
    return float(np.clip(dot / (na * nb), -1.0, 1.0))


def kronecker_power(v, k: int) -> np.ndarray:
    """``v ⊗ ... ⊗ v`` with ``k`` factors, as a rank-``k`` tensor."""
    v = as_tensor(v)
    if v.ndim != 1:
        raise ValueError("kronecker_power takes a vector")
    if k < 1:
        raise ValueError("k must be at least 1")
    out = v
    for _ in range(k - 1):
        out = np.multiply.outer(out, v)
    return out


def to_json(t) -> dict:
    t = as_tensor(t)
    return {"shape": list(t.shape), "data": t.ravel().tolist()}


def from_json(obj: dict) -> np.ndarray:
    shape = tuple(obj["shape"])
    data = np.asarray(obj["data"], dtype=np.float64)
    if data.size != int(np.prod(shape, dtype=np.int64)):
        raise ValueError(f"{data.size} values do not fill shape {list(shape)}")
    return as_tensor(data.reshape(shape))
