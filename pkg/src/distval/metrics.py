"""Evaluation criteria for comparing value vectors: norms, inversions, Pearson."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, UndefinedCorrelationError


@dataclass(frozen=True)
class ValueVector:
    """Per-vendor values with parallel vendor ids."""

    values: np.ndarray
    ids: tuple[str, ...]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        ids = tuple(self.ids)
        if v.ndim != 1 or v.shape[0] != len(ids):
            raise InputError("value vector: values and ids must be parallel 1-D sequences")
        if len(set(ids)) != len(ids):
            raise InputError("value vector: vendor ids must be unique")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "ids", ids)

    def __len__(self) -> int:
        return self.values.shape[0]


def _aligned(a: ValueVector, b: ValueVector) -> tuple[np.ndarray, np.ndarray]:
    if a.ids != b.ids:
        raise InputError("value vectors must carry identical ids in identical order")
    return a.values, b.values


def l2_err(a: ValueVector, b: ValueVector) -> float:
    x, y = _aligned(a, b)
    return float(np.linalg.norm(x - y))


def l_inf_err(a: ValueVector, b: ValueVector) -> float:
    x, y = _aligned(a, b)
    return float(np.max(np.abs(x - y)))


def inversions(nu: ValueVector, nu_star: ValueVector) -> int:
    """Count of vendor pairs whose ordering under nu contradicts nu_star.

    A pair counts only when both orderings are strict and opposite; a tie in
    either vector is not an inversion.
    """
    x, y = _aligned(nu, nu_star)
    n = len(x)
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx, dy = x[i] - x[j], y[i] - y[j]
            if dx * dy < 0:
                count += 1
    return count


def pearson(a: ValueVector, b: ValueVector) -> float:
    """Pearson correlation coefficient; undefined for constant vectors."""
    x, y = _aligned(a, b)
    if len(x) < 2:
        raise InputError("pearson: need at least 2 entries")
    xc, yc = x - x.mean(), y - y.mean()
    sx, sy = float(xc @ xc), float(yc @ yc)
    if sx == 0.0 or sy == 0.0:
        raise UndefinedCorrelationError("pearson: constant vector")
    r = float(xc @ yc) / math.sqrt(sx * sy)
    return max(-1.0, min(1.0, r))
