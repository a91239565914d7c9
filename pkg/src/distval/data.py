"""Core data containers: vendor sample datasets and finite-support distributions."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError

PMF_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of fixed-dimension feature vectors from one vendor.

    `points` is an (m, d) float array; row order is meaningful and preserved
    by every operation in this package.
    """

    id: str
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise InputError(f"dataset {self.id!r}: points must be a nonempty (m, d) array")
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class DiscretePmf:
    """Exact finite-support probability distribution over feature vectors.

    support: (k, d) array of pairwise-distinct points; probs: (k,) nonnegative,
    summing to 1 within 1e-12.
    """

    support: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        supp = np.asarray(self.support, dtype=float)
        if supp.ndim == 1:
            supp = supp[:, None]
        probs = np.asarray(self.probs, dtype=float)
        if supp.ndim != 2 or probs.ndim != 1 or supp.shape[0] != probs.shape[0]:
            raise InputError("pmf: support must be (k, d) with matching (k,) probs")
        if supp.shape[0] < 1:
            raise InputError("pmf: empty support")
        if np.any(probs < 0):
            raise InputError("pmf: negative probability")
        if abs(probs.sum() - 1.0) > PMF_SUM_TOL:
            raise InputError(f"pmf: probabilities sum to {probs.sum()!r}, not 1")
        if len({row.tobytes() for row in supp}) != supp.shape[0]:
            raise InputError("pmf: support points must be pairwise distinct")
        object.__setattr__(self, "support", supp)
        object.__setattr__(self, "probs", probs)

    @property
    def dim(self) -> int:
        return self.support.shape[1]

    def __len__(self) -> int:
        return self.support.shape[0]


def check_same_dim(a, b, what: str = "inputs"):
    if a.dim != b.dim:
        raise InputError(f"{what}: dimension mismatch ({a.dim} vs {b.dim})")


def mix_pmfs(pmfs: list[DiscretePmf], weights: np.ndarray) -> DiscretePmf:
    """Weighted mixture of pmfs, aligning support points exactly (union of supports)."""
    if len(pmfs) != len(weights):
        raise InputError("mix_pmfs: one weight per pmf required")
    dim = pmfs[0].dim
    for p in pmfs[1:]:
        if p.dim != dim:
            raise InputError("mix_pmfs: pmfs must share a dimension")
    acc: dict[bytes, float] = {}
    rows: dict[bytes, np.ndarray] = {}
    for pmf, w in zip(pmfs, weights):
        for row, pr in zip(pmf.support, pmf.probs):
            key = row.tobytes()
            acc[key] = acc.get(key, 0.0) + w * pr
            rows.setdefault(key, row)
    keys = sorted(acc, key=lambda k: tuple(rows[k]))
    support = np.array([rows[k] for k in keys])
    probs = np.array([acc[k] for k in keys])
    total = probs.sum()
    if abs(total - 1.0) > 1e-9:
        raise InputError(f"mix_pmfs: weights produce total mass {total!r}")
    return DiscretePmf(support=support, probs=probs / total)
