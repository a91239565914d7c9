"""Contamination mixtures: algebra, exact valuation identity, and samplers.

A vendor's sampling law is modelled as P = (1 - eps) * base + eps * outlier.
Mixtures of such models stay in the family, which is what makes an exact
error analysis of mixture references possible.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset, DiscretePmf, mix_pmfs
from .errors import InputError, UnsupportedModeError
from .kernel import KernelConfig
from .mmd import mmd_discrete

WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class MixtureWeights:
    """A probability vector over vendors."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.shape[0] < 1:
            raise InputError("weights must be a nonempty vector")
        if np.any(w < 0):
            raise InputError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise InputError(f"weights sum to {w.sum()!r}, not 1")
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, n: int) -> "MixtureWeights":
        return cls(np.full(n, 1.0 / n))

    def __len__(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class HuberSpec:
    """(eps, base, outlier) describing one vendor's sampling law.

    base/outlier are either both DiscretePmf (exact mode) or both Dataset
    (empirical sources drawn uniformly with replacement). outlier may be None
    only when eps == 0.
    """

    epsilon: float
    base: DiscretePmf | Dataset
    outlier: DiscretePmf | Dataset | None

    def __post_init__(self):
        if not (0.0 <= self.epsilon < 1.0):
            raise InputError(f"huber: epsilon must be in [0, 1), got {self.epsilon!r}")
        if self.outlier is None:
            if self.epsilon != 0.0:
                raise InputError("huber: outlier may be omitted only when epsilon == 0")
            return
        if type(self.base) is not type(self.outlier):
            raise InputError("huber: base and outlier must be the same kind of handle")
        if self.base.dim != self.outlier.dim:
            raise InputError("huber: base and outlier must share a dimension")

    @property
    def exact(self) -> bool:
        return isinstance(self.base, DiscretePmf)


def realized_pmf(spec: HuberSpec) -> DiscretePmf:
    """The mixture (1 - eps) * base + eps * outlier as an explicit pmf."""
    if not spec.exact:
        raise UnsupportedModeError("realized_pmf needs exact (finite-support) handles")
    if spec.epsilon == 0.0 or spec.outlier is None:
        return spec.base
    return mix_pmfs([spec.base, spec.outlier], np.array([1.0 - spec.epsilon, spec.epsilon]))


def _same_base(a, b) -> bool:
    if a is b:
        return True
    if isinstance(a, DiscretePmf) and isinstance(b, DiscretePmf):
        return (
            a.support.shape == b.support.shape
            and np.array_equal(a.support, b.support)
            and np.array_equal(a.probs, b.probs)
        )
    return False


def huber_mix(specs: list[HuberSpec], w: MixtureWeights) -> HuberSpec:
    """Mixture of contamination models over a shared base.

    With eps_mix = sum_i w_i eps_i, the mixture is again a contamination model
    with outlier sum_i (w_i eps_i / eps_mix) * outlier_i. When eps_mix == 0 the
    outlier is undefined (division by zero) and the mixture is exactly the
    base, returned with a null outlier.
    """
    if len(specs) != len(w):
        raise InputError("huber_mix: one weight per spec required")
    if not all(s.exact for s in specs):
        raise UnsupportedModeError("huber_mix needs exact (finite-support) handles")
    base = specs[0].base
    for s in specs[1:]:
        if not _same_base(s.base, base):
            raise InputError("huber_mix: all specs must share the same base distribution")
    eps = np.array([s.epsilon for s in specs])
    eps_mix = float(w.weights @ eps)
    if eps_mix == 0.0:
        return HuberSpec(epsilon=0.0, base=base, outlier=None)
    active = [(s, wi * s.epsilon / eps_mix) for s, wi in zip(specs, w.weights) if wi * s.epsilon > 0]
    outlier = mix_pmfs([s.outlier for s, _ in active], np.array([c for _, c in active]))
    return HuberSpec(epsilon=eps_mix, base=base, outlier=outlier)


def huber_value_exact(cfg: KernelConfig, spec: HuberSpec) -> float:
    """Exact value -eps * d(base, outlier) of a contamination model.

    Equals -d(realized mixture, base): mixing eps of the outlier in moves the
    distribution away from the base linearly in eps.
    """
    if not spec.exact:
        raise UnsupportedModeError("huber_value_exact needs exact handles")
    if spec.epsilon == 0.0 or spec.outlier is None:
        return 0.0
    return -spec.epsilon * mmd_discrete(cfg, spec.base, spec.outlier)


def _draw(source, rng: np.random.Generator, count: int) -> np.ndarray:
    if isinstance(source, DiscretePmf):
        idx = rng.choice(len(source), size=count, p=source.probs)
        return source.support[idx]
    idx = rng.integers(0, len(source), size=count)
    return source.points[idx]


def sample_huber(spec: HuberSpec, m: int, seed: int, dataset_id: str = "sample") -> Dataset:
    """Draw m i.i.d. points: each from the outlier w.p. eps, else from the base.

    Empirical sources are resampled uniformly with replacement. Deterministic
    given the seed.
    """
    if m < 1:
        raise InputError("sample_huber: m must be >= 1")
    rng = np.random.default_rng(seed)
    from_outlier = rng.random(m) < spec.epsilon
    pts = _draw(spec.base, rng, m)
    if spec.outlier is not None and from_outlier.any():
        pts[from_outlier] = _draw(spec.outlier, rng, m)[from_outlier]
    return Dataset(id=dataset_id, points=pts)


def random_pmf(rng: np.random.Generator, support: np.ndarray) -> DiscretePmf:
    # Normalized uniform draws; documented generation law for synthetic studies.
    w = rng.uniform(size=support.shape[0])
    return DiscretePmf(support=support, probs=w / w.sum())


def random_huber_population(
    n: int, support_max: int, eps_max: float, seed: int
) -> tuple[DiscretePmf, list[HuberSpec]]:
    """Random 1-D population on the integer lattice {0..support_max}.

    The base and every outlier are independent random pmfs (normalized uniform
    draws); eps_i ~ Uniform(0, eps_max). Deterministic given the seed.
    """
    if n < 1:
        raise InputError("random_huber_population: n must be >= 1")
    if not (0.0 < eps_max < 1.0):
        raise InputError("random_huber_population: eps_max must be in (0, 1)")
    rng = np.random.default_rng(seed)
    support = np.arange(support_max + 1, dtype=float)[:, None]
    base = random_pmf(rng, support)
    eps = rng.uniform(0.0, eps_max, size=n)
    specs = [
        HuberSpec(epsilon=float(eps[i]), base=base, outlier=random_pmf(rng, support))
        for i in range(n)
    ]
    return base, specs
