import math

import numpy as np
import pytest

from distval import (
    Dataset,
    DiscretePmf,
    InputError,
    KernelConfig,
    mmd2_unbiased,
    mmd_biased,
    mmd_discrete,
    random_huber_population,
    realized_pmf,
    sample_huber,
)

CFG = KernelConfig(sigma=1.0)

# sqrt(2 - 2 exp(-0.5)): the point-mass-at-0 vs point-mass-at-1 distance,
# reused all over this suite.
D01 = math.sqrt(2.0 - 2.0 * math.exp(-0.5))


def ds(*points):
    return Dataset("d", np.asarray(points, dtype=float))


def pmf(support, probs):
    return DiscretePmf(np.asarray(support, dtype=float), np.asarray(probs, dtype=float))


def test_biased_identical_datasets():
    a = ds([0.0], [2.0], [5.0])
    assert mmd_biased(CFG, a, a) == 0.0


def test_biased_two_singletons():
    assert mmd_biased(CFG, ds([0.0]), ds([1.0])) == pytest.approx(D01, rel=1e-13)


def test_biased_equal_empirical_measures():
    # {0,0} and {0} are the same empirical distribution
    assert mmd_biased(CFG, ds([0.0], [0.0]), ds([0.0])) == pytest.approx(0.0, abs=1e-12)


def test_biased_symmetry():
    rng = np.random.default_rng(5)
    a, b = Dataset("a", rng.normal(size=(9, 2))), Dataset("b", rng.normal(size=(4, 2)))
    assert mmd_biased(CFG, a, b) == pytest.approx(mmd_biased(CFG, b, a), rel=1e-14)


def test_biased_rejects_dimension_mismatch():
    with pytest.raises(InputError):
        mmd_biased(CFG, ds([0.0]), Dataset("b", np.zeros((2, 2))))


def test_u_stat_identical_constant_samples():
    assert mmd2_unbiased(CFG, ds([0.0], [0.0]), ds([0.0], [0.0])) == pytest.approx(0.0, abs=1e-15)


def test_u_stat_identical_samples_cancel():
    # paired form: within-terms equal cross-terms when D = D'
    assert mmd2_unbiased(CFG, ds([0.0], [1.0]), ds([0.0], [1.0])) == pytest.approx(0.0, abs=1e-15)


def test_u_stat_far_clusters():
    # hand computation: 1 + 1 - 2 exp(-12.5)
    got = mmd2_unbiased(CFG, ds([0.0], [0.0]), ds([5.0], [5.0]))
    assert got == pytest.approx(2.0 - 2.0 * math.exp(-12.5), rel=1e-13)


def test_u_stat_needs_two_points():
    with pytest.raises(InputError):
        mmd2_unbiased(CFG, ds([0.0]), ds([0.0], [1.0]))


def test_u_stat_can_be_negative():
    rng = np.random.default_rng(0)
    vals = []
    for t in range(200):
        a = Dataset("a", rng.normal(size=(5, 1)))
        b = Dataset("b", rng.normal(size=(5, 1)))
        vals.append(mmd2_unbiased(CFG, a, b))
    assert min(vals) < 0.0  # unbiasedness around 0 forces negative excursions


def test_discrete_identical():
    p = pmf([[0.0], [1.0]], [0.3, 0.7])
    assert mmd_discrete(CFG, p, p) == 0.0


def test_discrete_point_masses():
    p, q = pmf([[0.0]], [1.0]), pmf([[1.0]], [1.0])
    assert mmd_discrete(CFG, p, q) == pytest.approx(D01, rel=1e-13)


def test_discrete_half_mixture():
    # hand-expanded weighted sums; equals half the point-mass distance by
    # bilinearity of the squared form
    p = pmf([[0.0]], [1.0])
    q = pmf([[0.0], [1.0]], [0.5, 0.5])
    assert mmd_discrete(CFG, p, q) == pytest.approx(D01 / 2.0, rel=1e-13)


def test_discrete_rejects_bad_pmf():
    with pytest.raises(InputError):
        pmf([[0.0], [1.0]], [0.6, 0.6])
    with pytest.raises(InputError):
        pmf([[0.0], [0.0]], [0.5, 0.5])
    with pytest.raises(InputError):
        pmf([[0.0], [1.0]], [-0.1, 1.1])


def _random_pmf(rng, k=6):
    support = rng.choice(20, size=k, replace=False).astype(float)[:, None]
    w = rng.uniform(size=k)
    return DiscretePmf(support, w / w.sum())


def test_triangle_inequality_on_random_triples():
    rng = np.random.default_rng(42)
    for _ in range(200):
        p, q, r = (_random_pmf(rng) for _ in range(3))
        d_pr = mmd_discrete(CFG, p, r)
        d_pq = mmd_discrete(CFG, p, q)
        d_qr = mmd_discrete(CFG, q, r)
        assert d_pr <= d_pq + d_qr + 1e-9


def test_identity_of_indiscernibles_random():
    rng = np.random.default_rng(43)
    for _ in range(50):
        p = _random_pmf(rng)
        q = _random_pmf(rng)
        assert mmd_discrete(CFG, p, p) <= 1e-12
        if not (np.array_equal(p.support, q.support) and np.allclose(p.probs, q.probs)):
            assert mmd_discrete(CFG, p, q) > 0.0


def test_estimator_consistency_shrinks_with_m():
    base, specs = random_huber_population(2, 10, 0.5, seed=99)
    p1, p2 = realized_pmf(specs[0]), realized_pmf(specs[1])
    exact = mmd_discrete(CFG, p1, p2)
    errs = []
    for m in (50, 500, 5000):
        d1 = sample_huber(specs[0], m, seed=1)
        d2 = sample_huber(specs[1], m, seed=2)
        errs.append(abs(mmd_biased(CFG, d1, d2) - exact))
    assert errs[2] < errs[0] + 0.05
    assert errs[2] < 0.05


def test_u_stat_mean_matches_exact_squared():
    # average over resamples vs the exact squared distance, within 3 SEs
    base, specs = random_huber_population(2, 10, 0.5, seed=7)
    p1, p2 = realized_pmf(specs[0]), realized_pmf(specs[1])
    target = mmd_discrete(CFG, p1, p2) ** 2
    rng = np.random.default_rng(123)
    vals = []
    for _ in range(1000):
        s1, s2 = rng.integers(0, 2**63, size=2)
        d1 = sample_huber(specs[0], 40, seed=int(s1))
        d2 = sample_huber(specs[1], 40, seed=int(s2))
        vals.append(mmd2_unbiased(CFG, d1, d2))
    vals = np.asarray(vals)
    se = vals.std(ddof=1) / math.sqrt(len(vals))
    assert abs(vals.mean() - target) <= 3.0 * se
