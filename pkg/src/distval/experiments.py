"""Seeded experiment runners with reproducible, recomputable reports.

Every runner draws all randomness from per-trial generators derived from
(config seed, trial index), so identical configs give byte-identical rows and
trials could be distributed without changing results. Aggregates are plain
mean/standard-error summaries recomputable from the rows.
"""
from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from ._version import __version__ as _code_version
from .data import DiscretePmf, mix_pmfs
from .errors import InputError, UndefinedCorrelationError
from .game import build_game, verify_minmax
from .huber import (
    HuberSpec,
    MixtureWeights,
    huber_value_exact,
    random_huber_population,
    random_pmf,
    realized_pmf,
    sample_huber,
)
from .kernel import KernelConfig, _gram_sum_arrays
from .metrics import ValueVector, inversions, l2_err, l_inf_err, pearson
from .mmd import _biased_from_sums, _u_stat_from_sums, mmd_discrete
from .policy import PolicyParams, Verdict, compare
from .valuation import (
    Reference,
    ReferenceKind,
    approximation_error_bound,
    build_uniform_reference,
    uniform_mixture_pmf,
    value_distribution_exact,
)


class ExperimentName(str, Enum):
    CORRELATION = "correlation"
    CONVERGENCE = "convergence"
    POLICY_SOUNDNESS = "policy_soundness"
    INCENTIVE_COMPAT = "incentive_compat"
    GAME_VERIFY = "game_verify"


_EXTRA_DEFAULTS: dict[ExperimentName, dict[str, Any]] = {
    ExperimentName.CORRELATION: {"support_max": 10, "eps_max": 0.5},
    ExperimentName.CONVERGENCE: {
        "support_max": 10,
        "eps_max": 0.5,
        "eps_scheme": "random",  # or "spaced": eps_i = i/n, i = 0..n-1
        "shared_outlier": False,
        "fractions": [0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0],
        "m_full": 1000,
        "m_star": 4000,
    },
    ExperimentName.POLICY_SOUNDNESS: {
        "reference": "ground_truth",  # or "uniform"
        "m": 1000,
        "m_star": 1000,
        "eps_bias": 0.1,
        "eps_upsilon": 0.0,
        "separated_eps_lo": 0.4,
        "separated_eps_hi": 0.5,
        # point-mass base vs point-mass outlier this far away: near-maximal
        # distance, so separated pairs actually clear the criterion margin
        "outlier_shift": 5.0,
        # the uniform-mixture variant draws its reference from this many
        # lightly contaminated marketplace vendors (the compared pair is not
        # part of the mixture, so the mixture cannot hide their gap)
        "ref_vendors": 3,
        "ref_eps_max": 0.1,
        "ref_m": 600,
    },
    ExperimentName.INCENTIVE_COMPAT: {
        "mode": "empirical",  # or "exact"
        "support_max": 10,
        "eps_max": 0.5,
        "m": 600,
        "m_star": 2400,
        "noise_var": 0.2,
        "misreporter": None,  # default: middle vendor n // 2
    },
    ExperimentName.GAME_VERIFY: {"n_values": [2, 3, 4, 5], "distance_scale": 1.0},
}


@dataclass(frozen=True)
class ExperimentConfig:
    name: ExperimentName
    n: int
    trials: int
    seed: int
    kernel: KernelConfig
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.trials < 1:
            raise InputError("experiment: trials must be >= 1")
        if self.n < 1:
            raise InputError("experiment: n must be >= 1")
        known = _EXTRA_DEFAULTS[self.name]
        unknown = set(self.extra) - set(known)
        if unknown:
            raise InputError(f"experiment {self.name.value}: unknown extra keys {sorted(unknown)}")

    def resolved_extra(self) -> dict:
        out = dict(_EXTRA_DEFAULTS[self.name])
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class ExperimentReport:
    name: str
    config: dict
    code_version: str
    rows: list[dict]
    aggregates: dict
    curves: dict = field(default_factory=dict)
    timing: dict | None = None

    def to_json(self) -> str:
        payload = {
            "name": self.name,
            "config": self.config,
            "code_version": self.code_version,
            "rows": self.rows,
            "aggregates": self.aggregates,
            "curves": self.curves,
        }
        if self.timing is not None:
            payload["timing"] = self.timing
        return json.dumps(payload)


def _echo_config(cfg: ExperimentConfig) -> dict:
    return {
        "name": cfg.name.value,
        "n": cfg.n,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "kernel": {
            "family": cfg.kernel.family.value,
            "sigma": cfg.kernel.sigma,
            "k_bound": cfg.kernel.k_bound,
        },
        "extra": cfg.resolved_extra(),
    }


def _trial_seeds(config_seed: int, trial: int, k: int) -> list[int]:
    # All per-trial randomness flows from (config seed, trial index).
    return [int(s) for s in np.random.SeedSequence([config_seed, trial]).generate_state(k)]


def _trial_rng(config_seed: int, trial: int, stream: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([config_seed, trial, stream]))


def summarize(rows: list[dict], skip: tuple[str, ...] = ("trial",)) -> dict:
    """Mean and standard error per numeric statistic over the rows."""
    agg: dict[str, dict[str, float]] = {}
    if not rows:
        return agg
    for key in rows[0]:
        if key in skip:
            continue
        vals = [r[key] for r in rows if isinstance(r.get(key), (int, float))]
        if len(vals) != len(rows):
            continue
        arr = np.asarray(vals, dtype=float)
        stderr = float(arr.std(ddof=1) / math.sqrt(len(arr))) if len(arr) > 1 else 0.0
        agg[key] = {"mean": float(arr.mean()), "stderr": stderr}
    return agg


def _linreg_r2(x: np.ndarray, y: np.ndarray) -> float:
    """Coefficient of determination of the least-squares line of y on x."""
    xc = x - x.mean()
    ss_x = float(xc @ xc)
    if ss_x == 0.0:
        return float("nan")
    slope = float(xc @ (y - y.mean())) / ss_x
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    if ss_tot == 0.0:
        return float("nan")
    return 1.0 - float(resid @ resid) / ss_tot


# ---------------------------------------------------------------------------
# correlation: exact values against the uniform-mixture reference


def run_correlation(cfg: ExperimentConfig) -> ExperimentReport:
    """Exact-mode study: how well do mixture-reference values track true values?

    Per trial, draws a random population, computes the true value -d(P_i, base)
    and the measured value -d(P_i, P_mix) of every vendor exactly, and records
    their Pearson correlation. Two regression fits are recorded: the exact
    values regressed on the error levels (the identity line, r^2 = 1), and the
    measured values regressed on the error levels, flagged when its r^2 drops
    below 0.9.
    """
    ex = cfg.resolved_extra()
    rows = []
    for t in range(cfg.trials):
        (seed_pop,) = _trial_seeds(cfg.seed, t, 1)
        base, specs = random_huber_population(cfg.n, ex["support_max"], ex["eps_max"], seed_pop)
        pmfs = [realized_pmf(s) for s in specs]
        true = np.array([value_distribution_exact(cfg.kernel, p, base) for p in pmfs])
        p_mix = uniform_mixture_pmf(specs)
        measured = np.array([value_distribution_exact(cfg.kernel, p, p_mix) for p in pmfs])
        error = -true
        ids = tuple(f"v{i}" for i in range(cfg.n))
        try:
            rho = pearson(ValueVector(true, ids), ValueVector(measured, ids))
        except UndefinedCorrelationError:
            rows.append({"trial": t, "skipped": 1})
            continue
        r2_meas = _linreg_r2(error, measured)
        rows.append(
            {
                "trial": t,
                "skipped": 0,
                "pearson": rho,
                "r2_exact_fit": _linreg_r2(error, true),
                "r2_measured_on_error": r2_meas,
                "r2_below_0.9": int(r2_meas < 0.9),
            }
        )
    kept = [r for r in rows if not r.get("skipped")]
    return ExperimentReport(
        name=cfg.name.value,
        config=_echo_config(cfg),
        code_version=_code_version,
        rows=rows,
        aggregates=summarize(kept, skip=("trial", "skipped")),
    )


# ---------------------------------------------------------------------------
# convergence: sample-size sweep of the three ranking criteria


def _population(cfg: ExperimentConfig, ex: dict, seed: int):
    """Population for sweep experiments, honouring the eps scheme."""
    n = cfg.n
    if ex.get("eps_scheme", "random") == "random" and not ex.get("shared_outlier", False):
        return random_huber_population(n, ex["support_max"], ex["eps_max"], seed)
    rng = np.random.default_rng(seed)
    support = np.arange(ex["support_max"] + 1, dtype=float)[:, None]
    base = random_pmf(rng, support)
    if ex.get("eps_scheme", "random") == "spaced":
        eps = np.array([i / n for i in range(n)])
    else:
        eps = rng.uniform(0.0, ex["eps_max"], size=n)
    if ex.get("shared_outlier", False):
        q = random_pmf(rng, support)
        outliers = [q] * n
    else:
        outliers = [random_pmf(rng, support) for _ in range(n)]
    specs = [
        HuberSpec(epsilon=float(eps[i]), base=base, outlier=outliers[i]) for i in range(n)
    ]
    return base, specs


def _values_against_cached_ref(
    kcfg: KernelConfig, point_sets: list[np.ndarray], ref: np.ndarray, s_rr: float
) -> np.ndarray:
    """Biased-MMD values of several datasets against one reference, reusing the
    reference self-sum (the dominant O(m_ref^2) term)."""
    mr = ref.shape[0]
    vals = []
    for pts in point_sets:
        m = pts.shape[0]
        s_xx = _gram_sum_arrays(kcfg, pts, pts)
        s_xr = _gram_sum_arrays(kcfg, pts, ref)
        vals.append(-_biased_from_sums(s_xx, s_rr, s_xr, m, mr))
    return np.array(vals)


def run_convergence(cfg: ExperimentConfig) -> ExperimentReport:
    """Sweep sample fractions and measure l2 / l_inf / inversions of the values
    at each size against the full-size values, all against one ground-truth
    reference sample per trial."""
    ex = cfg.resolved_extra()
    fractions = list(ex["fractions"])
    m_full, m_star = int(ex["m_full"]), int(ex["m_star"])
    ids = tuple(f"v{i}" for i in range(cfg.n))
    rows = []
    for t in range(cfg.trials):
        seeds = _trial_seeds(cfg.seed, t, 2 + cfg.n)
        base, specs = _population(cfg, ex, seeds[0])
        ref = sample_huber(HuberSpec(0.0, base, None), m_star, seeds[1], "ref").points
        full = [
            sample_huber(specs[i], m_full, seeds[2 + i], f"v{i}").points for i in range(cfg.n)
        ]
        s_rr = _gram_sum_arrays(cfg.kernel, ref, ref)
        nu_star = _values_against_cached_ref(cfg.kernel, full, ref, s_rr)
        vv_star = ValueVector(nu_star, ids)
        for f in fractions:
            m_f = max(1, round(f * m_full))
            nu = _values_against_cached_ref(
                cfg.kernel, [pts[:m_f] for pts in full], ref, s_rr
            )
            vv = ValueVector(nu, ids)
            rows.append(
                {
                    "trial": t,
                    "fraction": f,
                    "m": m_f,
                    "l2": l2_err(vv, vv_star),
                    "linf": l_inf_err(vv, vv_star),
                    "inversions": inversions(vv, vv_star),
                }
            )
    curves: dict[str, list[dict]] = {crit: [] for crit in ("l2", "linf", "inversions")}
    for f in fractions:
        sub = [r for r in rows if r["fraction"] == f]
        agg = summarize(sub, skip=("trial", "fraction", "m"))
        for crit in curves:
            curves[crit].append({"fraction": f, **agg[crit]})
    return ExperimentReport(
        name=cfg.name.value,
        config=_echo_config(cfg),
        code_version=_code_version,
        rows=rows,
        aggregates=summarize(rows, skip=("trial", "fraction", "m")),
        curves=curves,
    )


# ---------------------------------------------------------------------------
# policy soundness: Monte-Carlo check of the comparison guarantees


def run_policy_soundness(cfg: ExperimentConfig) -> ExperimentReport:
    """Resample vendor pairs, run `compare`, and tally how often a Conclude
    verdict is actually right about the exact population values.

    Half the trials use a well-separated pair (a point-mass base against a
    model leaking mass to a far point: the conclusion should be drawn and is
    analytically true); half use an identical pair, where any Conclude is a
    false positive bounded by the confidence level. The uniform-mixture
    variant values both candidates against a marketplace mixture of lightly
    contaminated vendors, with the margin surcharge taken from the exact
    mixture error bound.
    """
    ex = cfg.resolved_extra()
    m, m_star = int(ex["m"]), int(ex["m_star"])
    params = PolicyParams(eps_upsilon=float(ex["eps_upsilon"]), eps_bias=float(ex["eps_bias"]))
    use_uniform = ex["reference"] == "uniform"
    shift = float(ex["outlier_shift"])
    n_ref = int(ex["ref_vendors"])
    rows = []
    for t in range(cfg.trials):
        rng = _trial_rng(cfg.seed, t)
        seeds = _trial_seeds(cfg.seed, t, 3 + n_ref)
        support = np.arange(11, dtype=float)[:, None]
        separated = t % 2 == 0
        if separated:
            atom = float(rng.integers(0, 11))
            base = DiscretePmf(np.array([[atom]]), np.array([1.0]))
            far = DiscretePmf(np.array([[atom + shift]]), np.array([1.0]))
            eps2 = float(rng.uniform(ex["separated_eps_lo"], ex["separated_eps_hi"]))
            spec1 = HuberSpec(0.0, base, None)
            spec2 = HuberSpec(eps2, base, far)
        else:
            base = random_pmf(rng, support)
            eps = float(rng.uniform(0.0, 0.2))
            q = random_pmf(rng, support)
            spec1 = HuberSpec(eps, base, q)
            spec2 = HuberSpec(eps, base, q)
        d1 = sample_huber(spec1, m, seeds[0], "a")
        d2 = sample_huber(spec2, m, seeds[1], "b")
        if use_uniform:
            ref_specs = [
                HuberSpec(float(rng.uniform(0.0, ex["ref_eps_max"])), base, random_pmf(rng, support))
                for _ in range(n_ref)
            ]
            ref_sets = [
                sample_huber(ref_specs[i], int(ex["ref_m"]), seeds[3 + i], f"ref{i}")
                for i in range(n_ref)
            ]
            ref = build_uniform_reference(ref_sets, seeds[2])
            gap = approximation_error_bound(
                ref_specs, MixtureWeights.uniform(n_ref), cfg.kernel
            )
            report = compare(cfg.kernel, params, d1, d2, ref, huber_gap=gap)
        else:
            ref_data = sample_huber(HuberSpec(0.0, base, None), m_star, seeds[2], "ref")
            ref = Reference(kind=ReferenceKind.GROUND_TRUTH, data=ref_data)
            report = compare(cfg.kernel, params, d1, d2, ref)
        true_gap = huber_value_exact(cfg.kernel, spec1) - huber_value_exact(cfg.kernel, spec2)
        truth = true_gap > params.eps_upsilon
        concluded = report.verdict is Verdict.CONCLUDE
        rows.append(
            {
                "trial": t,
                "separated": int(separated),
                "concluded": int(concluded),
                "truth_holds": int(truth),
                "violation": int(concluded and not truth),
                "observed_gap": report.observed_gap,
                "margin": report.margin,
                "delta": report.delta,
            }
        )
    agg = summarize(rows)
    concluded_rows = [r for r in rows if r["concluded"]]
    agg["conclude_rate"] = {"mean": len(concluded_rows) / len(rows), "stderr": 0.0}
    sound = (
        sum(r["truth_holds"] for r in concluded_rows) / len(concluded_rows)
        if concluded_rows
        else 1.0
    )
    agg["soundness_among_concluded"] = {"mean": sound, "stderr": 0.0}
    return ExperimentReport(
        name=cfg.name.value,
        config=_echo_config(cfg),
        code_version=_code_version,
        rows=rows,
        aggregates=agg,
    )


# ---------------------------------------------------------------------------
# incentive compatibility: what misreporting does to the misreporter's value


def _convolve_lattice(pmf: DiscretePmf, noise_var: float) -> DiscretePmf:
    """Exact-mode misreport: convolve a 1-D integer-lattice pmf with a
    discretized zero-mean Gaussian, extending the support as needed."""
    if pmf.dim != 1:
        raise InputError("exact-mode misreport needs a 1-D lattice pmf")
    if not np.allclose(pmf.support[:, 0], np.round(pmf.support[:, 0])):
        raise InputError("exact-mode misreport needs an integer-lattice support")
    tau = math.sqrt(noise_var)
    half = max(1, math.ceil(4.0 * tau))
    offsets = np.arange(-half, half + 1)
    w = np.exp(-(offsets.astype(float) ** 2) / (2.0 * noise_var))
    w /= w.sum()
    lat = np.round(pmf.support[:, 0]).astype(int)
    lo, hi = lat.min() - half, lat.max() + half
    probs = np.zeros(hi - lo + 1)
    for x, p in zip(lat, pmf.probs):
        probs[x - lo - half : x - lo + half + 1] += p * w
    support = np.arange(lo, hi + 1, dtype=float)[:, None]
    return DiscretePmf(support=support, probs=probs / probs.sum())


def _ic_values_empirical(kcfg, point_sets, ref):
    mr = ref.shape[0]
    s_rr = _gram_sum_arrays(kcfg, ref, ref)
    mmd_vals, u_vals = [], []
    for pts in point_sets:
        m = pts.shape[0]
        s_xx = _gram_sum_arrays(kcfg, pts, pts)
        s_xr = _gram_sum_arrays(kcfg, pts, ref)
        mmd_vals.append(-_biased_from_sums(s_xx, s_rr, s_xr, m, mr))
        u_vals.append(-_u_stat_from_sums(s_xx, s_rr, s_xr, m, mr))
    return np.array(mmd_vals), np.array(u_vals)


def run_incentive(cfg: ExperimentConfig) -> ExperimentReport:
    """Per-vendor value changes when one vendor misreports by adding zero-mean
    Gaussian noise, under three scorings: ground-truth reference, the
    uniform-mixture reference (biased MMD), and squared-MMD values against the
    same mixture reference. The mixture reference is rebuilt from the
    misreported data, as a real marketplace would have to."""
    ex = cfg.resolved_extra()
    rows = []
    i_mis = ex["misreporter"] if ex["misreporter"] is not None else cfg.n // 2
    if not (0 <= i_mis < cfg.n):
        raise InputError("incentive: misreporter index out of range")
    for t in range(cfg.trials):
        seeds = _trial_seeds(cfg.seed, t, 4 + cfg.n)
        base, specs = random_huber_population(cfg.n, ex["support_max"], ex["eps_max"], seeds[0])
        if ex["mode"] == "exact":
            rows.extend(_incentive_exact_trial(cfg, ex, t, base, specs, i_mis))
            continue
        m, m_star = int(ex["m"]), int(ex["m_star"])
        data = [sample_huber(specs[i], m, seeds[2 + i], f"v{i}") for i in range(cfg.n)]
        ref_gt = sample_huber(HuberSpec(0.0, base, None), m_star, seeds[1], "gt").points
        rng = _trial_rng(cfg.seed, t, stream=1)
        noisy = data[i_mis].points + rng.normal(
            0.0, math.sqrt(ex["noise_var"]), size=data[i_mis].points.shape
        )
        honest_sets = [d.points for d in data]
        mis_sets = list(honest_sets)
        mis_sets[i_mis] = noisy
        ref_u_honest = np.concatenate(honest_sets, axis=0)
        ref_u_mis = np.concatenate(mis_sets, axis=0)
        gt_b, _ = _ic_values_empirical(cfg.kernel, honest_sets, ref_gt)
        gt_a, _ = _ic_values_empirical(cfg.kernel, mis_sets, ref_gt)
        ours_b, m2_b = _ic_values_empirical(cfg.kernel, honest_sets, ref_u_honest)
        ours_a, m2_a = _ic_values_empirical(cfg.kernel, mis_sets, ref_u_mis)
        for i in range(cfg.n):
            rows.append(
                {
                    "trial": t,
                    "vendor": i,
                    "misreporter": int(i == i_mis),
                    "change_gt": float(gt_a[i] - gt_b[i]),
                    "change_ours": float(ours_a[i] - ours_b[i]),
                    "change_mmd2": float(m2_a[i] - m2_b[i]),
                    "d_ours_before": float(-ours_b[i]),
                    "d_ours_after": float(-ours_a[i]),
                }
            )
    mis_rows = [r for r in rows if r["misreporter"]]
    agg = summarize(rows, skip=("trial", "vendor"))
    for key in ("change_gt", "change_ours", "change_mmd2"):
        agg[f"misreporter_{key}"] = summarize(mis_rows, skip=("trial", "vendor"))[key]
    return ExperimentReport(
        name=cfg.name.value,
        config=_echo_config(cfg),
        code_version=_code_version,
        rows=rows,
        aggregates=agg,
    )


def _incentive_exact_trial(cfg, ex, t, base, specs, i_mis):
    pmfs = [realized_pmf(s) for s in specs]
    mis_pmfs = list(pmfs)
    mis_pmfs[i_mis] = _convolve_lattice(pmfs[i_mis], float(ex["noise_var"]))
    w = np.full(cfg.n, 1.0 / cfg.n)
    p_u_honest = mix_pmfs(pmfs, w)
    p_u_mis = mix_pmfs(mis_pmfs, w)
    out = []
    for i in range(cfg.n):
        d_gt_b = mmd_discrete(cfg.kernel, pmfs[i], base)
        d_gt_a = mmd_discrete(cfg.kernel, mis_pmfs[i], base)
        d_u_b = mmd_discrete(cfg.kernel, pmfs[i], p_u_honest)
        d_u_a = mmd_discrete(cfg.kernel, mis_pmfs[i], p_u_mis)
        out.append(
            {
                "trial": t,
                "vendor": i,
                "misreporter": int(i == i_mis),
                "change_gt": -(d_gt_a - d_gt_b),
                "change_ours": -(d_u_a - d_u_b),
                "change_mmd2": -(d_u_a**2 - d_u_b**2),
                "d_ours_before": d_u_b,
                "d_ours_after": d_u_a,
            }
        )
    return out


# ---------------------------------------------------------------------------
# game verification


def run_game_verify(cfg: ExperimentConfig) -> ExperimentReport:
    """Certify the uniform-minimax identity on random distance vectors."""
    ex = cfg.resolved_extra()
    rows = []
    for t in range(cfg.trials):
        rng = _trial_rng(cfg.seed, t)
        for n in ex["n_values"]:
            d = rng.uniform(0.0, float(ex["distance_scale"]), size=n)
            rep = verify_minmax(build_game(d))
            rows.append(
                {
                    "trial": t,
                    "n": n,
                    "certified": int(rep.certified),
                    "uniform_value": rep.uniform_value,
                    "dual_value": rep.dual_value,
                    "best_pure_value": rep.best_pure_value,
                }
            )
    agg = summarize(rows, skip=("trial", "n"))
    agg["pass_rate"] = {
        "mean": sum(r["certified"] for r in rows) / len(rows),
        "stderr": 0.0,
    }
    return ExperimentReport(
        name=cfg.name.value,
        config=_echo_config(cfg),
        code_version=_code_version,
        rows=rows,
        aggregates=agg,
    )


_RUNNERS = {
    ExperimentName.CORRELATION: run_correlation,
    ExperimentName.CONVERGENCE: run_convergence,
    ExperimentName.POLICY_SOUNDNESS: run_policy_soundness,
    ExperimentName.INCENTIVE_COMPAT: run_incentive,
    ExperimentName.GAME_VERIFY: run_game_verify,
}


def run(cfg: ExperimentConfig, timing: bool = False) -> ExperimentReport:
    """Dispatch to the named runner; with timing=True the report carries the
    wall-clock duration (kept out of the rows, which stay byte-identical)."""
    start = time.perf_counter()
    report = _RUNNERS[cfg.name](cfg)
    if timing:
        return ExperimentReport(
            name=report.name,
            config=report.config,
            code_version=report.code_version,
            rows=report.rows,
            aggregates=report.aggregates,
            curves=report.curves,
            timing={"elapsed_seconds": time.perf_counter() - start, "trials": cfg.trials},
        )
    return report


# ---------------------------------------------------------------------------
# serialization


def write_rows_csv(report: ExperimentReport, path: str):
    """Per-trial rows as CSV; column order follows the first row."""
    if not report.rows:
        raise InputError("report has no rows")
    cols: list[str] = []
    for r in report.rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(cols)
        for r in report.rows:
            w.writerow([r.get(c, "") for c in cols])


def write_curve_csvs(report: ExperimentReport, base_path: str) -> list[str]:
    """One plot-ready CSV per criterion curve (convergence experiments)."""
    written = []
    for crit, points in report.curves.items():
        path = f"{base_path}_{crit}.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["fraction", "mean", "stderr"])
            for pt in points:
                w.writerow([pt["fraction"], pt["mean"], pt["stderr"]])
        written.append(path)
    return written
