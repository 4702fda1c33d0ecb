"""Seeded sampling experiments and normality diagnostics.

Sampling is split across a fixed number of sub-seeded generator streams
(independent of worker count), so a report is a pure function of
(config, num_samples, seed, num_streams).  Crossing counts of convex
configurations are standardized with the exact closed-form mean and
standard deviation; coordinate configurations use the exact mean
4*crossing_number/n^2 and the empirical standard deviation, since no
closed variance form exists there.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import kernels
from .geometry import (
    ConvexConfig,
    CoordinateConfig,
    PointConfig,
    config_content_hash,
    config_kind,
    validate_general_position,
)
from .rng import derive_stream_seeds
from .stats import closed_form_mean, closed_form_variance, general_position_mean
from .trees import shard_bounds

NUM_STREAMS = 16
HISTOGRAM_BINS = 40


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the library erfc (documented |error| well
    below 1e-10); monotone in x."""
    if math.isnan(x) or math.isinf(x):
        raise ValueError("normal_cdf needs a finite argument")
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


@dataclass(frozen=True)
class EmpiricalMoments:
    mean: float
    variance: float  # unbiased
    skewness: float | None  # plug-in (biased) estimators; None when degenerate
    excess_kurtosis: float | None


def empirical_moments(samples) -> EmpiricalMoments:
    """Mean, unbiased variance, and plug-in skewness/excess kurtosis.

    Skewness needs >= 3 samples and kurtosis >= 4; both are None for a
    zero-variance (degenerate) sample.
    """
    xs = [float(v) for v in samples]
    m = len(xs)
    if m < 2:
        raise ValueError("need at least two samples")
    mean = math.fsum(xs) / m
    centered = [x - mean for x in xs]
    ss = math.fsum(c * c for c in centered)
    variance = ss / (m - 1)
    if ss == 0.0:
        return EmpiricalMoments(mean, 0.0, None, None)
    m2 = ss / m
    skew = None
    kurt = None
    if m >= 3:
        m3 = math.fsum(c ** 3 for c in centered) / m
        skew = m3 / m2 ** 1.5
    if m >= 4:
        m4 = math.fsum(c ** 4 for c in centered) / m
        kurt = m4 / m2 ** 2 - 3.0
    return EmpiricalMoments(mean, variance, skew, kurt)


def ks_statistic(standardized) -> float:
    """Two-sided sup distance between the empirical CDF of the sample and
    the standard normal CDF."""
    xs = sorted(float(v) for v in standardized)
    m = len(xs)
    if m == 0:
        raise ValueError("empty sample")
    worst = 0.0
    for i, x in enumerate(xs):
        phi = normal_cdf(x)
        worst = max(worst, (i + 1) / m - phi, phi - i / m)
    return worst


def sample_crossing_counts(
    config: PointConfig,
    num_samples: int,
    seed: int,
    num_streams: int = NUM_STREAMS,
    max_workers: int | None = None,
) -> np.ndarray:
    """Crossing counts of num_samples uniform trees, as int64.

    Streams own fixed contiguous sample ranges, so the output is identical
    for any worker count.
    """
    n = config.n
    if num_samples < 1:
        raise ValueError("num_samples must be >= 1")
    if num_streams < 1:
        raise ValueError("num_streams must be >= 1")
    out = np.zeros(num_samples, dtype=np.int64)
    if n <= 2:
        return out  # a single edge or vertex: no crossings, no draws
    stream_seeds = derive_stream_seeds(seed, num_streams)
    bounds = shard_bounds(num_samples, num_streams)

    if isinstance(config, ConvexConfig):
        def run(s: int) -> None:
            if bounds[s] < bounds[s + 1]:
                kernels.sample_stream_convex(n, stream_seeds[s], out,
                                             bounds[s], bounds[s + 1])
    else:
        validate_general_position(config)
        xs = np.array([p[0] for p in config.points], dtype=np.int64)
        ys = np.array([p[1] for p in config.points], dtype=np.int64)

        def run(s: int) -> None:
            if bounds[s] < bounds[s + 1]:
                kernels.sample_stream_coords(xs, ys, stream_seeds[s], out,
                                             bounds[s], bounds[s + 1])

    if kernels.BACKEND == "compiled" and num_streams > 1:
        with ThreadPoolExecutor(max_workers=max_workers or min(num_streams, 8)) as pool:
            list(pool.map(run, range(num_streams)))
    else:
        for s in range(num_streams):
            run(s)
    return out


def integer_histogram(samples: np.ndarray, num_bins: int = HISTOGRAM_BINS):
    """Deterministic integer-width bins [left, right) covering the sample."""
    lo = int(samples.min())
    hi = int(samples.max())
    width = max(1, -((lo - hi - 1) // num_bins))  # ceil((hi-lo+1)/num_bins)
    bins = []
    left = lo
    while left <= hi:
        right = left + width
        count = int(np.count_nonzero((samples >= left) & (samples < right)))
        bins.append((left, right, count))
        left = right
    return bins


@dataclass(frozen=True)
class SampleReport:
    n: int
    config_kind: str
    config_hash: str | None
    num_samples: int
    seed: int
    num_streams: int
    empirical_mean: float
    empirical_variance: float
    skewness: float | None
    excess_kurtosis: float | None
    ks_distance: float | None
    degenerate: bool
    exact_mean: Fraction
    exact_sigma: float | None
    sigma_source: str  # "exact" (closed form) or "empirical"
    asymptotic_mean: float  # n^2/6
    asymptotic_sigma: float  # sqrt(n^3/45)
    histogram: tuple[tuple[int, int, int], ...]

    def to_json(self) -> str:
        doc = {
            "n": self.n,
            "config_kind": self.config_kind,
            "config_hash": self.config_hash,
            "num_samples": self.num_samples,
            "seed": self.seed,
            "num_streams": self.num_streams,
            "empirical_mean": self.empirical_mean,
            "empirical_variance": self.empirical_variance,
            "skewness": self.skewness,
            "excess_kurtosis": self.excess_kurtosis,
            "ks_distance": self.ks_distance,
            "degenerate": self.degenerate,
            "exact_mean": f"{self.exact_mean.numerator}/{self.exact_mean.denominator}",
            "exact_sigma": self.exact_sigma,
            "sigma_source": self.sigma_source,
            "asymptotic_mean": self.asymptotic_mean,
            "asymptotic_sigma": self.asymptotic_sigma,
            "histogram": [list(b) for b in self.histogram],
        }
        return json.dumps(doc, indent=2) + "\n"

    def histogram_csv(self) -> str:
        lines = ["bin_left,bin_right,count"]
        lines += [f"{left},{right},{count}" for left, right, count in self.histogram]
        return "\n".join(lines) + "\n"


def run_experiment(
    config: PointConfig,
    num_samples: int,
    seed: int,
    num_streams: int = NUM_STREAMS,
    max_workers: int | None = None,
) -> SampleReport:
    """Sample uniform trees, count crossings, and report moment and
    normality diagnostics.  Fully deterministic given the arguments."""
    n = config.n
    if n < 2:
        raise ValueError("need n >= 2")
    counts = sample_crossing_counts(config, num_samples, seed, num_streams,
                                    max_workers)
    emp = empirical_moments(counts) if num_samples >= 2 else EmpiricalMoments(
        float(counts[0]), 0.0, None, None)

    if isinstance(config, ConvexConfig):
        exact_mean = closed_form_mean(n)
        exact_var = closed_form_variance(n)
        sigma = math.sqrt(exact_var) if exact_var > 0 else None
        sigma_source = "exact"
        cfg_hash = None
    else:
        exact_mean = general_position_mean(config)
        sigma = math.sqrt(emp.variance) if emp.variance > 0 else None
        sigma_source = "empirical"
        cfg_hash = config_content_hash(config)

    degenerate = sigma is None or emp.variance == 0.0
    ks = None
    if not degenerate:
        standardized = (counts - float(exact_mean)) / sigma
        ks = ks_statistic(standardized)

    return SampleReport(
        n=n,
        config_kind=config_kind(config),
        config_hash=cfg_hash,
        num_samples=num_samples,
        seed=seed,
        num_streams=num_streams,
        empirical_mean=emp.mean,
        empirical_variance=emp.variance,
        skewness=emp.skewness,
        excess_kurtosis=emp.excess_kurtosis,
        ks_distance=ks,
        degenerate=degenerate,
        exact_mean=exact_mean,
        exact_sigma=sigma if sigma_source == "exact" else None,
        sigma_source=sigma_source,
        asymptotic_mean=n * n / 6.0,
        asymptotic_sigma=math.sqrt(n ** 3 / 45.0),
        histogram=tuple(integer_histogram(counts)),
    )


@dataclass(frozen=True)
class VarianceProbeRow:
    n: int
    config_kind: str
    empirical_variance: float
    variance_over_n3: float
    # crossing number relative to its maximum C(n,4); 1 for convex
    crossing_fraction: Fraction


def variance_scaling_probe(
    configs,
    num_samples: int,
    seed: int,
    num_streams: int = NUM_STREAMS,
) -> list[VarianceProbeRow]:
    """Empirical Var/n^3 per configuration, for cubic-variance checks.

    One sub-seed is derived per configuration from the master seed, in
    list order.
    """
    configs = list(configs)
    seeds = derive_stream_seeds(seed, len(configs))
    rows = []
    for cfg, cfg_seed in zip(configs, seeds):
        n = cfg.n
        counts = sample_crossing_counts(cfg, num_samples, cfg_seed, num_streams)
        emp = empirical_moments(counts) if num_samples >= 2 else None
        var = emp.variance if emp else 0.0
        if isinstance(cfg, ConvexConfig):
            frac = Fraction(1)
        else:
            from .geometry import rectilinear_crossing_number

            crbar = rectilinear_crossing_number(cfg)
            frac = Fraction(crbar, math.comb(n, 4)) if n >= 4 else Fraction(0)
        rows.append(VarianceProbeRow(n, config_kind(cfg), var, var / n ** 3, frac))
    return rows


def save_report(report: SampleReport, path: str | Path) -> None:
    Path(path).write_text(report.to_json())
