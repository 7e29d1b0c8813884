"""Monte Carlo estimators and the closed-form knotting-probability bound.

The estimators partition the sample stream into fixed-size chunks;
chunk k draws from a counter-based generator keyed by (seed, k), so
results are bit-identical for a given (samples, seed) regardless of
how many workers execute the chunks. Reported fractions exclude
degenerate samples from both numerator and denominator.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict

import numpy as np

from .action_angle import (
    build_hexagon,
    in_moment_polytope,
    sample_action_batch,
    sample_angles_batch,
)
from .invariants import (
    KNOT_CLASS_LABELS,
    KnotClass,
    TREFOIL_CLASSES,
    classify_batch,
)
from .trefoil_predicates import TARGET_PAIRS, class_masks, passes_window_filters

TWO_PI = 2.0 * np.pi
CHUNK_SIZE = 1 << 16
_MASK64 = (1 << 64) - 1

UPPER_BOUND = (14.0 - 3.0 * np.pi) / 192.0
ONE_OVER_42 = 1.0 / 42.0


class UnknownRegionError(ValueError):
    """Region name not in REGIONS."""


class BoundViolatedError(RuntimeError):
    """Estimate's confidence interval exceeds the proven upper bound."""


class NoSamplesError(ValueError):
    """Report carries no usable samples."""


def chunk_rng(seed, chunk_index):
    """Independent generator for one chunk of the sample stream.

    Philox is counter-based: distinct (seed, chunk) keys give distinct,
    reproducible streams with no sequential coupling, which is what
    makes worker scheduling irrelevant to the results.
    """
    key = np.array([seed & _MASK64, chunk_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _chunks(n, chunk_size):
    return [(k, min(chunk_size, n - k * chunk_size))
            for k in range((n + chunk_size - 1) // chunk_size)]


def _run_chunks(func, n, workers, chunk_size):
    chunks = _chunks(n, chunk_size)
    if workers <= 1:
        return [func(k, m) for k, m in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda km: func(*km), chunks))


def sample_coordinate_stream(seed, n, chunk_size=CHUNK_SIZE):
    """Yield (diagonals, angles) chunk pairs of the estimator's stream."""
    for k, m in _chunks(n, chunk_size):
        rng = chunk_rng(seed, k)
        yield sample_action_batch(rng, m), sample_angles_batch(rng, m)


@dataclass
class VolumeTable:
    """Closed-form constants behind the knotting-probability bound."""

    vol_P6: float = 4.0
    vol_third: float = 4.0 / 3.0
    vol_obtuse: float = 2.0 * (np.pi - 2.0) / 3.0
    ratio_obtuse: float = np.pi / 2.0 - 1.0
    torus_frac_obtuse: float = 1.0 / 192.0
    torus_frac_acute: float = 1.0 / 48.0
    upper_bound: float = UPPER_BOUND

    def expected_positive_curl_bound(self) -> float:
        """Bound on the positive-curl trefoil fraction: obtuse and acute
        diagonal regions weighted by their angle-window fractions."""
        return (self.ratio_obtuse * self.torus_frac_obtuse
                + (2.0 - np.pi / 2.0) * self.torus_frac_acute)

    def to_dict(self) -> dict:
        return asdict(self)


def analytic_volumes() -> VolumeTable:
    """The closed-form volume table (verified against MC estimates)."""
    return VolumeTable()


def _region_P6(d):
    return in_moment_polytope(d)


def _region_third(d):
    return _region_P6(d) & (d[:, 0] > d[:, 1]) & (d[:, 0] > d[:, 2])


def _region_obtuse(d):
    return _region_third(d) & (d[:, 0] ** 2 > d[:, 1] ** 2 + d[:, 2] ** 2)


def _region_acute(d):
    return _region_third(d) & (d[:, 0] ** 2 < d[:, 1] ** 2 + d[:, 2] ** 2)


def _window_obtuse(t):
    return ((t[:, 0] > np.pi / 2) & (t[:, 0] < np.pi)
            & (t[:, 1] > 0) & (t[:, 1] < np.pi / 2)
            & (t[:, 2] > 0) & (t[:, 2] < np.pi / 2)
            & (t[:, 0] + t[:, 1] < np.pi) & (t[:, 0] + t[:, 2] < np.pi))


def _window_acute(t):
    return ((t[:, 0] > 0) & (t[:, 0] < np.pi)
            & (t[:, 1] > 0) & (t[:, 1] < np.pi / 2)
            & (t[:, 2] > 0) & (t[:, 2] < np.pi / 2)
            & (t[:, 0] + t[:, 1] < np.pi) & (t[:, 0] + t[:, 2] < np.pi))


# name -> (draw upper bound, membership test, reference volume, analytic value)
REGIONS = {
    "P6": (2.0, _region_P6, 8.0, 4.0),
    "third_d1_max": (2.0, _region_third, 8.0, 4.0 / 3.0),
    "obtuse_d1": (2.0, _region_obtuse, 8.0, 2.0 * (np.pi - 2.0) / 3.0),
    "acute_d1": (2.0, _region_acute, 8.0, (8.0 - 2.0 * np.pi) / 3.0),
    "torus_obtuse_window": (TWO_PI, _window_obtuse, TWO_PI ** 3, TWO_PI ** 3 / 192.0),
    "torus_acute_window": (TWO_PI, _window_acute, TWO_PI ** 3, TWO_PI ** 3 / 48.0),
}


@dataclass
class VolumeEstimate:
    region: str
    samples: int
    seed: int
    hits: int
    fraction: float
    fraction_std_error: float
    value: float
    value_std_error: float
    reference_volume: float
    analytic: float

    def z_score(self) -> float:
        return (self.value - self.analytic) / self.value_std_error

    def to_dict(self) -> dict:
        return asdict(self)


def mc_region_volume(region, n, seed, workers=1, chunk_size=CHUNK_SIZE):
    """Monte Carlo volume of a named region: hit fraction times the
    reference volume, with the binomial standard error."""
    if region not in REGIONS:
        raise UnknownRegionError(
            f"unknown region {region!r}; choose from {sorted(REGIONS)}")
    hi, member, ref, analytic = REGIONS[region]

    def one_chunk(k, m):
        draw = chunk_rng(seed, k).uniform(0.0, hi, (m, 3))
        return int(member(draw).sum())

    hits = sum(_run_chunks(one_chunk, n, workers, chunk_size))
    frac = hits / n
    frac_se = np.sqrt(frac * (1.0 - frac) / n)
    return VolumeEstimate(
        region=region, samples=n, seed=seed, hits=hits,
        fraction=frac, fraction_std_error=float(frac_se),
        value=frac * ref, value_std_error=float(frac_se * ref),
        reference_volume=ref, analytic=analytic,
    )


@dataclass
class EstimationReport:
    """Result of one knotting-probability run.

    fraction_* entries exclude degenerate samples from numerator and
    denominator. In predicate mode fraction_total is 4 * fraction_R_plus
    (the four trefoil classes have equal measure); in oracle mode it is
    the sum of the four classified trefoil fractions. std_error and ci95
    describe fraction_total.
    """

    samples: int
    seed: int
    mode: str
    hits: dict
    degenerate_count: int
    fraction_R_plus: float
    fraction_total: float
    std_error: float
    ci95: tuple
    wall_time_seconds: float
    workers: int = 1
    agreement: dict | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        out["ci95"] = list(self.ci95)
        return out

    def to_json(self, **kwargs) -> str:
        kwargs.setdefault("indent", 2)
        return json.dumps(self.to_dict(), **kwargs)

    def csv_header(self) -> str:
        return ("samples,seed,mode,degenerate_count,fraction_R_plus,"
                "fraction_total,std_error,ci95_low,ci95_high,wall_time_seconds")

    def to_csv_row(self) -> str:
        return (f"{self.samples},{self.seed},{self.mode},{self.degenerate_count},"
                f"{self.fraction_R_plus:.17g},{self.fraction_total:.17g},"
                f"{self.std_error:.17g},{self.ci95[0]:.17g},{self.ci95[1]:.17g},"
                f"{self.wall_time_seconds:.6f}")


_PREDICATE_ORDER = tuple(TREFOIL_CLASSES)


def _predicate_chunk(seed, k, m):
    rng = chunk_rng(seed, k)
    d = sample_action_batch(rng, m)
    th = sample_angles_batch(rng, m)
    masks = class_masks(d, th)
    return np.array([int(masks[cls].sum()) for cls in _PREDICATE_ORDER])


def _oracle_chunk(seed, k, m):
    rng = chunk_rng(seed, k)
    d = sample_action_batch(rng, m)
    th = sample_angles_batch(rng, m)
    codes = classify_batch(build_hexagon(d, th))
    class_counts = np.bincount(codes, minlength=6)

    masks = class_masks(d, th)
    agree = np.zeros((len(_PREDICATE_ORDER), 4), dtype=np.int64)
    for row, cls in enumerate(_PREDICATE_ORDER):
        chirality, curl_sign = TARGET_PAIRS[cls]
        pred = masks[cls]
        accepted = pred & passes_window_filters(d, th, chirality, curl_sign)
        oracle = codes == int(cls)
        agree[row] = (
            int(pred.sum()),
            int((oracle & pred).sum()),
            int((oracle & ~accepted).sum()),  # fails predicate or a filter
            int((pred & ~oracle).sum()),      # sufficiency gap
        )
    return class_counts, agree


def estimate_knotting_probability(n, seed, mode="predicate", workers=1,
                                  chunk_size=CHUNK_SIZE):
    """Estimate the fraction of knotted hexagons from n uniform samples.

    predicate mode counts coordinate tuples passing the closed-form
    test for a right-handed positive-curl trefoil (times 4 for the
    total; no geometry is built). oracle mode builds every hexagon,
    classifies it geometrically, and additionally cross-tabulates the
    predicate against the classification.

    Deterministic for fixed (n, seed, chunk_size) at any worker count.
    """
    if n <= 0:
        raise ValueError("sample count must be positive")
    if mode not in ("predicate", "oracle"):
        raise ValueError(f"unknown mode {mode!r}")
    t0 = time.perf_counter()

    if mode == "predicate":
        tallies = _run_chunks(lambda k, m: _predicate_chunk(seed, k, m),
                              n, workers, chunk_size)
        counts = np.sum(tallies, axis=0)
        hits = {KNOT_CLASS_LABELS[cls]: int(counts[i])
                for i, cls in enumerate(_PREDICATE_ORDER)}
        degenerate = 0
        frac_rp = counts[0] / n
        frac_total = 4.0 * frac_rp
        # variance of 4*p_hat for the single counted class
        se = 4.0 * np.sqrt(frac_rp * (1.0 - frac_rp) / n)
        agreement = None
    else:
        tallies = _run_chunks(lambda k, m: _oracle_chunk(seed, k, m),
                              n, workers, chunk_size)
        class_counts = np.sum([t[0] for t in tallies], axis=0)
        agree = np.sum([t[1] for t in tallies], axis=0)
        hits = {KNOT_CLASS_LABELS[KnotClass(i)]: int(class_counts[i])
                for i in range(6)}
        degenerate = int(class_counts[int(KnotClass.DEGENERATE)])
        valid = n - degenerate
        if valid <= 0:
            raise NoSamplesError("all samples degenerate")
        frac_rp = class_counts[int(KnotClass.TREFOIL_R_PLUS)] / valid
        trefoils = sum(class_counts[int(cls)] for cls in TREFOIL_CLASSES)
        frac_total = trefoils / valid
        se = float(np.sqrt(frac_total * (1.0 - frac_total) / valid))
        pred_total = int(agree[:, 0].sum())
        both = int(agree[:, 1].sum())
        agreement = {
            "per_class": {
                KNOT_CLASS_LABELS[cls]: {
                    "predicate_hits": int(agree[i, 0]),
                    "both": int(agree[i, 1]),
                    "necessity_violations": int(agree[i, 2]),
                    "predicate_only": int(agree[i, 3]),
                }
                for i, cls in enumerate(_PREDICATE_ORDER)
            },
            "necessity_violations": int(agree[:, 2].sum()),
            "predicate_hits": pred_total,
            "agreement_rate": (both / pred_total) if pred_total else 1.0,
        }

    frac_total = float(frac_total)
    se = float(se)
    return EstimationReport(
        samples=n,
        seed=seed,
        mode=mode,
        hits=hits,
        degenerate_count=degenerate,
        fraction_R_plus=float(frac_rp),
        fraction_total=frac_total,
        std_error=se,
        ci95=(frac_total - 1.96 * se, frac_total + 1.96 * se),
        wall_time_seconds=time.perf_counter() - t0,
        workers=workers,
        agreement=agreement,
    )


def repeat_estimates(n, seed, mode="predicate", workers=1, repeats=10,
                     chunk_size=CHUNK_SIZE):
    """Run the estimator `repeats` times with seeds seed..seed+repeats-1.

    Returns (reports, summary) where summary carries the across-run mean
    and standard deviation of the headline fractions.
    """
    reports = [estimate_knotting_probability(n, seed + r, mode=mode,
                                             workers=workers,
                                             chunk_size=chunk_size)
               for r in range(repeats)]
    rp = np.array([r.fraction_R_plus for r in reports])
    tot = np.array([r.fraction_total for r in reports])
    summary = {
        "repeats": repeats,
        "mean_fraction_R_plus": float(rp.mean()),
        "std_fraction_R_plus": float(rp.std(ddof=1)) if repeats > 1 else 0.0,
        "mean_fraction_total": float(tot.mean()),
        "std_fraction_total": float(tot.std(ddof=1)) if repeats > 1 else 0.0,
    }
    return reports, summary


@dataclass
class BoundReport:
    """Numeric comparison of an estimate against the closed-form bound."""

    estimate: float
    ci95: tuple
    upper_bound: float = UPPER_BOUND
    one_over_42: float = ONE_OVER_42
    orderings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["ci95"] = list(self.ci95)
        return out

    def to_json(self, **kwargs) -> str:
        kwargs.setdefault("indent", 2)
        return json.dumps(self.to_dict(), **kwargs)


def compare_bound(report):
    """BoundReport for an EstimationReport.

    Raises NoSamplesError when the report has no usable samples and
    BoundViolatedError when the 95% CI upper edge exceeds the bound
    (the bound is proven, so that signals an implementation bug).
    """
    if report.samples <= 0 or report.samples - report.degenerate_count <= 0:
        raise NoSamplesError("report has no usable samples")
    estimate = report.fraction_total
    ci = tuple(report.ci95)
    if ci[1] > UPPER_BOUND:
        raise BoundViolatedError(
            f"CI upper edge {ci[1]:.6e} exceeds the bound {UPPER_BOUND:.6e}")
    orderings = {
        "estimate_lt_upper_bound": bool(estimate < UPPER_BOUND),
        "estimate_lt_one_over_42": bool(estimate < ONE_OVER_42),
        "upper_bound_lt_one_over_42": bool(UPPER_BOUND < ONE_OVER_42),
    }
    return BoundReport(estimate=estimate, ci95=ci, orderings=orderings)
