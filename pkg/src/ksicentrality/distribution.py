"""Ksi histograms, log-space fits and the exponential-ksi / bell-shaped classifier."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.stats import skew

from .centrality import ksi_all
from .graph import Graph, atomic_write_text

DEFAULT_BINS = 50

# Classification thresholds. The shape test is an operational rule, not a
# statistical test; change these in one place.
EXP_MIN_R2 = 0.90
EXP_MIN_SKEW = 0.8
EXP_MODE_MAX_FRACTION = 0.25
BELL_MAX_ABS_SKEW = 0.5
BELL_MODE_MARGIN = 0.10
MIN_BINS_USED = 4

EXPONENTIAL = "exponential_ksi"
BELL = "bell_shaped"
DEGENERATE = "degenerate"
AMBIGUOUS = "ambiguous"


class DegenerateFitError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Histogram:
    """Bin edges (length B + 1) and per-bin counts.

    Counts are integers for binned data but may be real for synthetic profiles.
    """

    edges: np.ndarray
    counts: np.ndarray

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def total(self):
        return self.counts.sum()

    def to_csv(self) -> str:
        rows = ["bin_left,bin_right,count"]
        rows += [
            f"{a:.10g},{b:.10g},{c:.10g}" for a, b, c in zip(self.edges[:-1], self.edges[1:], self.counts)
        ]
        return "\n".join(rows) + "\n"


def histogram(values, bins: int = DEFAULT_BINS) -> Histogram:
    """Uniform bins over ``[min, max]``; bins are right-open except the last.

    A constant input (spread within 1e-9 relative) gets unit-width bins centered
    on the value so the edges stay strictly increasing; all mass lands in one bin.
    """
    x = np.asarray(values, dtype=np.float64).ravel()
    if x.size == 0:
        raise ValueError("histogram of an empty sample")
    if bins < 1:
        raise ValueError("bins must be >= 1")
    if not np.all(np.isfinite(x)):
        raise ValueError("histogram input must be finite")
    lo, hi = float(x.min()), float(x.max())
    if hi - lo <= 1e-9 * max(1.0, abs(hi)):
        mid = 0.5 * (lo + hi)
        lo, hi = mid - 0.5, mid + 0.5
    counts, edges = np.histogram(x, bins=bins, range=(lo, hi))
    return Histogram(edges, counts.astype(np.int64))


def histogram_from_csv(text: str) -> Histogram:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[0].replace(" ", "") != "bin_left,bin_right,count":
        raise ValueError("expected header bin_left,bin_right,count")
    rows = np.array([[float(t) for t in ln.split(",")] for ln in lines[1:]])
    if rows.size == 0:
        raise ValueError("histogram CSV has no rows")
    edges = np.append(rows[:, 0], rows[-1, 1])
    counts = rows[:, 2]
    if np.all(counts == np.rint(counts)):
        counts = counts.astype(np.int64)
    return Histogram(edges, counts)


def _nonzero(h: Histogram, skip_bins: int = 0):
    x = h.centers[skip_bins:]
    c = h.counts[skip_bins:].astype(np.float64)
    keep = c > 0
    return x[keep], np.log(c[keep])


def _lstsq(x, y, degree):
    # Polynomial.fit solves OLS on a scaled domain; convert() maps back
    p = np.polynomial.Polynomial.fit(x, y, degree)
    resid = y - p(x)
    rmse = float(np.sqrt(np.mean(resid**2)))
    coef = np.zeros(degree + 1)
    c = p.convert().coef
    coef[: len(c)] = c
    return coef[::-1], rmse, resid


def fit_exponential(h: Histogram, skip_bins: int = 0) -> tuple[float, float, float]:
    """OLS line through ``(center, ln count)`` over nonzero bins.

    Returns ``(slope, intercept, rmse)`` with the RMSE of the log residuals.
    """
    x, y = _nonzero(h, skip_bins)
    if len(x) < 2:
        raise DegenerateFitError(f"exponential fit needs >= 2 nonzero bins, got {len(x)}")
    (slope, intercept), rmse, _ = _lstsq(x, y, 1)
    return float(slope), float(intercept), rmse


def exp_r_squared(h: Histogram, skip_bins: int = 0) -> float:
    x, y = _nonzero(h, skip_bins)
    if len(x) < 2:
        raise DegenerateFitError("R^2 needs >= 2 nonzero bins")
    _, _, resid = _lstsq(x, y, 1)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return 1.0
    return 1.0 - float(np.sum(resid**2)) / ss_tot


def fit_gaussian_log(h: Histogram, skip_bins: int = 0) -> tuple[np.ndarray, float]:
    """Quadratic ``ln count = a x^2 + b x + c`` over nonzero bins; returns ``((a, b, c), rmse)``."""
    x, y = _nonzero(h, skip_bins)
    if len(x) < 3:
        raise DegenerateFitError(f"Gaussian log fit needs >= 3 nonzero bins, got {len(x)}")
    coeffs, rmse, _ = _lstsq(x, y, 2)
    return coeffs, rmse


def histogram_skewness(h: Histogram) -> float:
    """Skewness of the binned sample, each count placed at its bin center."""
    w = h.counts.astype(np.float64)
    x = h.centers
    mu = np.average(x, weights=w)
    var = np.average((x - mu) ** 2, weights=w)
    if var == 0.0:
        return 0.0
    return float(np.average((x - mu) ** 3, weights=w) / var**1.5)


def sample_skewness(values) -> float:
    x = np.asarray(values, dtype=np.float64)
    if x.size < 2 or np.ptp(x) == 0.0:
        return 0.0
    return float(skew(x, bias=True))


def mode_position(h: Histogram) -> float:
    """Fractional position of the fullest bin's center within the histogram range."""
    b = int(np.argmax(h.counts))
    span = h.edges[-1] - h.edges[0]
    return float((h.centers[b] - h.edges[0]) / span)


def classify(bins_used: int, r2: float | None, skewness: float, mode_pos: float) -> str:
    if bins_used < MIN_BINS_USED:
        return DEGENERATE
    if (
        r2 is not None
        and r2 >= EXP_MIN_R2
        and skewness >= EXP_MIN_SKEW
        and mode_pos <= EXP_MODE_MAX_FRACTION
    ):
        return EXPONENTIAL
    if -BELL_MAX_ABS_SKEW < skewness < BELL_MAX_ABS_SKEW and BELL_MODE_MARGIN <= mode_pos <= 1 - BELL_MODE_MARGIN:
        return BELL
    return AMBIGUOUS


@dataclass
class FitReport:
    exp_slope: float | None
    exp_intercept: float | None
    exp_rmse: float | None
    exp_r2: float | None
    gauss_coeffs: list | None
    gauss_rmse: float | None
    skewness: float
    mode_position: float
    bins_used: int
    bins: int
    skip_bins: int
    verdict: str
    note: str = field(
        default="verdict is an operational rule over R^2, skewness and mode position, not a hypothesis test"
    )

    def to_dict(self) -> dict:
        return {k: _json_safe(v) for k, v in asdict(self).items()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def write_json(self, path) -> None:
        atomic_write_text(path, self.to_json())


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, list):
        return [_json_safe(x) for x in v]
    return v


def fit_report(h: Histogram, skewness: float | None = None, skip_bins: int = 0) -> FitReport:
    """Run both fits and the classifier on a histogram.

    ``skewness`` should be the skewness of the raw values when they are
    available; otherwise it is estimated from the binned counts.
    """
    if skewness is None:
        skewness = histogram_skewness(h)
    bins_used = int(np.count_nonzero(h.counts[skip_bins:]))
    slope = intercept = e_rmse = r2 = g_rmse = None
    g_coeffs = None
    try:
        slope, intercept, e_rmse = fit_exponential(h, skip_bins)
        r2 = exp_r_squared(h, skip_bins)
    except DegenerateFitError:
        pass
    try:
        coeffs, g_rmse = fit_gaussian_log(h, skip_bins)
        g_coeffs = [float(c) for c in coeffs]
    except DegenerateFitError:
        pass
    mpos = mode_position(h)
    return FitReport(
        exp_slope=slope,
        exp_intercept=intercept,
        exp_rmse=e_rmse,
        exp_r2=r2,
        gauss_coeffs=g_coeffs,
        gauss_rmse=g_rmse,
        skewness=float(skewness),
        mode_position=mpos,
        bins_used=bins_used,
        bins=len(h.counts),
        skip_bins=skip_bins,
        verdict=classify(bins_used, r2, skewness, mpos),
    )


def analyze_values(values, bins: int = DEFAULT_BINS, skip_bins: int = 0) -> tuple[Histogram, FitReport]:
    h = histogram(values, bins)
    return h, fit_report(h, sample_skewness(values), skip_bins)


def analyze_graph(g: Graph, bins: int = DEFAULT_BINS, skip_bins: int = 0, threads=None):
    return analyze_values(ksi_all(g, threads).ksi, bins, skip_bins)


def log_fit_deviation(g: Graph, bins: int = DEFAULT_BINS, skip_bins: int = 0) -> float:
    """RMSE of the exponential log-space fit to the ksi histogram of ``g``."""
    h = histogram(ksi_all(g).ksi, bins)
    return fit_exponential(h, skip_bins)[2]
