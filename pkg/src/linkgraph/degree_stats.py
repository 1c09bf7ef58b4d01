"""Degree distributions, exact moments, and discrete power-law fits.

Histograms are stored sparsely (distinct degree values with counts), so
heavy-tailed samples with huge maxima stay cheap. Moments use exact
integer sums; the tail exponent is fit by maximum likelihood on the
truncated discrete zeta model with a bisection search on the score
function, following the standard discrete-MLE recipe, and goodness is
summarized by a Kolmogorov-Smirnov distance against the fitted model.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect
from scipy.special import zeta as _hurwitz_zeta

from .errors import (
    FitConvergenceError,
    PowerLawFitError,
    UndefinedStatisticError,
)
from .graph import DirectedGraph, undirected_view

# Fixed plausibility threshold for the KS goodness flag.
KS_PLAUSIBLE_THRESHOLD = 0.05

_GAMMA_LO = 1.0 + 1e-4
_GAMMA_HI = 50.0
_GAMMA_XTOL = 1e-6
_DIFF_STEP = 1e-5


class Direction(enum.Enum):
    IN = "in"
    OUT = "out"
    RECIPROCAL = "reciprocal"
    UNDIRECTED = "undirected"


@dataclass(frozen=True)
class DegreeHistogram:
    """Sparse exact histogram: distinct degrees (ascending) and counts.

    Degree-zero nodes are included; probabilities sum to 1 over the
    node population.
    """

    direction: Direction
    degrees: np.ndarray
    counts: np.ndarray
    total_nodes: int

    @classmethod
    def from_values(cls, values: np.ndarray, direction: Direction) -> "DegreeHistogram":
        values = np.asarray(values, dtype=np.int64)
        degs, counts = np.unique(values, return_counts=True)
        return cls(direction, degs, counts.astype(np.int64), int(len(values)))

    @classmethod
    def from_mapping(cls, mapping: dict, direction: Direction) -> "DegreeHistogram":
        degs = np.array(sorted(mapping), dtype=np.int64)
        counts = np.array([mapping[int(d)] for d in degs], dtype=np.int64)
        return cls(direction, degs, counts, int(counts.sum()))

    @property
    def probabilities(self) -> np.ndarray:
        return self.counts / self.total_nodes

    @property
    def max_degree(self) -> int:
        return int(self.degrees[-1]) if len(self.degrees) else 0

    def count_at(self, degree: int) -> int:
        i = np.searchsorted(self.degrees, degree)
        if i < len(self.degrees) and self.degrees[i] == degree:
            return int(self.counts[i])
        return 0


@dataclass(frozen=True)
class CumulativeCurve:
    """Upper-cumulative distribution P_c(k) = P(degree >= k).

    ``suffix_counts[i]`` is the exact integer number of nodes with
    degree >= degrees[i]; differencing suffix counts reproduces the
    histogram counts exactly, which keeps the histogram/cumulative
    duality free of rounding.
    """

    degrees: np.ndarray
    suffix_counts: np.ndarray
    total_nodes: int

    @property
    def pc(self) -> np.ndarray:
        return self.suffix_counts / self.total_nodes

    def at(self, degree) -> np.ndarray:
        """P_c evaluated at arbitrary integer degree(s)."""
        k = np.asarray(degree)
        idx = np.searchsorted(self.degrees, k, side="left")
        ext = np.concatenate([self.suffix_counts, [0]])
        out = ext[idx] / self.total_nodes
        return float(out) if np.isscalar(degree) else out


def degree_histogram(g: DirectedGraph, direction: Direction) -> DegreeHistogram:
    """Histogram of in-, out-, undirected, or reciprocal degrees."""
    if direction is Direction.IN:
        return DegreeHistogram.from_values(g.in_degrees, direction)
    if direction is Direction.OUT:
        return DegreeHistogram.from_values(g.out_degrees, direction)
    if direction is Direction.UNDIRECTED:
        return DegreeHistogram.from_values(undirected_view(g).degrees, direction)
    if direction is Direction.RECIPROCAL:
        from .reciprocity import decompose  # local import avoids a module cycle

        return DegreeHistogram.from_values(decompose(g).q_r, direction)
    raise ValueError(f"unknown direction {direction!r}")


def cumulative(h: DegreeHistogram) -> CumulativeCurve:
    if h.total_nodes == 0:
        raise UndefinedStatisticError("cumulative curve of an empty histogram")
    suffix = np.cumsum(h.counts[::-1])[::-1]
    return CumulativeCurve(h.degrees.copy(), suffix, h.total_nodes)


@dataclass(frozen=True)
class DegreeSummary:
    """First moments plus the heterogeneity ratio.

    ``kappa`` is <k^2>/<k>; it is ``None`` (with ``note`` set) when the
    degree sequence is all-zero, where the ratio has no value.
    """

    mean: float
    max_degree: int
    std: float
    kappa: float | None
    total_nodes: int
    note: str | None = None


def _moment_sums(h: DegreeHistogram) -> tuple[int, int]:
    """Exact integer (sum k*c, sum k^2*c) using Python arbitrary precision."""
    s1 = 0
    s2 = 0
    for d, c in zip(h.degrees.tolist(), h.counts.tolist()):
        s1 += d * c
        s2 += d * d * c
    return s1, s2


def summarize(h: DegreeHistogram) -> DegreeSummary:
    if h.total_nodes == 0:
        raise UndefinedStatisticError("summary of an empty histogram")
    n = h.total_nodes
    s1, s2 = _moment_sums(h)
    mean = s1 / n
    var = s2 / n - mean * mean
    std = math.sqrt(max(var, 0.0))
    if s1 == 0:
        return DegreeSummary(
            mean, h.max_degree, std, None, n, note="all degrees zero; kappa undefined"
        )
    kappa = s2 / s1
    return DegreeSummary(mean, h.max_degree, std, kappa, n)


def _exact_product_sum(a: np.ndarray, b: np.ndarray) -> int:
    """Exact sum(a*b) for int64 arrays, falling back to Python ints when
    the int64 accumulator could overflow."""
    if len(a) == 0:
        return 0
    bound = int(np.abs(a).max()) * int(np.abs(b).max()) * len(a)
    if bound < 2**62:
        return int(np.sum(a * b, dtype=np.int64))
    return sum(int(x) * int(y) for x, y in zip(a.tolist(), b.tolist()) if x and y)


def crossed_heterogeneity(g: DirectedGraph) -> float:
    """Mixed second-moment ratio sum(k_in*k_out) / sum(k_in) across nodes."""
    kin = np.asarray(g.in_degrees, dtype=np.int64)
    kout = np.asarray(g.out_degrees, dtype=np.int64)
    denom = int(kin.sum())
    if denom == 0:
        raise UndefinedStatisticError("crossed heterogeneity of an edgeless graph")
    return _exact_product_sum(kin, kout) / denom


# -- truncated discrete power-law model --------------------------------


def _zeta_range(gamma: float, lo: int, hi: int | None):
    """sum_{k=lo..hi} k^-gamma; hi=None means an unbounded tail."""
    if hi is None:
        return _hurwitz_zeta(gamma, lo)
    return _hurwitz_zeta(gamma, lo) - _hurwitz_zeta(gamma, hi + 1)


def _log_norm(gamma: float, lo: int, hi: int | None) -> float:
    z = _zeta_range(gamma, lo, hi)
    if not np.all(np.isfinite(z)) or np.any(z <= 0):
        raise FitConvergenceError(f"degenerate normalization at gamma={gamma}")
    return float(np.log(z))


@dataclass(frozen=True)
class PowerLawFit:
    """Result of a truncated discrete power-law fit.

    ``gamma`` maximizes the truncated zeta likelihood on degrees in
    [k_min, k_max_fit]; ``stderr`` comes from the observed Fisher
    information; ``ks`` is the KS distance between the empirical and
    fitted tail CDFs and drives the fixed-threshold plausibility flag.
    """

    gamma: float
    stderr: float
    k_min: int
    k_max_fit: int | None
    n_tail: int
    ks: float
    powerlaw_plausible: bool

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "stderr": self.stderr,
            "k_min": self.k_min,
            "k_max_fit": self.k_max_fit,
            "n_tail": self.n_tail,
            "ks": self.ks,
            "powerlaw_plausible": self.powerlaw_plausible,
        }


def mle_powerlaw(
    h: DegreeHistogram, k_min: int = 1, k_max_fit: int | None = None
) -> PowerLawFit:
    """Maximum-likelihood exponent of the truncated discrete zeta model.

    Degree zero never participates; the histogram is restricted to
    [k_min, k_max_fit] (unbounded above when k_max_fit is None). The
    score function is solved by bisection to high precision and the
    standard error uses the observed Fisher information at the optimum.
    """
    if k_min < 1:
        raise PowerLawFitError("k_min must be >= 1")
    if k_max_fit is not None and k_max_fit < k_min:
        raise PowerLawFitError("empty fit range: k_max_fit < k_min")

    mask = h.degrees >= k_min
    if k_max_fit is not None:
        mask &= h.degrees <= k_max_fit
    degs = h.degrees[mask].astype(np.float64)
    counts = h.counts[mask].astype(np.float64)
    n_tail = int(counts.sum())
    if n_tail == 0:
        raise PowerLawFitError("no observations in the fit range")
    if len(degs) < 2:
        raise PowerLawFitError(
            "degenerate support: need at least two distinct degrees in range"
        )

    sum_log = float(np.dot(counts, np.log(degs)))

    def dlog_z(gamma: float) -> float:
        return (
            _log_norm(gamma + _DIFF_STEP, k_min, k_max_fit)
            - _log_norm(gamma - _DIFF_STEP, k_min, k_max_fit)
        ) / (2 * _DIFF_STEP)

    def score(gamma: float) -> float:
        return -sum_log - n_tail * dlog_z(gamma)

    s_lo = score(_GAMMA_LO)
    s_hi = score(_GAMMA_HI)
    if s_lo <= 0:
        raise PowerLawFitError(
            "tail heavier than exponent 1; no interior likelihood maximum"
        )
    if s_hi >= 0:
        raise FitConvergenceError(
            f"score does not change sign below gamma={_GAMMA_HI}"
        )
    gamma = float(bisect(score, _GAMMA_LO, _GAMMA_HI, xtol=_GAMMA_XTOL, maxiter=200))

    # observed Fisher information: n * d^2/dgamma^2 log Z
    h2 = 1e-4
    d2 = (
        _log_norm(gamma + h2, k_min, k_max_fit)
        - 2 * _log_norm(gamma, k_min, k_max_fit)
        + _log_norm(gamma - h2, k_min, k_max_fit)
    ) / (h2 * h2)
    if d2 <= 0:
        raise FitConvergenceError("non-positive curvature at the fitted exponent")
    stderr = 1.0 / math.sqrt(n_tail * d2)

    ks = _ks_distance(degs, counts, n_tail, gamma, k_min, k_max_fit)
    return PowerLawFit(
        gamma=gamma,
        stderr=stderr,
        k_min=int(k_min),
        k_max_fit=None if k_max_fit is None else int(k_max_fit),
        n_tail=n_tail,
        ks=ks,
        powerlaw_plausible=bool(ks <= KS_PLAUSIBLE_THRESHOLD),
    )


def _ks_distance(
    degs: np.ndarray,
    counts: np.ndarray,
    n_tail: int,
    gamma: float,
    k_min: int,
    k_max_fit: int | None,
) -> float:
    z_total = _zeta_range(gamma, k_min, k_max_fit)
    # model CDF at each observed degree k: P(K <= k)
    upper = _hurwitz_zeta(gamma, degs + 1.0)
    if k_max_fit is not None:
        upper = upper - _hurwitz_zeta(gamma, k_max_fit + 1.0)
        upper = np.maximum(upper, 0.0)
    model_cdf = 1.0 - upper / z_total
    emp_cdf = np.cumsum(counts) / n_tail
    return float(np.max(np.abs(emp_cdf - model_cdf)))


def select_fit_range(
    h: DegreeHistogram,
    min_tail: int = 50,
    min_distinct: int = 10,
    max_candidates: int = 120,
) -> tuple[int, int]:
    """Pick the fit window by scanning lower cutoffs for minimal KS.

    Candidate ``k_min`` values are the distinct positive degrees that
    leave enough distinct values and tail mass above them; the winner
    minimizes the KS distance of its own fit (smallest k_min on ties).
    The upper bound is the maximum observed degree.
    """
    positive = h.degrees[h.degrees >= 1]
    if len(positive) < 2:
        raise PowerLawFitError("need at least two distinct positive degrees")
    k_max = int(h.degrees[-1])

    counts_pos = h.counts[h.degrees >= 1]
    tail_from = np.cumsum(counts_pos[::-1])[::-1]
    distinct_from = np.arange(len(positive), 0, -1)
    ok = (tail_from >= min_tail) & (distinct_from >= min_distinct)
    candidates = positive[ok]
    if len(candidates) == 0:
        # fall back to whatever lower cutoffs keep two distinct values
        candidates = positive[distinct_from >= 2]
    if len(candidates) == 0:
        raise PowerLawFitError("no viable lower cutoff for fitting")
    if len(candidates) > max_candidates:
        idx = np.unique(
            np.linspace(0, len(candidates) - 1, max_candidates).astype(np.int64)
        )
        candidates = candidates[idx]

    best = None
    for km in candidates.tolist():
        try:
            fit = mle_powerlaw(h, k_min=int(km))
        except PowerLawFitError:
            continue
        if best is None or fit.ks < best[0] - 1e-15:
            best = (fit.ks, int(km))
    if best is None:
        raise PowerLawFitError("no candidate cutoff produced a valid fit")
    return best[1], k_max


# -- sampling from the discrete model -----------------------------------

_TABLE_SPAN = 1_000_000


def sample_zeta(
    gamma: float,
    size: int,
    rng: np.random.Generator,
    k_min: int = 1,
    cutoff: int | None = None,
) -> np.ndarray:
    """Draw integers from the (possibly truncated) discrete zeta law.

    Inverse-CDF sampling against an exact probability table; for an
    unbounded tail, the rare draws beyond the table are resolved
    exactly with a doubling-then-bisection search on the survival
    function.
    """
    if gamma <= 1.0:
        raise ValueError("zeta law requires gamma > 1")
    if k_min < 1:
        raise ValueError("k_min must be >= 1")
    if cutoff is not None:
        if cutoff < k_min:
            raise ValueError("cutoff below k_min")
        ks = np.arange(k_min, cutoff + 1, dtype=np.float64)
        weights = ks**-gamma
        cum = np.cumsum(weights)
        cum /= cum[-1]
        u = rng.random(size)
        return k_min + np.searchsorted(cum, u, side="right").astype(np.int64)

    z_total = _hurwitz_zeta(gamma, k_min)
    span = _TABLE_SPAN
    ks = np.arange(k_min, k_min + span, dtype=np.float64)
    cum = np.cumsum(ks**-gamma) / z_total
    body_top = cum[-1]
    u = rng.random(size)
    out = np.empty(size, dtype=np.int64)
    body = u < body_top
    out[body] = k_min + np.searchsorted(cum, u[body], side="right")
    tail_idx = np.flatnonzero(~body)
    for i in tail_idx.tolist():
        out[i] = _tail_quantile(gamma, k_min, z_total, u[i])
    return out


def _tail_quantile(gamma: float, k_min: int, z_total: float, u: float) -> int:
    """Smallest k with P(K >= k+1) <= 1-u, via doubling then bisection."""
    target = 1.0 - u

    def surv(k: int) -> float:  # P(K >= k)
        return _hurwitz_zeta(gamma, k) / z_total

    lo = k_min + _TABLE_SPAN
    if surv(lo) <= target:
        return lo - 1
    hi = lo * 2
    while surv(hi) > target:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if surv(mid) > target:
            lo = mid
        else:
            hi = mid
    # surv(lo) > target >= surv(lo+1) -> value lo
    return lo
