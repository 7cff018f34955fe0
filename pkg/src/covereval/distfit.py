"""MLE fitting of ten candidate distribution families and
Kolmogorov-Smirnov goodness-of-fit selection."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy import optimize, stats

from .graph import EmpiricalDistribution

MIN_SAMPLES = 5
BETA_EPS = 1e-9


class FitError(ValueError):
    pass


class Family(str, Enum):
    POWER_LAW = "PL"
    BETA = "BE"
    CAUCHY = "CA"
    EXPONENTIAL = "E"
    GAMMA = "GM"
    LOGISTIC = "LO"
    LOG_NORMAL = "LN"
    NORMAL = "N"
    UNIFORM = "U"
    WEIBULL = "WB"


# Fixed tie-break order: power law first, then the remaining families in
# their canonical report order.
FAMILY_ORDER = (
    Family.POWER_LAW, Family.BETA, Family.CAUCHY, Family.EXPONENTIAL,
    Family.GAMMA, Family.LOGISTIC, Family.LOG_NORMAL, Family.NORMAL,
    Family.UNIFORM, Family.WEIBULL,
)

POSITIVE_SUPPORT = {
    Family.POWER_LAW, Family.LOG_NORMAL, Family.GAMMA,
    Family.WEIBULL, Family.EXPONENTIAL,
}


@dataclass(frozen=True)
class FittedDistribution:
    family: Family
    params: tuple[float, ...]
    ks: float
    n: int
    degenerate: bool = False
    # Beta fits are performed on data rescaled to (0, 1); the transform is
    # carried so the CDF applies to raw values.
    rescale: tuple[float, float] | None = None  # (min, max) of the raw data

    def cdf(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        f = self.family
        p = self.params
        if f is Family.POWER_LAW:
            alpha, xmin = p
            out = np.where(x < xmin, 0.0, 1.0 - (np.maximum(x, xmin) / xmin) ** (1.0 - alpha))
            return out
        if f is Family.BETA:
            a, b = p
            lo, hi = self.rescale
            y = (x - lo + BETA_EPS) / (hi - lo + 2 * BETA_EPS)
            return stats.beta.cdf(np.clip(y, 0.0, 1.0), a, b)
        if f is Family.CAUCHY:
            return stats.cauchy.cdf(x, loc=p[0], scale=p[1])
        if f is Family.EXPONENTIAL:
            return stats.expon.cdf(x, scale=1.0 / p[0])
        if f is Family.GAMMA:
            return stats.gamma.cdf(x, p[0], scale=p[1])
        if f is Family.LOGISTIC:
            return stats.logistic.cdf(x, loc=p[0], scale=p[1])
        if f is Family.LOG_NORMAL:
            return stats.lognorm.cdf(x, p[1], scale=math.exp(p[0]))
        if f is Family.NORMAL:
            return stats.norm.cdf(x, loc=p[0], scale=p[1])
        if f is Family.UNIFORM:
            lo, hi = p
            if hi == lo:
                return (x >= lo).astype(float)
            return np.clip((x - lo) / (hi - lo), 0.0, 1.0)
        if f is Family.WEIBULL:
            return stats.weibull_min.cdf(x, p[0], scale=p[1])
        raise FitError(f"unknown family {f}")

    def cdf_left(self, x: np.ndarray) -> np.ndarray:
        """Left limit of the CDF; differs from cdf() only where the fitted
        distribution has a point mass (degenerate uniform)."""
        if self.family is Family.UNIFORM and self.params[0] == self.params[1]:
            return (np.asarray(x, dtype=float) > self.params[0]).astype(float)
        return self.cdf(x)

    def log_likelihood(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        f = self.family
        p = self.params
        if f is Family.POWER_LAW:
            alpha, xmin = p
            return float(np.sum(np.log((alpha - 1) / xmin) - alpha * np.log(x / xmin)))
        if f is Family.BETA:
            lo, hi = self.rescale
            span = hi - lo + 2 * BETA_EPS
            y = (x - lo + BETA_EPS) / span
            return float(np.sum(stats.beta.logpdf(y, p[0], p[1]) - math.log(span)))
        if f is Family.CAUCHY:
            return float(np.sum(stats.cauchy.logpdf(x, loc=p[0], scale=p[1])))
        if f is Family.EXPONENTIAL:
            return float(np.sum(stats.expon.logpdf(x, scale=1.0 / p[0])))
        if f is Family.GAMMA:
            return float(np.sum(stats.gamma.logpdf(x, p[0], scale=p[1])))
        if f is Family.LOGISTIC:
            return float(np.sum(stats.logistic.logpdf(x, loc=p[0], scale=p[1])))
        if f is Family.LOG_NORMAL:
            return float(np.sum(stats.lognorm.logpdf(x, p[1], scale=math.exp(p[0]))))
        if f is Family.NORMAL:
            return float(np.sum(stats.norm.logpdf(x, loc=p[0], scale=p[1])))
        if f is Family.UNIFORM:
            lo, hi = p
            if hi == lo:
                return math.inf if np.all(x == lo) else -math.inf
            inside = np.all((x >= lo) & (x <= hi))
            return -len(x) * math.log(hi - lo) if inside else -math.inf
        if f is Family.WEIBULL:
            return float(np.sum(stats.weibull_min.logpdf(x, p[0], scale=p[1])))
        raise FitError(f"unknown family {f}")


@dataclass(frozen=True)
class InapplicableFit:
    family: Family
    reason: str


@dataclass(frozen=True)
class FitReport:
    fits: tuple[FittedDistribution | InapplicableFit, ...]
    best: FittedDistribution

    def by_family(self) -> dict[Family, FittedDistribution | InapplicableFit]:
        return {f.family: f for f in self.fits}


def _check_support(family: Family, x: np.ndarray) -> str | None:
    if family in POSITIVE_SUPPORT and x.min() <= 0:
        return "requires strictly positive data"
    if family is Family.POWER_LAW and np.all(x == x.min()):
        return "all samples equal xmin; exponent undefined"
    if family is Family.BETA and x.min() == x.max():
        return "constant data; beta rescaling degenerate"
    return None


def _numeric_mle(family: Family, x: np.ndarray, init: tuple[float, float],
                 positive: tuple[bool, bool]) -> tuple[float, ...]:
    """Maximize the log-likelihood with a derivative-free simplex search;
    positivity-constrained parameters are optimized in log space."""

    def pack(theta):
        return tuple(math.exp(t) if pos else t for t, pos in zip(theta, positive))

    def nll(theta):
        params = pack(theta)
        fd = FittedDistribution(family, params, ks=0.0, n=len(x),
                                rescale=(float(x.min()), float(x.max())))
        ll = fd.log_likelihood(x)
        return math.inf if not math.isfinite(ll) else -ll

    theta0 = [math.log(v) if pos else v for v, pos in zip(init, positive)]
    res = optimize.minimize(nll, theta0, method="Nelder-Mead",
                            options={"xatol": 1e-10, "fatol": 1e-12,
                                     "maxiter": 2000, "maxfev": 4000})
    if not math.isfinite(res.fun):
        raise FitError(f"{family.value}: optimizer failed at {pack(res.x)}")
    return pack(res.x)


def fit_mle(family: Family, data: EmpiricalDistribution) -> FittedDistribution:
    """MLE fit of one family. Closed forms where they exist, otherwise
    moment-matched initialization plus simplex maximization. Raises
    FitError when the family is inapplicable to the data's support."""
    if data.n < MIN_SAMPLES:
        raise FitError(f"need at least {MIN_SAMPLES} samples, got {data.n}")
    x = np.asarray(data.samples, dtype=float)
    reason = _check_support(family, x)
    if reason:
        raise FitError(f"{family.value}: {reason}")
    n = len(x)
    mean = float(x.mean())
    # MLE uses the population variance
    var = float(x.var())
    sd = math.sqrt(var)
    rescale = None
    degenerate = False

    if family is Family.POWER_LAW:
        xmin = float(x.min())
        alpha = 1.0 + n / float(np.sum(np.log(x / xmin)))
        params = (alpha, xmin)
    elif family is Family.NORMAL:
        if sd == 0:
            raise FitError("N: zero variance")
        params = (mean, sd)
    elif family is Family.LOG_NORMAL:
        logs = np.log(x)
        s = float(logs.std())
        if s == 0:
            raise FitError("LN: zero log variance")
        params = (float(logs.mean()), s)
    elif family is Family.EXPONENTIAL:
        params = (1.0 / mean,)
    elif family is Family.UNIFORM:
        lo, hi = float(x.min()), float(x.max())
        params = (lo, hi)
        degenerate = lo == hi
    elif family is Family.GAMMA:
        if sd == 0:
            raise FitError("GM: zero variance")
        shape0 = mean * mean / var
        scale0 = var / mean
        params = _numeric_mle(family, x, (shape0, scale0), (True, True))
    elif family is Family.WEIBULL:
        if sd == 0:
            raise FitError("WB: zero variance")
        # log-moment initialization for the shape, mean-matched scale
        shape0 = max(0.1, 1.2 / max(float(np.log(x).std()), 1e-6))
        scale0 = mean
        params = _numeric_mle(family, x, (shape0, scale0), (True, True))
    elif family is Family.BETA:
        lo, hi = float(x.min()), float(x.max())
        rescale = (lo, hi)
        y = (x - lo + BETA_EPS) / (hi - lo + 2 * BETA_EPS)
        m, v = float(y.mean()), max(float(y.var()), 1e-12)
        common = max(m * (1 - m) / v - 1, 1e-3)
        a0, b0 = max(m * common, 1e-3), max((1 - m) * common, 1e-3)

        def nll(theta):
            a, b = math.exp(theta[0]), math.exp(theta[1])
            ll = float(np.sum(stats.beta.logpdf(np.clip(y, 1e-15, 1 - 1e-15), a, b)))
            return math.inf if not math.isfinite(ll) else -ll

        res = optimize.minimize(nll, [math.log(a0), math.log(b0)], method="Nelder-Mead",
                                options={"xatol": 1e-10, "fatol": 1e-12,
                                         "maxiter": 2000, "maxfev": 4000})
        if not math.isfinite(res.fun):
            raise FitError("BE: optimizer failed")
        params = (math.exp(res.x[0]), math.exp(res.x[1]))
    elif family is Family.CAUCHY:
        q25, q50, q75 = np.percentile(x, [25, 50, 75])
        scale0 = max((q75 - q25) / 2.0, 1e-9)
        params = _numeric_mle(family, x, (float(q50), scale0), (False, True))
    elif family is Family.LOGISTIC:
        if sd == 0:
            raise FitError("LO: zero variance")
        params = _numeric_mle(family, x, (mean, sd * math.sqrt(3) / math.pi),
                              (False, True))
    else:
        raise FitError(f"unknown family {family}")

    params = tuple(float(p) for p in params)
    fit = FittedDistribution(family=family, params=params, ks=0.0, n=n,
                             degenerate=degenerate, rescale=rescale)
    ks = ks_statistic(fit, data)
    return FittedDistribution(family=family, params=params, ks=ks, n=n,
                              degenerate=degenerate, rescale=rescale)


def ks_statistic(fit: FittedDistribution, data: EmpiricalDistribution) -> float:
    """sup_x |ECDF(x) - F(x)| evaluated at both one-sided jumps of every
    distinct sample; ties jump by their multiplicity."""
    x = np.asarray(data.samples, dtype=float)
    n = len(x)
    values, counts = np.unique(x, return_counts=True)
    cum = np.cumsum(counts) / n       # ECDF at each value (right limit)
    prev = np.concatenate(([0.0], cum[:-1]))  # ECDF just below each value
    f = fit.cdf(values)
    f_left = fit.cdf_left(values)
    d = float(np.max(np.maximum(np.abs(cum - f), np.abs(f_left - prev))))
    return min(max(d, 0.0), 1.0)


def best_fit(data: EmpiricalDistribution) -> FitReport:
    """Fit every applicable family; select the minimal KS statistic, ties
    broken by the fixed family order."""
    if data.n < MIN_SAMPLES:
        raise FitError(f"need at least {MIN_SAMPLES} samples, got {data.n}")
    fits: list[FittedDistribution | InapplicableFit] = []
    best: FittedDistribution | None = None
    for family in FAMILY_ORDER:
        try:
            fit = fit_mle(family, data)
        except FitError as exc:
            fits.append(InapplicableFit(family, str(exc)))
            continue
        fits.append(fit)
        if best is None or fit.ks < best.ks:
            best = fit
    if best is None:
        raise FitError("no family applicable to the data")
    return FitReport(fits=tuple(fits), best=best)
