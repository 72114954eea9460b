"""The offspring family mu(i) = a b^i (i+1)^(i-1) / i!, its generating series and
the random-walk laws built from it.

F(z) = sum_k (k+1)^(k-1) z^k / k! converges on [0, 1/e]. With the tree function
T(z) = z e^T(z) (T = -W0(-z)) one has F = e^T, G(z) = z F'/F = T / (1 - T) and the
variance of mu at parameter b equals T / (1 - T)^3.
"""
import math
from typing import Tuple, Union

import numpy as np
from scipy.special import gammaln, lambertw

from shared.types import ConvergenceError, OffspringParams, RangeError, SeriesEval
from shared.utils.logger import get_logger

logger = get_logger(__name__)

INV_E = math.exp(-1.0)
TAIL_TOLERANCE = 1e-14
MAX_SERIES_TERMS = 200_000
BISECTION_LOW = 1e-15
BISECTION_HIGH = INV_E - 1e-15
BISECTION_MAX_ITERATIONS = 200

ArrayLike = Union[int, np.ndarray]


def _log_coefficients(k: np.ndarray) -> np.ndarray:
    """log of (k+1)^(k-1) / k!."""
    return (k - 1) * np.log(k + 1.0) - gammaln(k + 1.0)


def _series_tail_bounds(r: float, terms: int) -> Tuple[float, float, float]:
    """Bounds on the omitted tails of F, z F' and z^2 F'' after ``terms`` terms.

    Stirling gives (k+1)^(k-1)/k! <= e^(k+1) / (sqrt(2 pi) (k+1)^(3/2)), so with
    r = e z the k-th terms of F, zF', z^2F'' are at most e/sqrt(2 pi) r^k times
    (k+1)^(-3/2), (k+1)^(-1/2) and (k+1)^(1/2) respectively. The first two tails are
    geometric; the third uses the ratio bound rho = r sqrt((N+2)/(N+1)) < 1.
    """
    c = math.e / math.sqrt(2.0 * math.pi)
    first = terms + 1
    geometric = r**first / (1.0 - r)
    tail_f = c * geometric * (first + 1) ** -1.5
    tail_f1 = c * geometric * (first + 1) ** -0.5
    rho = r * math.sqrt((first + 2) / (first + 1))
    tail_f2 = math.inf if rho >= 1.0 else c * (first + 1) ** 0.5 * r**first / (1.0 - rho)
    return tail_f, tail_f1, tail_f2


def _eval_series(z: float, max_terms: int) -> SeriesEval:
    r = math.e * z
    terms = 64
    while True:
        tails = _series_tail_bounds(r, terms)
        k = np.arange(terms + 1, dtype=float)
        if z == 0.0:
            weights = np.zeros(terms + 1)
            weights[0] = 1.0
        else:
            weights = np.exp(_log_coefficients(k) + k * math.log(z))
        value = float(weights.sum())
        zf1 = float((k * weights).sum())
        z2f2 = float((k * (k - 1) * weights).sum())
        worst = max(tails[0] / value, tails[1] / max(zf1, 1e-300), tails[2] / max(z2f2, 1e-300))
        if z == 0.0 or worst <= TAIL_TOLERANCE:
            break
        if terms >= max_terms:
            raise ConvergenceError("series tail above tolerance", residual=worst, iterations=terms)
        terms = min(terms * 2, max_terms)
    if z == 0.0:
        return SeriesEval(z=0.0, value=1.0, first=1.0, second=3.0, tail_bound=0.0, terms=1, method="series")
    return SeriesEval(
        z=z,
        value=value,
        first=zf1 / z,
        second=z2f2 / (z * z),
        tail_bound=tails[0],
        terms=terms,
        method="series",
    )


def tree_function(z: float) -> float:
    """T(z) solving T = z e^T on [0, 1/e], the principal branch."""
    if z == 0.0:
        return 0.0
    return float(-lambertw(-z, 0).real)


def _eval_lambert(z: float) -> SeriesEval:
    T = tree_function(z)
    F = math.exp(T)
    G = T / (1.0 - T)
    V = T / (1.0 - T) ** 3
    return SeriesEval(
        z=z,
        value=F,
        first=F * G / z,
        second=F * (G * G + V - G) / (z * z),
        tail_bound=0.0,
        terms=0,
        method="lambert",
    )


def eval_F(z: float, method: str = "auto") -> SeriesEval:
    """F, F', F'' at z in [0, 1/e).

    ``auto`` uses the truncated series while its certified tail stays below 1e-14
    relative within ``MAX_SERIES_TERMS`` terms and the tree-function closed form
    beyond (close to 1/e the series needs ~ 1/(1 - e z) terms).
    """
    if not 0.0 <= z < INV_E:
        raise RangeError(f"z={z} outside [0, 1/e)")
    if method == "lambert":
        if z == 0.0:
            return _eval_series(0.0, 1)
        return _eval_lambert(z)
    if method == "series":
        return _eval_series(z, MAX_SERIES_TERMS)
    r = math.e * z
    # expected number of terms for the geometric tail to fall below the tolerance
    needed = 64 if r < 0.5 else math.log(TAIL_TOLERANCE) / math.log(r)
    if needed > MAX_SERIES_TERMS / 2:
        return _eval_lambert(z)
    return _eval_series(z, MAX_SERIES_TERMS)


def mean_at(z: float) -> float:
    """G(z) = z F'(z) / F(z)."""
    return eval_F(z).mean


def _mean_slope(z: float) -> float:
    """G'(z) = T / (z (1 - T)^3)."""
    T = tree_function(z)
    return T / (z * (1.0 - T) ** 3)


def solve_params(m: float) -> OffspringParams:
    """Solve G(b) = m by bisection on (1e-15, 1/e - 1e-15), then a = 1/F(b).

    The residual must be below max(1e-10, 16 ulp(b) G'(b)): near 1/e, G is so steep
    that one unit in the last place of b already moves G by more than 1e-10.
    """
    if not m > 0:
        raise RangeError(f"target mean must be positive, got {m}")
    lo, hi = BISECTION_LOW, BISECTION_HIGH
    iterations = 0
    while iterations < BISECTION_MAX_ITERATIONS:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if mean_at(mid) < m:
            lo = mid
        else:
            hi = mid
        iterations += 1
    b = lo if abs(mean_at(lo) - m) <= abs(mean_at(hi) - m) else hi
    ev = eval_F(b)
    residual = abs(ev.mean - m)
    tolerance = max(1e-10, 16.0 * float(np.spacing(b)) * _mean_slope(b))
    if residual > tolerance:
        raise ConvergenceError(f"bisection for mean {m} did not converge", residual, iterations)
    variance = b * b * ev.second / ev.value + m - m * m
    logger.debug("solve_params", m=m, b=b, iterations=iterations, residual=residual, method=ev.method)
    return OffspringParams(a=1.0 / ev.value, b=b, m=m, variance=variance)


def params_closed_form(m: float) -> OffspringParams:
    """Same parameters from T = m / (1 + m): b = T e^-T, a = e^-T."""
    T = m / (1.0 + m)
    return OffspringParams(
        a=math.exp(-T), b=T * math.exp(-T), m=m, variance=T / (1.0 - T) ** 3
    )


def params_for(n: int, K: int) -> Tuple[OffspringParams, OffspringParams]:
    """Black and white laws with means (K+1)/(n-K) and (n-K)/(K+1)."""
    if not 1 <= K <= n - 1:
        raise RangeError(f"K={K} outside [1, {n - 1}]")
    return solve_params((K + 1) / (n - K)), solve_params((n - K) / (K + 1))


def log_pmf_mu(i: ArrayLike, params: OffspringParams) -> np.ndarray:
    i = np.asarray(i, dtype=float)
    return params.log_a + i * params.log_b + _log_coefficients(i)


def pmf_mu(i: ArrayLike, params: OffspringParams) -> Union[float, np.ndarray]:
    out = np.where(np.asarray(i) >= 0, np.exp(log_pmf_mu(np.maximum(i, 0), params)), 0.0)
    return float(out) if np.ndim(out) == 0 else out


def pmf_mu_tilde(i: ArrayLike, params: OffspringParams) -> Union[float, np.ndarray]:
    """The root law mu~(i) = mu(i-1) for i >= 1; mu~(0) = 0."""
    i = np.asarray(i)
    out = np.where(i >= 1, np.exp(log_pmf_mu(np.maximum(i - 1, 0), params)), 0.0)
    return float(out) if np.ndim(out) == 0 else out


def log_walk_pmf(N: int, k: ArrayLike, params: OffspringParams) -> np.ndarray:
    """log P(S_N = k) for the sum of N i.i.d. mu variables.

    Closed form a^N b^k N (N+k)^(k-1) / k!, checked against direct convolution.
    """
    k = np.asarray(k, dtype=float)
    if N == 0:
        return np.where(k == 0, 0.0, -np.inf)
    valid = k >= 0
    kk = np.where(valid, k, 0.0)
    out = (
        N * params.log_a
        + kk * params.log_b
        + math.log(N)
        + (kk - 1) * np.log(N + kk)
        - gammaln(kk + 1)
    )
    return np.where(valid, out, -np.inf)


def walk_pmf(N: int, k: ArrayLike, params: OffspringParams) -> Union[float, np.ndarray]:
    out = np.exp(log_walk_pmf(N, k, params))
    return float(out) if np.ndim(out) == 0 else out


def walk_pmf_by_convolution(N: int, k_max: int, params: OffspringParams) -> np.ndarray:
    """P(S_N = k) for k = 0..k_max by repeated convolution of mu."""
    mu = pmf_mu(np.arange(k_max + 1), params)
    out = np.zeros(k_max + 1)
    out[0] = 1.0
    for _ in range(N):
        out = np.convolve(out, mu)[: k_max + 1]
    return out


def log_borel_pmf(i: ArrayLike) -> np.ndarray:
    i = np.asarray(i, dtype=float)
    if np.any(i < 1):
        raise RangeError("the Borel law lives on i >= 1")
    return (i - 2) * np.log(i) - gammaln(i) - i


def borel_pmf(i: ArrayLike) -> Union[float, np.ndarray]:
    """i^(i-2) e^(-i) / (i-1)!, the limit law of the first transposition's gap."""
    out = np.exp(log_borel_pmf(i))
    return float(out) if np.ndim(out) == 0 else out
