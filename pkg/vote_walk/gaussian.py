"""
Standard normal primitives underlying every expectation formula.

All functions take and return plain floats. The distribution function comes
from ``scipy.special.ndtr`` (Cephes erf/erfc rational approximations,
~1e-16 relative accuracy) and its logarithm from ``scipy.special.log_ndtr``,
which stays finite deep in the lower tail. Ratios of the form f(a)/F(a) are
evaluated directly for moderate arguments. Below the far-tail switch only
the excess f(a)/F(a) + a is computed, by continued fraction, so extreme
claim thresholds never produce 0/0 and truncated means keep their
precision relative to the threshold.
"""

from __future__ import annotations

import math

from scipy import special

from .consts import FAR_TAIL_SWITCH, TAIL_FRACTION_TERMS

__all__ = [
    "DomainError",
    "std_pdf",
    "std_cdf",
    "std_sf",
    "log_std_cdf",
    "mills_ratio",
    "truncated_mean_above",
    "truncated_mean_below",
]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of a formula"""
    pass


def _finite(name: str, value: float) -> float:
    try:
        as_float = float(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(as_float):
        raise DomainError(f"{name} must be finite, got {as_float!r}")
    return as_float


def std_pdf(z: float) -> float:
    """Standard normal density f(z)."""
    z = _finite("z", z)
    return _INV_SQRT_2PI * math.exp(-0.5 * z * z)


def std_cdf(z: float) -> float:
    """Standard normal distribution function F(z)."""
    z = _finite("z", z)
    return float(special.ndtr(z))


def std_sf(z: float) -> float:
    """Upper tail 1 - F(z), evaluated as F(-z) to avoid cancellation."""
    z = _finite("z", z)
    return float(special.ndtr(-z))


def log_std_cdf(z: float) -> float:
    """log F(z); finite for every finite z."""
    z = _finite("z", z)
    return float(special.log_ndtr(z))


def _tail_excess(x: float) -> float:
    """
    f(-x)/F(-x) - x for ``x`` beyond the far-tail switch.

    Continued fraction 1/(x + 2/(x + 3/(x + ...))), evaluated from the
    innermost term outwards. Of order 1/x, so it never overflows.
    """
    t = x
    for k in range(TAIL_FRACTION_TERMS, 1, -1):
        t = x + k / t
    return 1.0 / t


def mills_ratio(a: float) -> float:
    """
    Ratio f(a)/F(a) of the standard normal density to its distribution function.

    Below the far-tail switch it is ``-a`` plus a continued-fraction excess,
    which stays finite long after f(a) and F(a) underflow. Grows like ``-a``
    as ``a -> -inf`` and decays to 0 as ``a -> +inf``.
    """
    a = _finite("a", a)
    if a >= FAR_TAIL_SWITCH:
        return std_pdf(a) / float(special.ndtr(a))
    return -a + _tail_excess(-a)


def _check_scale(mean: float, sd: float) -> tuple[float, float]:
    mean = _finite("mean", mean)
    sd = _finite("sd", sd)
    if sd <= 0.0:
        raise DomainError(f"sd must be positive, got {sd!r}")
    return mean, sd


def _threshold(value: float) -> float:
    try:
        as_float = float(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"threshold must be a real number, got {value!r}") from exc
    if math.isnan(as_float):
        raise DomainError("threshold must not be NaN")
    return as_float


def truncated_mean_above(mean: float, sd: float, threshold: float) -> float:
    """
    Mean of N(mean, sd^2) conditioned on exceeding ``threshold``.

    Equals ``mean + sd * f(a) / F(a)`` with ``a = (mean - threshold) / sd``.
    A threshold of ``-inf`` conditions on nothing and returns ``mean``.

    Raises:
        DomainError: If ``sd <= 0``, an argument is not finite, or the
            conditioning event is empty (``threshold == +inf``).
    """
    mean, sd = _check_scale(mean, sd)
    threshold = _threshold(threshold)
    if threshold == -math.inf:
        return mean
    if threshold == math.inf:
        raise DomainError("cannot condition on exceeding +inf")

    a = (mean - threshold) / sd
    if math.isinf(a):
        if a > 0:
            return mean
        raise DomainError("standardized deficit overflows; threshold too far above mean")

    if a < FAR_TAIL_SWITCH:
        # mean + sd * (-a) is the threshold itself; only the excess is added
        result = threshold + sd * _tail_excess(-a)
    else:
        result = mean + sd * mills_ratio(a)
    # rounding in the far tail may land on the threshold itself
    return max(result, math.nextafter(threshold, math.inf))


def truncated_mean_below(mean: float, sd: float, threshold: float) -> float:
    """
    Mean of N(mean, sd^2) conditioned on not exceeding ``threshold``.

    Equals ``mean - sd * f(b) / F(b)`` with ``b = (threshold - mean) / sd``;
    the mirror image of :func:`truncated_mean_above`.
    """
    mean, sd = _check_scale(mean, sd)
    threshold = _threshold(threshold)
    if threshold == math.inf:
        return mean
    if threshold == -math.inf:
        raise DomainError("cannot condition on staying below -inf")

    b = (threshold - mean) / sd
    if math.isinf(b):
        if b > 0:
            return mean
        raise DomainError("standardized excess overflows; threshold too far below mean")

    if b < FAR_TAIL_SWITCH:
        result = threshold - sd * _tail_excess(-b)
    else:
        result = mean - sd * mills_ratio(b)
    return min(result, math.nextafter(threshold, -math.inf))
