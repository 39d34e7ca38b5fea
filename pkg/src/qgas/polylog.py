"""Order-3/2 polylogarithm series for ideal quantum gas statistics.

Three evaluations of the same family are provided:

* :func:`bose_g32` sums ``sum_{k>=1} z**k / k**1.5`` (all terms positive),
* :func:`fermi_f32_full` sums the alternating counterpart
  ``sum_{k>=1} (-1)**(k+1) z**k / k**1.5``,
* :func:`fermi_f32_truncated` evaluates only the first three terms of the
  alternating series, which is a common closed-form shorthand for the
  Fermi branch.

:func:`bose_g32_quadrature` evaluates the Bose function through its
integral representation instead of the series.  It exists as an
independent cross-check route and deliberately shares no code with the
series path.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, QuadratureError, TruncationError

# Value of the Bose series at z = 1 (Riemann zeta at 3/2), the supremum of
# bose_g32 on [0, 1].
ZETA_3_2 = 2.612375348685488

# Value of the full alternating series at z = 1 (Dirichlet eta at 3/2).
ETA_3_2 = 0.7651470246254079

_GAMMA_3_2 = math.sqrt(math.pi) / 2.0

# Above this fugacity the terms decay too slowly to pass below a tight
# tolerance within any reasonable term cap, so summation runs to the cap
# and an integral estimate of the remaining tail is added instead.
_SLOW_DECAY_Z = 0.999

# Below this fugacity the geometric decay makes the post-stop tail smaller
# than the tolerance on its own; no tail estimate is needed (or accurate).
_TAIL_Z = 0.25


@dataclass(frozen=True)
class SeriesParams:
    """Truncation controls shared by the two series evaluators.

    Summation stops once the current term drops below ``tolerance``;
    ``max_terms`` caps the number of summed terms.
    """

    tolerance: float = 1e-12
    max_terms: int = 100_000

    def __post_init__(self):
        if not (isinstance(self.tolerance, float) and math.isfinite(self.tolerance) and self.tolerance > 0):
            raise DomainError(f"tolerance must be a positive finite float, got {self.tolerance!r}")
        if not (isinstance(self.max_terms, int) and self.max_terms >= 1):
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms!r}")


DEFAULT_SERIES_PARAMS = SeriesParams()

# Shared term tables: _K_TABLE[i] = i + 1, _INV_K32[i] = (i + 1)**-1.5.
# Grown on demand; replacement is atomic so concurrent readers are safe.
_table_lock = threading.Lock()
_K_TABLE = np.arange(1.0, 257.0)
_INV_K32 = _K_TABLE ** -1.5


def _grow_tables(n: int) -> None:
    global _K_TABLE, _INV_K32
    if _K_TABLE.size >= n:
        return
    with _table_lock:
        if _K_TABLE.size >= n:
            return
        size = max(n, 2 * _K_TABLE.size)
        ks = np.arange(1.0, size + 1.0)
        inv = ks ** -1.5
        _K_TABLE, _INV_K32 = ks, inv


def _slice_sum(terms: np.ndarray, k_start: int, alternating: bool) -> float:
    if not alternating:
        return float(terms.sum())
    odd = terms[0::2].sum()  # k = k_start, k_start + 2, ...
    even = terms[1::2].sum()
    return float(odd - even) if k_start % 2 == 1 else float(even - odd)


def _tail_estimate(z: float, eps: float, m: int, alternating: bool) -> float:
    """Estimate of the series remainder from term index ``m`` onward.

    For the alternating series this is the two-term Euler summation of the
    tail.  For the positive series it is the midpoint-rule integral of
    ``z**x * x**-1.5`` from ``m - 1/2`` to infinity, which has the closed
    form below in terms of erfc.  Both are accurate when the terms vary
    slowly (z near 1), which is exactly when the remainder matters.
    """
    phi = z ** m * m ** -1.5
    if alternating:
        sign = 1.0 if m % 2 == 1 else -1.0
        return sign * phi * (0.5 + 0.25 * (eps + 1.5 / m))
    if phi == 0.0:
        return 0.0
    a = m - 0.5
    s = eps * a
    return 2.0 * math.exp(-s) / math.sqrt(a) - 2.0 * math.sqrt(math.pi * eps) * math.erfc(math.sqrt(s))


@lru_cache(maxsize=8192)
def _sum_series(z: float, alternating: bool, tolerance: float, max_terms: int) -> float:
    if z == 0.0:
        return 0.0
    eps = 0.0 if z == 1.0 else -math.log(z)

    if z == 1.0:
        # Terms are k**-1.5 exactly; the first index below tolerance is known
        # in closed form, so skip the chunked scan.
        m = max_terms + 1
        cap = tolerance ** (-2.0 / 3.0)
        if cap < max_terms:
            k = max(int(cap) - 2, 1)
            while k ** -1.5 >= tolerance:
                k += 1
            m = k
        _grow_tables(m - 1)
        partial = _slice_sum(_INV_K32[: m - 1], 1, alternating)
        return partial + _tail_estimate(z, eps, m, alternating)

    partial = 0.0
    k_start = 1
    chunk = 256
    last_term = math.nan
    while k_start <= max_terms:
        k_end = min(k_start + chunk - 1, max_terms)
        _grow_tables(k_end)
        ks = _K_TABLE[k_start - 1 : k_end]
        terms = np.power(z, ks) * _INV_K32[k_start - 1 : k_end]
        below = terms < tolerance
        if below.any():
            i = int(np.argmax(below))
            partial += _slice_sum(terms[:i], k_start, alternating)
            m = k_start + i  # first term not added
            if z >= _TAIL_Z:
                partial += _tail_estimate(z, eps, m, alternating)
            return partial
        partial += _slice_sum(terms, k_start, alternating)
        last_term = float(terms[-1])
        k_start = k_end + 1
        chunk = min(chunk * 2, 65536)

    if z > _SLOW_DECAY_Z:
        return partial + _tail_estimate(z, eps, max_terms + 1, alternating)
    raise TruncationError(
        f"series did not converge within {max_terms} terms at z={z!r} "
        f"(partial sum {partial!r}, last term {last_term!r})",
        partial_sum=partial,
        last_term=last_term,
    )


def _checked_z(z: float, name: str = "z") -> float:
    try:
        z = float(z)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be a real number, got {z!r}") from exc
    if not 0.0 <= z <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {z!r}")
    return z


def bose_g32(z: float, params: SeriesParams = DEFAULT_SERIES_PARAMS) -> float:
    """Bose order-3/2 polylogarithm ``sum_{k>=1} z**k / k**1.5``.

    Parameters
    ----------
    z : float
        Fugacity in [0, 1].
    params : SeriesParams
        Truncation controls.  Terms are summed until one drops below
        ``params.tolerance`` or ``params.max_terms`` is reached.

    Returns
    -------
    float
        Value in [0, ZETA_3_2]; monotone nondecreasing in z.

    Raises
    ------
    DomainError
        If z is outside [0, 1].
    TruncationError
        If the term cap is reached with terms still at or above tolerance
        and z is not in the slow-decay region near 1 (there, a midpoint
        integral estimate of the tail is added instead of failing).
    """
    z = _checked_z(z)
    return _sum_series(z, False, params.tolerance, params.max_terms)


def fermi_f32_full(z: float, params: SeriesParams = DEFAULT_SERIES_PARAMS) -> float:
    """Full alternating order-3/2 series ``sum_{k>=1} (-1)**(k+1) z**k / k**1.5``.

    Same truncation contract as :func:`bose_g32`.  Because the series
    alternates, the partial-sum error is bounded by the first omitted
    term, so the result is within ``params.tolerance`` of the limit
    whenever summation stops by the term rule.
    """
    z = _checked_z(z)
    return _sum_series(z, True, params.tolerance, params.max_terms)


def fermi_f32_truncated(z: float) -> float:
    """Three-term shorthand ``z - z**2/2**1.5 + z**3/3**1.5``.

    Exact arithmetic, no truncation parameters.  Differs from
    :func:`fermi_f32_full` by at most ``z**4 / 8``.
    """
    z = _checked_z(z)
    return z - z * z * 0.5 ** 1.5 + z * z * z * 3.0 ** -1.5


def bose_g32_quadrature(z: float) -> float:
    """Bose order-3/2 function via its integral representation.

    Evaluates ``(1/Gamma(3/2)) * integral_0^inf sqrt(x) / (exp(x)/z - 1) dx``
    by adaptive quadrature.  The substitution ``x = t**2`` on [0, 1] turns
    the would-be ``1/sqrt(x)`` endpoint singularity at z = 1 into a smooth
    integrand, so the whole fugacity range [0, 1] is handled without a
    cutoff.  Independent of the series path by construction; intended as a
    cross-check oracle rather than a fast evaluator.

    Raises
    ------
    DomainError
        If z is outside [0, 1].
    QuadratureError
        If the quadrature reports trouble or its own error estimate
        exceeds 1e-9 in units of the returned value.
    """
    z = _checked_z(z)
    if z == 0.0:
        return 0.0

    def low(t: float) -> float:  # x = t**2, x in [0, 1]
        if t == 0.0:
            return 2.0 if z == 1.0 else 0.0
        denom = (1.0 - z) - z * math.expm1(-t * t)
        return 2.0 * t * t * z * math.exp(-t * t) / denom

    def high(x: float) -> float:  # x in [1, inf)
        q = z * math.exp(-x)
        return math.sqrt(x) * q / (1.0 - q)

    res_low = quad(low, 0.0, 1.0, epsabs=1e-13, epsrel=1e-13, limit=200, full_output=1)
    res_high = quad(high, 1.0, np.inf, epsabs=1e-13, epsrel=1e-13, limit=200, full_output=1)
    for res in (res_low, res_high):
        if len(res) > 3:
            raise QuadratureError(f"quadrature failed at z={z!r}: {res[3]}")
    err = (res_low[1] + res_high[1]) / _GAMMA_3_2
    if err > 1e-9:
        raise QuadratureError(f"quadrature error estimate {err!r} exceeds 1e-9 at z={z!r}")
    return (res_low[0] + res_high[0]) / _GAMMA_3_2


def clear_series_cache() -> None:
    """Drop memoized series sums (used by benchmarks to measure cold calls)."""
    _sum_series.cache_clear()
