"""Statistical relations for a mono-energetic ideal quantum gas.

All particles share one momentum magnitude p0.  The temperature is tied
to that momentum by k*T = p0**2 / (2*m), which fixes the reduced energy
beta*eps at exactly 1 and collapses the thermal wavelength to
sqrt(4*pi)*hbar/p0.  Momenta are plain numbers in natural units
(hbar = m = k = 1) unless other unit values are supplied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, SingularityError
from .polylog import (
    DEFAULT_SERIES_PARAMS,
    SeriesParams,
    bose_g32,
    fermi_f32_full,
    fermi_f32_truncated,
)

BRANCHES = ("bose", "fermi-full", "fermi-truncated")


def _positive(value: float, name: str) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be a real number, got {value!r}") from exc
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class NaturalUnits:
    """Unit system carried through the dimensional formulas."""

    hbar: float = 1.0
    m: float = 1.0
    k: float = 1.0

    def __post_init__(self):
        _positive(self.hbar, "hbar")
        _positive(self.m, "m")
        _positive(self.k, "k")


DEFAULT_UNITS = NaturalUnits()


@dataclass(frozen=True)
class MonoEnergeticState:
    """Derived thermodynamic quantities for one shared momentum."""

    momentum: float
    temperature: float
    thermal_wavelength: float
    beta_eps: float


@dataclass(frozen=True)
class FugacityPair:
    """Fugacity z together with the reduced fugacity z' and their ratio b = z'/z."""

    z: float
    z_prime: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.z) and self.z >= 0.0):
            raise DomainError(f"z must be nonnegative and finite, got {self.z!r}")
        if not (math.isfinite(self.z_prime) and self.z_prime >= 0.0):
            raise DomainError(f"z_prime must be nonnegative and finite, got {self.z_prime!r}")
        if not (math.isfinite(self.b) and self.b > 0.0):
            raise DomainError(f"b must be positive and finite, got {self.b!r}")
        if self.z > 0.0 and abs(self.z_prime - self.z * self.b) > 1e-12 * max(1.0, self.z_prime):
            raise DomainError(
                f"inconsistent pair: z_prime={self.z_prime!r} != z*b={self.z * self.b!r}"
            )

    @classmethod
    def from_branch(
        cls, z: float, branch: str, params: SeriesParams = DEFAULT_SERIES_PARAMS
    ) -> "FugacityPair":
        """Build the pair by evaluating the branch series at z (z > 0)."""
        if z == 0.0:
            raise DomainError("b is undefined at z = 0 (the z -> 0 limit is 1)")
        z_prime = _branch_series(z, branch, params)
        return cls(z=z, z_prime=z_prime, b=z_prime / z)


@dataclass(frozen=True)
class NormalizationScenario:
    """Particle count, total volume and per-particle volume, kept consistent."""

    total_count: float
    volume: float
    specific_volume: float

    def __post_init__(self):
        _positive(self.total_count, "total_count")
        _positive(self.volume, "volume")
        _positive(self.specific_volume, "specific_volume")
        if abs(self.specific_volume * self.total_count - self.volume) > 1e-12 * self.volume:
            raise DomainError(
                "inconsistent scenario: specific_volume * total_count must equal volume"
            )

    @classmethod
    def from_totals(cls, total_count: float, volume: float) -> "NormalizationScenario":
        total_count = _positive(total_count, "total_count")
        volume = _positive(volume, "volume")
        return cls(total_count=total_count, volume=volume, specific_volume=volume / total_count)


def occupation_bose(z: float, beta_eps: float) -> float:
    """Bose occupation 1 / (exp(beta_eps)/z - 1).

    Requires 0 <= z <= 1 and beta_eps >= 0.  The point z = 1, beta_eps = 0
    is a genuine singularity (macroscopic ground-state occupation) and
    raises rather than returning an infinity.
    """
    if not 0.0 <= z <= 1.0:
        raise DomainError(f"z must lie in [0, 1], got {z!r}")
    if not (math.isfinite(beta_eps) and beta_eps >= 0.0):
        raise DomainError(f"beta_eps must be nonnegative and finite, got {beta_eps!r}")
    if z == 0.0:
        return 0.0
    # 1/(exp(beta_eps)/z - 1) = 1/expm1(beta_eps - ln z); expm1 keeps full
    # precision near the singularity, where 1 - z*exp(-beta_eps) cancels.
    w = beta_eps - math.log(z)
    if w > 700.0:  # expm1 would overflow; occupation is exp(-w) to double precision
        return math.exp(-w)
    denom = math.expm1(w)
    if denom <= 0.0:
        raise SingularityError(
            f"Bose occupation diverges at z={z!r}, beta_eps={beta_eps!r} "
            "(condensation singularity at z=1, beta_eps=0)"
        )
    return 1.0 / denom


def occupation_fermi(z: float, beta_eps: float) -> float:
    """Fermi occupation 1 / (exp(beta_eps)/z + 1), always in [0, 1).

    z may exceed 1 on this branch and beta_eps may be negative.
    """
    if not (math.isfinite(z) and z >= 0.0):
        raise DomainError(f"z must be nonnegative and finite, got {z!r}")
    if not math.isfinite(beta_eps):
        raise DomainError(f"beta_eps must be finite, got {beta_eps!r}")
    if z == 0.0:
        return 0.0
    if beta_eps >= 0.0:
        q = z * math.exp(-beta_eps)
        return q / (1.0 + q)
    r = math.exp(beta_eps) / z  # beta_eps < 0: exp underflows harmlessly
    return 1.0 / (r + 1.0)


def mono_energetic_state(p0: float, units: NaturalUnits = DEFAULT_UNITS) -> MonoEnergeticState:
    """Temperature, thermal wavelength and reduced energy for momentum p0.

    kT = p0**2/(2m) and lambda = sqrt(4*pi)*hbar/p0; beta*eps is exactly 1
    by construction.
    """
    p0 = _positive(p0, "p0")
    temperature = p0 * p0 / (2.0 * units.m * units.k)
    wavelength = math.sqrt(4.0 * math.pi) * units.hbar / p0
    return MonoEnergeticState(
        momentum=p0,
        temperature=temperature,
        thermal_wavelength=wavelength,
        beta_eps=1.0,
    )


def reduced_fugacity(thermal_wavelength: float, specific_volume: float) -> float:
    """Degeneracy ratio z' = lambda**3 / v."""
    thermal_wavelength = _positive(thermal_wavelength, "thermal_wavelength")
    specific_volume = _positive(specific_volume, "specific_volume")
    return thermal_wavelength ** 3 / specific_volume


def _branch_series(z: float, branch: str, params: SeriesParams) -> float:
    if branch == "bose":
        return bose_g32(z, params)
    if branch == "fermi-full":
        return fermi_f32_full(z, params)
    if branch == "fermi-truncated":
        return fermi_f32_truncated(z)
    raise DomainError(f"unknown branch {branch!r}, expected one of {BRANCHES}")


def b_factor(z: float, branch: str = "bose", params: SeriesParams = DEFAULT_SERIES_PARAMS) -> float:
    """Ratio b = z'/z of reduced fugacity to fugacity on the given branch.

    On the Bose branch b runs from 1 (z -> 0) up to ZETA_3_2 at z = 1; on
    the Fermi branches it runs from 1 down to the branch value at z = 1.
    Undefined at z = 0 (the limit is 1 on every branch).
    """
    if z == 0.0:
        raise DomainError("b is undefined at z = 0 (the z -> 0 limit is 1)")
    return _branch_series(z, branch, params) / z


def specific_volume_from_constraint(
    p0: float, z: float, units: NaturalUnits = DEFAULT_UNITS
) -> float:
    """Per-particle volume that normalizes the single-momentum shell.

    Inverts 1 = (4*pi*v*p0**2/hbar**3) * occupation at beta_eps = 1, giving
    v = (e/z - 1) * hbar**3 / (4*pi*p0**2).  Valid for 0 < z < e, where the
    occupation is positive.
    """
    p0 = _positive(p0, "p0")
    z = _positive(z, "z")
    factor = math.e / z - 1.0
    if factor <= 0.0:
        raise DomainError(f"z must be below e for a positive occupation, got {z!r}")
    return factor * units.hbar ** 3 / (4.0 * math.pi * p0 * p0)
