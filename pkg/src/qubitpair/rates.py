"""Bath spectra and the Lindblad coefficients of the two-qubit master equation.

Each reservoir enters only through its spectral density sampled at the two
Bohr frequencies of the dressed pair, plus its temperature.  Decay and
excitation rates are tied by the Kubo-Martin-Schwinger relation
gamma_bar = exp(-omega/T) * gamma (k_B = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# exp(-x) underflows to a denormal/zero around x ~ 745; cut cleanly before.
_EXP_CUTOFF = 700.0


@dataclass(frozen=True)
class BathSpectrum:
    """Spectral density of one reservoir sampled at the two Bohr frequencies.

    A flat spectrum is expressed by making both rate samples equal.
    Temperatures are in the same energy unit as frequencies (k_B = 1).
    """

    gamma_at_omega_low: float
    gamma_at_omega_high: float
    temperature: float

    def __post_init__(self):
        for name in ("gamma_at_omega_low", "gamma_at_omega_high", "temperature"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            if value < 0:
                raise ValueError(f"{name} must be >= 0, got {value}")

    @classmethod
    def flat(cls, gamma, temperature=0.0):
        return cls(gamma, gamma, temperature)


@dataclass(frozen=True)
class LindbladRates:
    """The eight scalar coefficients of the dissipator.

    c_low and c_high are the decay rates of the omega_low (b->a, d->c) and
    omega_high (c->a, d->b) transitions; cbar_* are the matching thermal
    excitation rates.  The cross coefficients couple the two coherence
    pairs (rho_ab, rho_cd) and (rho_ac, rho_bd) and may be negative.
    """

    c_low: float
    c_high: float
    c_cross_low: float
    c_cross_high: float
    cbar_low: float
    cbar_high: float
    cbar_cross_low: float
    cbar_cross_high: float

    def __post_init__(self):
        for name in ("c_low", "c_high", "cbar_low", "cbar_high"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")
        for name, total in (("c_cross_low", self.c_low),
                            ("c_cross_high", self.c_high),
                            ("cbar_cross_low", self.cbar_low),
                            ("cbar_cross_high", self.cbar_high)):
            value = getattr(self, name)
            # Each cross term is a difference of the two summands whose sum
            # is the matching rate, so it can never exceed it.
            if not math.isfinite(value) or abs(value) > total + 1e-12 * (total + 1.0):
                raise ValueError(f"|{name}| must not exceed {total!r}, got {value!r}")

    def all_rates(self):
        return (self.c_low, self.c_high, self.c_cross_low, self.c_cross_high,
                self.cbar_low, self.cbar_high,
                self.cbar_cross_low, self.cbar_cross_high)


def kms_rate(gamma: float, omega: float, temperature: float) -> float:
    """Thermal excitation rate exp(-omega/T) * gamma; exactly 0 at T = 0.

    Also returns exactly 0 once omega/T exceeds the exp underflow cutoff.
    """
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    if omega <= 0:
        raise ValueError("omega must be > 0")
    if temperature < 0:
        raise ValueError("temperature must be >= 0")
    if temperature == 0.0:
        return 0.0
    x = omega / temperature
    if x > _EXP_CUTOFF:
        return 0.0
    return math.exp(-x) * gamma


def lindblad_rates(basis, bath1: BathSpectrum, bath2: BathSpectrum) -> LindbladRates:
    """Evaluate the eight dissipator coefficients for a dressed basis.

    The four trigonometric weights are the squared matrix elements of
    sigma_x^(1,2) between dressed states, so e.g. c_low is

        gamma1(omega_low) * (cos(tI/2)cos(tII/2) + sin(tI/2)sin(tII/2))^2
      + gamma2(omega_low) * (cos(tI/2)sin(tII/2) + sin(tI/2)cos(tII/2))^2

    and the cross coefficients are the same two summands with a relative
    minus sign (for the omega_high channel the sign sits on the qubit-1
    summand).  The barred set repeats the formulas with each gamma mapped
    through kms_rate at that bath's temperature.
    """
    ci, si = math.cos(0.5 * basis.theta_even), math.sin(0.5 * basis.theta_even)
    cii, sii = math.cos(0.5 * basis.theta_odd), math.sin(0.5 * basis.theta_odd)

    # |<a|sx1|b>|^2 = |<c|sx1|d>|^2 etc.; the four distinct weights.
    w1_low = (ci * cii + si * sii) ** 2
    w2_low = (ci * sii + si * cii) ** 2
    w1_high = (ci * sii - si * cii) ** 2
    w2_high = (ci * cii - si * sii) ** 2

    g1_low = bath1.gamma_at_omega_low
    g1_high = bath1.gamma_at_omega_high
    g2_low = bath2.gamma_at_omega_low
    g2_high = bath2.gamma_at_omega_high

    g1_low_bar = kms_rate(g1_low, basis.omega_low, bath1.temperature)
    g1_high_bar = kms_rate(g1_high, basis.omega_high, bath1.temperature)
    g2_low_bar = kms_rate(g2_low, basis.omega_low, bath2.temperature)
    g2_high_bar = kms_rate(g2_high, basis.omega_high, bath2.temperature)

    return LindbladRates(
        c_low=g1_low * w1_low + g2_low * w2_low,
        c_high=g1_high * w1_high + g2_high * w2_high,
        c_cross_low=g1_low * w1_low - g2_low * w2_low,
        c_cross_high=-g1_high * w1_high + g2_high * w2_high,
        cbar_low=g1_low_bar * w1_low + g2_low_bar * w2_low,
        cbar_high=g1_high_bar * w1_high + g2_high_bar * w2_high,
        cbar_cross_low=g1_low_bar * w1_low - g2_low_bar * w2_low,
        cbar_cross_high=-g1_high_bar * w1_high + g2_high_bar * w2_high,
    )
