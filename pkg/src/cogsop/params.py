"""System configuration and derived linear-scale parameters.

The network model: a primary transmitter T serves a primary receiver R while
interfering with everyone else; N small-cell transmitters S_1..S_N (fed over
unreliable backhaul links that are each up with probability s) serve a
destination D in underlay mode, overheard by an eavesdropper E.  All channels
are Rayleigh, so channel power gains are exponential with rate
lambda_xy = 1 / (mean power of the x->y link).

The secondary transmit SNR is capped by the interference constraint at R: the
power scale factor ``xi`` below is the largest value keeping the primary
outage probability at exactly its allowed threshold.  When even zero secondary
power cannot satisfy the constraint, ``xi <= 0`` and the secondary network
must stay silent (``gamma_s = 0``), which forces every secrecy outage
probability to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class ValidationError(ValueError):
    """A configuration value violates its documented range."""


def _linear_from_db(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


@dataclass(frozen=True)
class SystemConfig:
    """User-facing parameters; powers and SNR in dB.

    mean_power_db holds the six mean channel power gains in dB, in the fixed
    order: T->R, T->D, S->D, S->R, T->E, S->E.
    """

    n_transmitters: int
    backhaul_prob: float
    primary_outage_threshold: float
    primary_rate_threshold: float
    secrecy_rate_threshold: float
    gamma_t_db: float
    mean_power_db: tuple[float, float, float, float, float, float]

    def validate(self) -> None:
        if (not isinstance(self.n_transmitters, int)
                or isinstance(self.n_transmitters, bool)
                or self.n_transmitters < 1):
            raise ValidationError(
                f"n_transmitters must be an integer >= 1, got {self.n_transmitters!r}")
        if not 0.0 <= self.backhaul_prob <= 1.0:
            raise ValidationError(
                f"backhaul_prob must lie in [0, 1], got {self.backhaul_prob!r}")
        if not 0.0 < self.primary_outage_threshold < 1.0:
            raise ValidationError(
                "primary_outage_threshold must lie strictly in (0, 1), "
                f"got {self.primary_outage_threshold!r}")
        # the power-scale formula divides by 2**beta - 1, so beta = 0 is out
        if not self.primary_rate_threshold > 0.0:
            raise ValidationError(
                f"primary_rate_threshold must be > 0, got {self.primary_rate_threshold!r}")
        if not self.secrecy_rate_threshold > 0.0:
            raise ValidationError(
                f"secrecy_rate_threshold must be > 0, got {self.secrecy_rate_threshold!r}")
        if not math.isfinite(self.gamma_t_db):
            raise ValidationError(f"gamma_t_db must be finite, got {self.gamma_t_db!r}")
        if len(self.mean_power_db) != 6:
            raise ValidationError(
                f"mean_power_db needs exactly 6 entries, got {len(self.mean_power_db)}")
        if not all(math.isfinite(v) for v in self.mean_power_db):
            raise ValidationError(f"mean_power_db entries must be finite: {self.mean_power_db!r}")


@dataclass(frozen=True)
class DerivedParams:
    """Linear-scale quantities every formula consumes.

    lambda_* are exponential channel rates (reciprocal mean powers); gamma_t
    is the primary transmit SNR; gamma_0 and rho are the SNR thresholds
    implied by the primary and secrecy rate targets; xi is the secondary
    power scale allowed by the primary outage constraint and gamma_s the
    resulting secondary transmit SNR (0 when xi <= 0).
    """

    lambda_tr: float
    lambda_td: float
    lambda_sd: float
    lambda_sr: float
    lambda_te: float
    lambda_se: float
    gamma_t: float
    gamma_0: float
    rho: float
    xi: float
    gamma_s: float


@dataclass(frozen=True)
class AsymptoticParams:
    """High-SNR inputs: like DerivedParams but with no transmit SNR at all.

    xi here is the high-SNR limit of the power scale, which depends only on
    the outage threshold and the S->R channel; the asymptotic outage
    formulas are built exclusively from these fields, so their independence
    from gamma_t is structural.
    """

    lambda_tr: float
    lambda_td: float
    lambda_sd: float
    lambda_sr: float
    lambda_te: float
    lambda_se: float
    gamma_0: float
    rho: float
    xi: float


def derive(config: SystemConfig) -> DerivedParams:
    """Validate ``config`` and compute all linear-scale parameters."""
    config.validate()
    ltr, ltd, lsd, lsr, lte, lse = (_linear_from_db(-db) for db in config.mean_power_db)
    gamma_t = _linear_from_db(config.gamma_t_db)
    gamma_0 = 2.0 ** config.primary_rate_threshold - 1.0
    rho = 2.0 ** config.secrecy_rate_threshold
    phi = config.primary_outage_threshold
    xi = (math.exp(-ltr * gamma_0 / gamma_t) / (1.0 - phi) - 1.0) / (ltr * gamma_0)
    gamma_s = gamma_t * lsr * xi if xi > 0.0 else 0.0
    return DerivedParams(
        lambda_tr=ltr, lambda_td=ltd, lambda_sd=lsd,
        lambda_sr=lsr, lambda_te=lte, lambda_se=lse,
        gamma_t=gamma_t, gamma_0=gamma_0, rho=rho, xi=xi, gamma_s=gamma_s,
    )


def xi_asymptotic(config: SystemConfig) -> float:
    """High-SNR limit of the secondary power scale (always > 0)."""
    config.validate()
    ltr = _linear_from_db(-config.mean_power_db[0])
    gamma_0 = 2.0 ** config.primary_rate_threshold - 1.0
    phi = config.primary_outage_threshold
    return phi / ((1.0 - phi) * ltr * gamma_0)


def asymptotic_params(config: SystemConfig) -> AsymptoticParams:
    """Build the gamma_t-free parameter set for the asymptotic formulas."""
    config.validate()
    ltr, ltd, lsd, lsr, lte, lse = (_linear_from_db(-db) for db in config.mean_power_db)
    return AsymptoticParams(
        lambda_tr=ltr, lambda_td=ltd, lambda_sd=lsd,
        lambda_sr=lsr, lambda_te=lte, lambda_se=lse,
        gamma_0=2.0 ** config.primary_rate_threshold - 1.0,
        rho=2.0 ** config.secrecy_rate_threshold,
        xi=xi_asymptotic(config),
    )
