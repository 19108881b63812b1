"""Closed-form, quadrature and asymptotic secrecy outage probabilities.

Two transmitter-selection rules are covered.  Under "sts" the small-cell
transmitter with the strongest channel to the destination is chosen among
those whose backhaul delivered the message; under "ots" the one maximising
the instantaneous secrecy rate is chosen.  The sts outage admits a closed
form in exponential integrals; the ots outage is evaluated by adaptive
double quadrature of its defining integral.  Both selection rules also have
high-SNR asymptotes that no longer depend on the transmit SNR.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from math import comb, factorial

from .params import AsymptoticParams, DerivedParams, ValidationError
from .quadrature import integrate_double_semi_inf
from .specfun import ei_neg_scaled, hyp2f1_n

# alternating binomial sums turn into noise well before this, so refuse
MAX_TRANSMITTERS = 64

# width (relative to the safe scale) of the near-degenerate band where the
# pole-difference kernels switch to their Taylor forms
_DEGENERATE_BAND = 0.02


class SopMethod(enum.Enum):
    EXACT_CLOSED_FORM = "exact_closed_form"
    EXACT_QUADRATURE = "exact_quadrature"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class SopValue:
    """A secrecy outage probability in [0, 1] plus how it was obtained."""

    value: float
    method: SopMethod


def _check_branch_args(n_tx: int, s: float) -> None:
    if not isinstance(n_tx, int) or n_tx < 1:
        raise ValidationError(f"n_tx must be an integer >= 1, got {n_tx!r}")
    if n_tx > MAX_TRANSMITTERS:
        raise ValidationError(
            f"n_tx={n_tx} exceeds {MAX_TRANSMITTERS}; the alternating binomial "
            "sums are numerically meaningless beyond that")
    if not 0.0 <= s <= 1.0:
        raise ValidationError(f"backhaul probability s must lie in [0, 1], got {s!r}")


def _check_x(x: float) -> None:
    if not x >= 0.0:
        raise ValidationError(f"SINR argument must be >= 0, got {x!r}")


def _require_active(p: DerivedParams) -> None:
    if not p.gamma_s > 0.0:
        raise ValidationError(
            "secondary network is shut off (gamma_s = 0); this distribution "
            "is only defined for gamma_s > 0")


def _clamp_prob(v: float) -> float:
    return 0.0 if v < 0.0 else (1.0 if v > 1.0 else v)


def cdf_gamma_tr(x: float, p: DerivedParams) -> float:
    """CDF of the primary receiver's SINR under secondary interference."""
    _check_x(x)
    if p.gamma_s == 0.0:
        return -math.expm1(-p.lambda_tr * x / p.gamma_t)
    kappa = p.lambda_sr * p.gamma_t / (p.lambda_tr * p.gamma_s)
    return 1.0 - kappa / (x + kappa) * math.exp(-p.lambda_tr * x / p.gamma_t)


def cdf_gamma_sd_sts(x: float, p: DerivedParams, n_tx: int, s: float) -> float:
    """CDF of the destination SINR when the strongest-channel active
    transmitter is selected out of n_tx backhaul-gated candidates."""
    _check_x(x)
    _check_branch_args(n_tx, s)
    _require_active(p)
    terms = []
    for n in range(1, n_tx + 1):
        mu = p.lambda_td * p.gamma_s / (n * p.lambda_sd * p.gamma_t)
        terms.append(comb(n_tx, n) * (-1.0) ** (n + 1) * s ** n
                     * mu / (x + mu) * math.exp(-n * p.lambda_sd * x / p.gamma_s))
    return _clamp_prob(1.0 - math.fsum(terms))


def cdf_gamma_se(x: float, p: DerivedParams) -> float:
    """CDF of the eavesdropper's SINR for any single secondary transmitter."""
    _check_x(x)
    _require_active(p)
    nu = p.lambda_te * p.gamma_s / (p.lambda_se * p.gamma_t)
    return 1.0 - nu / (x + nu) * math.exp(-p.lambda_se * x / p.gamma_s)


def pdf_gamma_se(x: float, p: DerivedParams) -> float:
    """Density matching ``cdf_gamma_se``."""
    _check_x(x)
    _require_active(p)
    nu = p.lambda_te * p.gamma_s / (p.lambda_se * p.gamma_t)
    decay = math.exp(-p.lambda_se * x / p.gamma_s)
    return (p.lambda_te / p.gamma_t) * decay / (x + nu) + nu * decay / (x + nu) ** 2


def _g_derivatives(t: float, c: float) -> tuple[float, ...]:
    # derivatives of g(t) = exp(tc) Ei(-tc): g' = c g + 1/t, and each further
    # derivative is c times the previous plus the derivative of the power term
    g0 = ei_neg_scaled(t * c)
    g1 = c * g0 + 1.0 / t
    g2 = c * g1 - 1.0 / t ** 2
    g3 = c * g2 + 2.0 / t ** 3
    g4 = c * g3 - 6.0 / t ** 4
    g5 = c * g4 + 24.0 / t ** 5
    g6 = c * g5 - 120.0 / t ** 6
    return g0, g1, g2, g3, g4, g5, g6


def _exp_pole_kernels(a: float, b: float, c: float) -> tuple[float, float]:
    """(I1, I2) = integrals of e^{-cx}/((x+a)(x+b)) and e^{-cx}/((x+a)(x+b)^2).

    Both are expressed through g(t) = e^{tc} Ei(-tc); when a and b nearly
    coincide the difference quotients cancel, so inside a band scaled to the
    local curvature the Taylor expansion of g around the midpoint is used
    instead.
    """
    h = a - b
    band = _DEGENERATE_BAND * min(1.0 / c, a, b)
    if abs(h) < band:
        m = 0.5 * (a + b)
        _, g1, g2, g3, g4, g5, g6 = _g_derivatives(m, c)
        i1 = g1 + g3 * h * h / 24.0 + g5 * h ** 4 / 1920.0
        i2 = (-0.5 * g2 + g3 * h / 12.0 - g4 * h * h / 48.0
              + g5 * h ** 3 / 480.0 - g6 * h ** 4 / 3840.0)
        return i1, i2
    ga = ei_neg_scaled(a * c)
    gb = ei_neg_scaled(b * c)
    i1 = (ga - gb) / h
    i2 = (gb - ga) / (h * h) + (c * gb + 1.0 / b) / h
    return i1, i2


def sop_sts(p: DerivedParams, n_tx: int, s: float) -> SopValue:
    """Exact secrecy outage probability under strongest-channel selection."""
    _check_branch_args(n_tx, s)
    if p.gamma_s <= 0.0:
        return SopValue(1.0, SopMethod.EXACT_CLOSED_FORM)
    gs, gt, rho = p.gamma_s, p.gamma_t, p.rho
    b = p.lambda_te * gs / (p.lambda_se * gt)
    terms = []
    for n in range(1, n_tx + 1):
        a = ((p.lambda_td * gs + n * p.lambda_sd * gt * (rho - 1.0))
             / (n * rho * p.lambda_sd * gt))
        c = (n * rho * p.lambda_sd + p.lambda_se) / gs
        i1, i2 = _exp_pole_kernels(a, b, c)
        coeff = p.lambda_te * p.lambda_td * gs / (n * rho * p.lambda_sd * gt * gt)
        terms.append(comb(n_tx, n) * (-1.0) ** (n + 1) * coeff * s ** n
                     * math.exp(-n * p.lambda_sd * (rho - 1.0) / gs)
                     * (i1 + gs / p.lambda_se * i2))
    return SopValue(_clamp_prob(1.0 - math.fsum(terms)), SopMethod.EXACT_CLOSED_FORM)


def sop_ots(p: DerivedParams, n_tx: int, s: float, rel_tol: float = 1e-8) -> SopValue:
    """Exact secrecy outage probability under best-secrecy-rate selection,
    by adaptive double quadrature of the defining integral."""
    _check_branch_args(n_tx, s)
    if p.gamma_s <= 0.0:
        return SopValue(1.0, SopMethod.EXACT_QUADRATURE)
    lsd, lse = p.lambda_sd, p.lambda_se
    ltd, lte = p.lambda_td, p.lambda_te
    gs, gt, rho = p.gamma_s, p.gamma_t, p.rho

    def integrand(x: float, y: float) -> float:
        vd = gt * x + 1.0
        ve = gt * y + 1.0
        bracket = 1.0 - (s * lse * ve / (rho * lsd * vd + lse * ve)
                         * math.exp(-lsd * (rho - 1.0) * vd / gs))
        return bracket ** n_tx * ltd * math.exp(-ltd * x) * lte * math.exp(-lte * y)

    res = integrate_double_semi_inf(integrand, rel_tol=rel_tol)
    return SopValue(_clamp_prob(res.value), SopMethod.EXACT_QUADRATURE)


def _inverse_cubic_pole_kernel(a: float, b: float) -> float:
    """Integral of 1/((x+a)(x+b)^2) over [0, inf), stable for any a, b > 0."""
    u = (a - b) / b
    if abs(u) < 0.5:
        # [u - ln(1+u)] / u^2 = sum_{k>=0} (-u)^k / (k+2)
        total = 0.0
        pw = 1.0
        for k in range(200):
            contrib = pw / (k + 2)
            total += contrib
            if abs(contrib) <= 1e-17 * abs(total):
                break
            pw *= -u
        return total / (b * b)
    return (u - math.log1p(u)) / (u * u * b * b)


def sop_sts_asymptotic(ap: AsymptoticParams, n_tx: int, s: float) -> SopValue:
    """High-SNR floor of the strongest-channel-selection outage."""
    _check_branch_args(n_tx, s)
    if ap.xi <= 0.0:
        return SopValue(1.0, SopMethod.ASYMPTOTIC)
    xi, rho = ap.xi, ap.rho
    b = ap.lambda_te * ap.lambda_sr * xi / ap.lambda_se
    coeff_base = (ap.lambda_te * ap.lambda_td * ap.lambda_sr ** 2 * xi * xi
                  / (rho * ap.lambda_sd * ap.lambda_se))
    terms = []
    for n in range(1, n_tx + 1):
        a = ((n * (rho - 1.0) * ap.lambda_sd + ap.lambda_sr * ap.lambda_td * xi)
             / (n * rho * ap.lambda_sd))
        terms.append(comb(n_tx, n) * (-1.0) ** (n + 1) * (coeff_base / n) * s ** n
                     * _inverse_cubic_pole_kernel(a, b))
    return SopValue(_clamp_prob(1.0 - math.fsum(terms)), SopMethod.ASYMPTOTIC)


def sop_ots_asymptotic(ap: AsymptoticParams, n_tx: int, s: float) -> SopValue:
    """High-SNR floor of the best-secrecy-rate-selection outage."""
    _check_branch_args(n_tx, s)
    if ap.xi <= 0.0:
        return SopValue(1.0, SopMethod.ASYMPTOTIC)
    xi, rho = ap.xi, ap.rho
    lte, ltd = ap.lambda_te, ap.lambda_td
    b = ap.lambda_se / (rho * ap.lambda_sd)
    terms = []
    for n in range(1, n_tx + 1):
        a = ltd + n * ap.lambda_sd * (rho - 1.0) / (xi * ap.lambda_sr)
        z = 1.0 - a * b / lte
        parts = []
        for k in range(1, n):
            parts.append(factorial(k - 1) * factorial(n - k) * (-a) ** (n - k - 1)
                         / (b ** k * lte ** (n - k + 1)))
        parts.append((-a) ** (n - 1) * factorial(n) / ((n + 1) * lte ** (n + 1))
                     * hyp2f1_n(n, z))
        terms.append(comb(n_tx, n) * (-1.0) ** (n + 1) * s ** n * b ** n
                     * ltd * lte / factorial(n - 1) * math.fsum(parts))
    return SopValue(_clamp_prob(1.0 - math.fsum(terms)), SopMethod.ASYMPTOTIC)
