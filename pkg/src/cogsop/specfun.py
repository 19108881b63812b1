"""Exponential-integral and hypergeometric kernels for the outage formulas.

Everything here is scalar double precision.  ``ei_neg`` follows the classic
two-regime scheme: the convergent power series below t = 1 and a Lentz-style
continued fraction above it.  The continued fraction naturally produces the
exponentially scaled value, which is what the outage formulas actually need
once exp(t) would overflow.
"""

from __future__ import annotations

import math

_EULER_GAMMA = 0.57721566490153286060651209008240

# series / closed-form crossover for the hypergeometric sum; below this the
# logarithmic closed form cancels catastrophically
_HYP_SERIES_RADIUS = 0.25
_HYP_CANCEL_FLOOR = 1e-4

_MAX_TERMS = 200000


def ei_neg(t: float) -> float:
    """Exponential integral Ei(-t) for t > 0; always negative."""
    if not t > 0.0:
        raise ValueError(f"ei_neg requires t > 0, got {t!r}")
    if t <= 1.0:
        return _ei_neg_series(t)
    return -math.exp(-t) * _e1_scaled_cf(t)


def ei_neg_scaled(t: float) -> float:
    """exp(t) * Ei(-t) for t > 0; stays representable up to t ~ 1e8."""
    if not t > 0.0:
        raise ValueError(f"ei_neg_scaled requires t > 0, got {t!r}")
    if t <= 1.0:
        return math.exp(t) * _ei_neg_series(t)
    return -_e1_scaled_cf(t)


def _ei_neg_series(t: float) -> float:
    # Ei(-t) = gamma + ln t + sum_{k>=1} (-t)^k / (k k!), fine for t <= 1
    total = _EULER_GAMMA + math.log(t)
    term = 1.0
    for k in range(1, 80):
        term *= -t / k
        contrib = term / k
        total += contrib
        if abs(contrib) <= 1e-18 * abs(total):
            break
    return total


def _e1_scaled_cf(t: float) -> float:
    # exp(t) * E1(t) via the even continued fraction, modified Lentz scheme
    b = t + 1.0
    c = 1e300
    d = 1.0 / b
    h = d
    for i in range(1, 500):
        a = -float(i) * float(i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-15:
            return h
    raise RuntimeError(f"continued fraction for the exponential integral stalled at t={t!r}")


def hyp2f1_n(n: int, z: float) -> float:
    """Gauss hypergeometric 2F1(n+1, 1; n+2; z) for integer n >= 1, z < 1.

    Uses the direct series where it is both convergent and well conditioned,
    otherwise the logarithmic closed form
    (n+1) z^-(n+1) (-ln(1-z) - sum_{m=1..n} z^m / m).
    """
    if n != int(n) or n < 1:
        raise ValueError(f"hyp2f1_n requires an integer n >= 1, got {n!r}")
    n = int(n)
    if not z < 1.0:
        raise ValueError(f"hyp2f1_n requires z < 1, got {z!r}")
    if z == 0.0:
        return 1.0
    if abs(z) >= 1.0:
        return _hyp2f1_log_form(n, z)
    # closed form loses ~|z|^-(n+1) of its digits to cancellation; keep the
    # series whenever that loss would exceed _HYP_CANCEL_FLOOR
    if abs(z) > _HYP_SERIES_RADIUS and abs(z) ** (n + 1) > _HYP_CANCEL_FLOOR:
        return _hyp2f1_log_form(n, z)
    return _hyp2f1_series(n, z)


def _hyp2f1_series(n: int, z: float) -> float:
    # (n+1) sum_{k>=0} z^k / (n+1+k), |z| < 1
    total = 0.0
    zk = 1.0
    for k in range(_MAX_TERMS):
        contrib = zk / (n + 1 + k)
        total += contrib
        if abs(contrib) <= 1e-17 * abs(total):
            return (n + 1) * total
        zk *= z
    raise RuntimeError(f"hypergeometric series failed to converge for n={n}, z={z}")


def _hyp2f1_log_form(n: int, z: float) -> float:
    parts = [-math.log1p(-z)]
    zm = 1.0
    for m in range(1, n + 1):
        zm *= z
        parts.append(-zm / m)
    return (n + 1) * math.fsum(parts) / z ** (n + 1)
