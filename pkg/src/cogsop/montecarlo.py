"""Event-level Monte Carlo simulation of the secrecy outage process.

The simulator shares nothing with the analytic formulas: it draws the raw
channel gains and backhaul states, applies the selection rule and counts
secrecy outages.

Reproducibility contract: trials are partitioned into fixed-size blocks of
``BLOCK_TRIALS``; block ``j`` is always generated by a Philox counter-based
generator keyed by ``(seed, stream_id)`` with its 256-bit counter started at
``j << 192``.  Within a block the uniform draws are consumed in a fixed
order: backhaul states (block, n_tx), then the two common interference
gains (block,) each, then destination gains (block, n_tx), then
eavesdropper gains (block, n_tx).  Exponentials are inverse-CDF transforms
-log(1-U)/lambda of those uniforms.  Because a block's draws depend only on
(seed, stream_id, block index, trial count), the outage count is identical
for any worker count.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .params import DerivedParams, SystemConfig, ValidationError, derive

BLOCK_TRIALS = 8192

_UINT64_LIMIT = 1 << 64


class SchemeKind(enum.Enum):
    """Selection rule crossed with whether backhaul state is known to it."""

    STS_KNOWN = "sts_known"
    OTS_KNOWN = "ots_known"
    STS_BLIND = "sts_blind"
    OTS_BLIND = "ots_blind"

    @property
    def knows_backhaul(self) -> bool:
        return self in (SchemeKind.STS_KNOWN, SchemeKind.OTS_KNOWN)

    @property
    def selects_by_secrecy_rate(self) -> bool:
        return self in (SchemeKind.OTS_KNOWN, SchemeKind.OTS_BLIND)


@dataclass(frozen=True)
class RngSpec:
    """Seed material; distinct stream_ids give independent substreams."""

    seed: int
    stream_id: int = 0

    def validate(self) -> None:
        if not isinstance(self.seed, int) or not 0 <= self.seed < _UINT64_LIMIT:
            raise ValidationError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not isinstance(self.stream_id, int) or not 0 <= self.stream_id < _UINT64_LIMIT:
            raise ValidationError(
                f"stream_id must be a 64-bit unsigned integer, got {self.stream_id!r}")

    def generator_for_block(self, block_index: int) -> np.random.Generator:
        self.validate()
        key = self.seed + (self.stream_id << 64)
        return np.random.Generator(np.random.Philox(key=key, counter=block_index << 192))


@dataclass(frozen=True)
class SopEstimate:
    """Empirical outage frequency with its binomial standard error."""

    estimate: float
    std_error: float
    trials: int
    outages: int


def _draw_exponential(gen: np.random.Generator, rate: float, shape) -> np.ndarray:
    # inverse-CDF transform keeps the draw count per trial fixed and documented
    u = gen.random(shape)
    return -np.log1p(-u) / rate


def _simulate_block(p: DerivedParams, n_tx: int, s: float, scheme: SchemeKind,
                    gen: np.random.Generator, m: int) -> np.ndarray:
    """Outage indicators for a block of m trials; draw order is part of the
    reproducibility contract (see module docstring)."""
    active = gen.random((m, n_tx)) < s
    h_td = _draw_exponential(gen, p.lambda_td, m)
    h_te = _draw_exponential(gen, p.lambda_te, m)
    h_sd = _draw_exponential(gen, p.lambda_sd, (m, n_tx))
    h_se = _draw_exponential(gen, p.lambda_se, (m, n_tx))

    g_sd = (p.gamma_s / (p.gamma_t * h_td + 1.0))[:, None] * h_sd
    g_se = (p.gamma_s / (p.gamma_t * h_te + 1.0))[:, None] * h_se
    # outage iff (1+g_sd)/(1+g_se) < rho, i.e. secrecy rate below threshold
    ratio = (1.0 + g_sd) / (1.0 + g_se)
    metric = ratio if scheme.selects_by_secrecy_rate else h_sd
    rows = np.arange(m)
    if scheme.knows_backhaul:
        selected = np.argmax(np.where(active, metric, -np.inf), axis=1)
        return ~active.any(axis=1) | (ratio[rows, selected] < p.rho)
    selected = np.argmax(metric, axis=1)
    return ~active[rows, selected] | (ratio[rows, selected] < p.rho)


def sample_trial(p: DerivedParams, config: SystemConfig, scheme: SchemeKind,
                 rng: np.random.Generator) -> bool:
    """Run one trial on the caller's generator; True means secrecy outage.

    When the secondary network is shut off (gamma_s = 0) the outage is
    certain and no draws are consumed.
    """
    if not isinstance(scheme, SchemeKind):
        raise ValidationError(f"scheme must be a SchemeKind, got {scheme!r}")
    if p.gamma_s <= 0.0:
        return True
    out = _simulate_block(p, config.n_transmitters, config.backhaul_prob, scheme, rng, 1)
    return bool(out[0])


def simulate_sop(config: SystemConfig, scheme: SchemeKind, trials: int,
                 seed: int | RngSpec = 0, workers: int = 1) -> SopEstimate:
    """Estimate the secrecy outage probability from ``trials`` trials.

    The result is bit-identical for fixed (config, scheme, trials, seed)
    regardless of ``workers``: blocks are laid out deterministically and the
    outage count is a sum of per-block counts.
    """
    if not isinstance(scheme, SchemeKind):
        raise ValidationError(f"scheme must be a SchemeKind, got {scheme!r}")
    if not isinstance(trials, int) or trials < 1:
        raise ValidationError(f"trials must be an integer >= 1, got {trials!r}")
    if not isinstance(workers, int) or workers < 1:
        raise ValidationError(f"workers must be an integer >= 1, got {workers!r}")
    spec = seed if isinstance(seed, RngSpec) else RngSpec(seed=seed)
    spec.validate()
    p = derive(config)
    if p.gamma_s <= 0.0:
        # secondary silent: outage is certain, no sampling needed
        return SopEstimate(estimate=1.0, std_error=0.0, trials=trials, outages=trials)

    n_blocks = (trials + BLOCK_TRIALS - 1) // BLOCK_TRIALS

    def count_block(block_index: int) -> int:
        size = min(BLOCK_TRIALS, trials - block_index * BLOCK_TRIALS)
        gen = spec.generator_for_block(block_index)
        out = _simulate_block(p, config.n_transmitters, config.backhaul_prob,
                              scheme, gen, size)
        return int(out.sum())

    if workers == 1 or n_blocks == 1:
        outages = sum(count_block(b) for b in range(n_blocks))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outages = sum(pool.map(count_block, range(n_blocks)))

    estimate = outages / trials
    std_error = math.sqrt(estimate * (1.0 - estimate) / trials)
    return SopEstimate(estimate=estimate, std_error=std_error, trials=trials,
                       outages=outages)
