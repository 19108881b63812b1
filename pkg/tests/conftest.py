"""Shared helpers: the reference operating point and seeded random configs."""

from __future__ import annotations

import numpy as np

from cogsop import SystemConfig, derive

# reference setup used throughout: six transmitters, highly reliable
# backhaul, 10% primary outage budget, matched 0.5 bps/Hz thresholds
REFERENCE_KWARGS = dict(
    n_transmitters=6,
    backhaul_prob=0.99,
    primary_outage_threshold=0.1,
    primary_rate_threshold=0.5,
    secrecy_rate_threshold=0.5,
    gamma_t_db=30.0,
    mean_power_db=(3.0, -6.0, 3.0, -3.0, 6.0, -3.0),
)


def make_config(**overrides) -> SystemConfig:
    kwargs = dict(REFERENCE_KWARGS)
    kwargs.update(overrides)
    return SystemConfig(**kwargs)


def random_config(rng: np.random.Generator, require_active: bool = False,
                  n_range: tuple[int, int] = (1, 6)) -> SystemConfig:
    """A valid random configuration; optionally resample until the power
    constraint leaves the secondary transmitters switched on."""
    while True:
        cfg = SystemConfig(
            n_transmitters=int(rng.integers(n_range[0], n_range[1] + 1)),
            backhaul_prob=float(rng.uniform(0.3, 1.0)),
            primary_outage_threshold=float(rng.uniform(0.01, 0.5)),
            primary_rate_threshold=float(rng.uniform(0.1, 2.5)),
            secrecy_rate_threshold=float(rng.uniform(0.1, 2.5)),
            gamma_t_db=float(rng.uniform(-5.0, 45.0)),
            mean_power_db=tuple(float(v) for v in rng.uniform(-8.0, 8.0, size=6)),
        )
        if not require_active or derive(cfg).xi > 0.0:
            return cfg
