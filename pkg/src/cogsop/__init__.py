"""Secrecy outage probability of underlay small-cell transmitter selection
with unreliable wireless backhaul.

The library has three independent routes to the same quantity: exact
analytics (closed form for selection by the legitimate channel, adaptive
quadrature for selection by the instantaneous secrecy rate), high-SNR
asymptotics, and a counter-based Monte Carlo simulator.  The ``cogsop``
command line runs parameter sweeps over any of them.
"""

from .analytic import (SopMethod, SopValue, sop_ots, sop_ots_asymptotic,
                       sop_sts, sop_sts_asymptotic)
from .cli import SweepRow, SweepSpec, compare_report, preset_variants, render_csv, run_sweep
from .montecarlo import RngSpec, SchemeKind, SopEstimate, sample_trial, simulate_sop
from .params import (AsymptoticParams, DerivedParams, SystemConfig, ValidationError,
                     asymptotic_params, derive, xi_asymptotic)
from .quadrature import (IntegrandError, QuadratureError, QuadResult,
                         integrate_double_semi_inf, integrate_semi_inf)
from .specfun import ei_neg, ei_neg_scaled, hyp2f1_n

__version__ = "0.1.0"

__all__ = [
    "AsymptoticParams",
    "DerivedParams",
    "IntegrandError",
    "QuadResult",
    "QuadratureError",
    "RngSpec",
    "SchemeKind",
    "SopEstimate",
    "SopMethod",
    "SopValue",
    "SweepRow",
    "SweepSpec",
    "SystemConfig",
    "ValidationError",
    "__version__",
    "asymptotic_params",
    "compare_report",
    "derive",
    "ei_neg",
    "ei_neg_scaled",
    "hyp2f1_n",
    "integrate_double_semi_inf",
    "integrate_semi_inf",
    "preset_variants",
    "render_csv",
    "run_sweep",
    "sample_trial",
    "simulate_sop",
    "sop_ots",
    "sop_ots_asymptotic",
    "sop_sts",
    "sop_sts_asymptotic",
    "xi_asymptotic",
]
