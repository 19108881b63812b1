"""Configuration validation and derived-parameter algebra."""

import dataclasses
import math

import numpy as np
import pytest

from cogsop import (AsymptoticParams, ValidationError, asymptotic_params, derive,
                    xi_asymptotic)
from conftest import make_config, random_config


def test_reference_config_validates():
    make_config().validate()


@pytest.mark.parametrize("overrides", [
    {"n_transmitters": 0},
    {"n_transmitters": -3},
    {"n_transmitters": 2.0},
    {"n_transmitters": True},
    {"backhaul_prob": -0.1},
    {"backhaul_prob": 1.1},
    {"backhaul_prob": math.nan},
    {"primary_outage_threshold": 0.0},
    {"primary_outage_threshold": 1.0},
    {"primary_rate_threshold": 0.0},
    {"primary_rate_threshold": -1.0},
    {"secrecy_rate_threshold": 0.0},
    {"gamma_t_db": math.inf},
    {"gamma_t_db": math.nan},
    {"mean_power_db": (3.0, -6.0, 3.0)},
    {"mean_power_db": (3.0, -6.0, 3.0, -3.0, 6.0, math.nan)},
])
def test_invalid_config_rejected(overrides):
    with pytest.raises(ValidationError):
        make_config(**overrides).validate()


def test_backhaul_prob_endpoints_allowed():
    make_config(backhaul_prob=0.0).validate()
    make_config(backhaul_prob=1.0).validate()


def test_db_conversion():
    p = derive(make_config(mean_power_db=(0.0, 10.0, -10.0, 3.0, 0.0, 0.0)))
    assert p.lambda_tr == 1.0
    assert p.lambda_td == pytest.approx(0.1, rel=1e-15)
    assert p.lambda_sd == pytest.approx(10.0, rel=1e-15)


def test_reference_derived_values():
    p = derive(make_config())
    assert p.lambda_tr == pytest.approx(0.5011872336272722, rel=1e-15)
    assert p.lambda_td == pytest.approx(3.9810717055349722, rel=1e-15)
    assert p.lambda_sd == pytest.approx(0.5011872336272722, rel=1e-15)
    assert p.lambda_sr == pytest.approx(1.9952623149688795, rel=1e-15)
    assert p.lambda_te == pytest.approx(0.251188643150958, rel=1e-15)
    assert p.lambda_se == pytest.approx(1.9952623149688795, rel=1e-15)
    assert p.gamma_t == pytest.approx(1000.0, rel=1e-15)
    assert p.gamma_0 == pytest.approx(math.sqrt(2.0) - 1.0, rel=1e-15)
    assert p.rho == pytest.approx(math.sqrt(2.0), rel=1e-15)
    assert p.xi == pytest.approx(0.5341100421345258, rel=1e-13)
    assert p.gamma_s == pytest.approx(p.gamma_t * p.lambda_sr * p.xi, rel=1e-15)


def test_shutoff_boundary():
    # with the reference powers and a 10% outage budget the secondary link
    # switches on just below 3 dB transmit SNR
    assert derive(make_config(gamma_t_db=2.0)).xi < 0.0
    assert derive(make_config(gamma_t_db=2.0)).gamma_s == 0.0
    q = derive(make_config(gamma_t_db=4.0))
    assert q.xi == pytest.approx(0.11066538166129992, rel=1e-12)
    assert q.gamma_s > 0.0


def test_xi_asymptotic_value_and_limit():
    cfg = make_config()
    xa = xi_asymptotic(cfg)
    assert xa == pytest.approx(0.5352210379210895, rel=1e-13)
    # the finite-SNR power scale approaches the SNR-free one from below
    xi_120 = derive(make_config(gamma_t_db=120.0)).xi
    assert xi_120 < xa
    assert xi_120 == pytest.approx(xa, rel=1e-11)


def test_xi_asymptotic_positive_for_random_configs():
    rng = np.random.default_rng(20260823)
    for _ in range(100):
        cfg = random_config(rng)
        assert xi_asymptotic(cfg) > 0.0


def test_asymptotic_params_carry_no_snr():
    ap = asymptotic_params(make_config())
    assert not hasattr(ap, "gamma_t")
    names = {f.name for f in dataclasses.fields(AsymptoticParams)}
    assert "gamma_t" not in names
    assert "gamma_s" not in names
    # changing the transmit SNR must not change the asymptotic parameters
    ap2 = asymptotic_params(make_config(gamma_t_db=55.0))
    assert ap == ap2


def test_derive_is_pure():
    cfg = make_config()
    assert derive(cfg) == derive(cfg)
