"""Sweep setup, CSV rendering and command-line behaviour."""

import dataclasses
import math

import pytest

from cogsop import SchemeKind, SweepSpec, ValidationError, compare_report, run_sweep
from cogsop.cli import (CSV_HEADER, main, parse_config_file, preset_variants,
                        render_csv)
from cogsop.quadrature import QuadratureError
from conftest import make_config


def _spec(**overrides) -> SweepSpec:
    kwargs = dict(
        axis="gamma_t_db",
        axis_values=(10.0, 20.0, 30.0),
        fixed=make_config(),
        schemes=(SchemeKind.STS_KNOWN, SchemeKind.STS_BLIND),
        methods=("analytic", "mc"),
        trials=2000,
        seed=1,
        workers=1,
    )
    kwargs.update(overrides)
    return SweepSpec(**kwargs)


@pytest.mark.parametrize("overrides", [
    {"axis": "bandwidth"},
    {"axis_values": ()},
    {"axis_values": (10.0, 10.0)},
    {"axis_values": (30.0, 10.0)},
    {"schemes": ()},
    {"schemes": ("sts_known",)},
    {"methods": ()},
    {"methods": ("analytic", "exact")},
    {"trials": 0},
    {"trials": 1.5},
    {"workers": 0},
    {"rel_tol": 0.0},
    # a blind scheme with only deterministic methods has nothing to run
    {"schemes": (SchemeKind.STS_BLIND,), "methods": ("analytic",)},
])
def test_sweep_spec_rejects(overrides):
    with pytest.raises(ValidationError):
        _spec(**overrides).validate()


def test_sweep_spec_accepts_blind_with_mc():
    _spec(schemes=(SchemeKind.STS_BLIND,), methods=("analytic", "mc")).validate()


def test_run_sweep_row_order_and_skipping():
    rows = run_sweep(_spec())
    # axis-major, scheme canonical, method order; blind rows are mc-only
    expected = []
    for v in (10.0, 20.0, 30.0):
        expected += [(v, "sts_known", "analytic"), (v, "sts_known", "mc"),
                     (v, "sts_blind", "mc")]
    assert [(r.axis_value, r.scheme.value, r.method) for r in rows] == expected
    for r in rows:
        if r.method == "mc":
            assert r.trials == 2000 and r.std_error is not None
        else:
            assert r.trials is None and r.std_error is None


def test_render_csv_dialect():
    text = render_csv(run_sweep(_spec(axis_values=(30.0,))))
    lines = text.split("\n")
    assert lines[0] == CSV_HEADER
    assert text.endswith("\n") and "\r" not in text
    analytic_line = lines[1].split(",")
    assert analytic_line[2:4] == ["sts_known", "analytic"]
    assert analytic_line[5] == "" and analytic_line[6] == ""
    assert float(analytic_line[4]) == pytest.approx(0.012093213745, rel=1e-9)


def test_integer_axis_renders_without_decimal_point():
    spec = _spec(axis="n_transmitters", axis_values=(2, 4),
                 schemes=(SchemeKind.STS_KNOWN,), methods=("analytic",))
    text = render_csv(run_sweep(spec))
    assert "n_transmitters,2,sts_known" in text
    assert "n_transmitters,4,sts_known" in text


def test_run_sweep_deterministic():
    spec = _spec()
    assert render_csv(run_sweep(spec)) == render_csv(run_sweep(spec))


def test_parse_config_file(tmp_path):
    path = tmp_path / "cfg.txt"
    path.write_text(
        "# comment line\n"
        "backhaul_prob = 0.7   # trailing comment\n"
        "n_transmitters=3\n"
        "\n"
        "mean_power_db = 1, -2, 3, -4, 5, -6\n",
        encoding="utf-8")
    overrides = parse_config_file(str(path))
    assert overrides == {"backhaul_prob": 0.7, "n_transmitters": 3,
                         "mean_power_db": (1.0, -2.0, 3.0, -4.0, 5.0, -6.0)}


@pytest.mark.parametrize("content", [
    "frequency = 2.4\n",
    "backhaul_prob 0.7\n",
    "backhaul_prob = high\n",
    "mean_power_db = 1,2,3\n",
])
def test_parse_config_file_rejects(tmp_path, content):
    path = tmp_path / "bad.txt"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(ValidationError):
        parse_config_file(str(path))


def test_preset_variants():
    fig2 = preset_variants("fig2", trials=10)
    assert [label for label, _ in fig2] == ["s0.5", "s0.99"]
    assert fig2[0][1].fixed.backhaul_prob == 0.5
    assert fig2[1][1].fixed.backhaul_prob == 0.99
    fig3 = preset_variants("fig3")
    assert [s.fixed.n_transmitters for _, s in fig3] == [2, 6]
    fig4 = preset_variants("fig4")
    assert [s.fixed.primary_outage_threshold for _, s in fig4] == [0.01, 0.1]
    for _, spec in fig2 + fig3 + fig4:
        spec.validate()
        assert spec.axis == "gamma_t_db"
        assert spec.axis_values[0] == 0.0 and spec.axis_values[-1] == 60.0
    with pytest.raises(ValidationError):
        preset_variants("fig9")


def test_compare_report_validations():
    with pytest.raises(ValidationError):
        compare_report(_spec(schemes=(SchemeKind.STS_KNOWN,)))  # 3 axis values
    with pytest.raises(ValidationError):
        compare_report(_spec(axis_values=(30.0,), methods=("analytic", "mc"),
                             schemes=(SchemeKind.STS_BLIND,)))
    with pytest.raises(ValidationError):
        compare_report(_spec(axis_values=(30.0,), methods=("mc",)))


def test_compare_report_values():
    rows = compare_report(_spec(axis_values=(30.0,),
                                schemes=(SchemeKind.STS_KNOWN,),
                                trials=50_000))
    assert len(rows) == 1
    row = rows[0]
    assert row.method == "analytic"
    assert row.reference_sop == pytest.approx(0.012093213745, rel=1e-9)
    assert math.isfinite(row.z_score)
    assert row.passed == (abs(row.z_score) <= 4.0)


def test_main_stdout_sweep(capsys):
    code = main(["--values", "30", "--scheme", "sts_known",
                 "--method", "analytic"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines()[0] == CSV_HEADER
    assert "sts_known,analytic,0.012093213745" in out


def test_main_writes_identical_files(tmp_path):
    args = ["--values", "10,30", "--trials", "3000", "--workers", "2",
            "--out", str(tmp_path / "a.csv")]
    assert main(args) == 0
    args[-1] = str(tmp_path / "b.csv")
    assert main(args) == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_main_config_overrides(tmp_path, capsys):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("gamma_t_db = 20\n", encoding="utf-8")
    code = main(["--config", str(cfg), "--values", "30", "--scheme", "sts_known",
                 "--method", "analytic"])
    assert code == 0
    # the sweep axis value overrides the configured SNR at each point
    assert "0.012093213745" in capsys.readouterr().out


def test_main_validation_exit(capsys):
    assert main(["--values", "30,10"]) == 1
    assert "error:" in capsys.readouterr().err


def test_main_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["--axis", "nonsense"])
    assert exc_info.value.code == 1


def test_main_compare_pass_and_fail(capsys):
    code = main(["--compare", "--scheme", "sts_known", "--method", "analytic",
                 "--method", "mc", "--trials", "100000"])
    assert code == 0
    # at 10 dB the high-SNR floor is far from the truth, so checking the
    # asymptote against Monte Carlo there must fail the |z| <= 4 gate
    code = main(["--compare", "--gamma-t-db", "10", "--scheme", "sts_known",
                 "--method", "asymptotic", "--method", "mc",
                 "--trials", "100000"])
    out = capsys.readouterr().out
    assert code == 3
    assert "FAIL" in out


def test_main_numeric_failure_exit(monkeypatch, capsys):
    import cogsop.cli as cli_mod

    def broken(p, n_tx, s, rel_tol=1e-8):
        raise QuadratureError("synthetic non-convergence", math.nan, math.inf, 0)

    monkeypatch.setattr(cli_mod, "sop_ots", broken)
    code = main(["--values", "30", "--scheme", "ots_known", "--method", "analytic"])
    assert code == 2
    assert "synthetic non-convergence" in capsys.readouterr().err


def test_main_preset_requires_out(capsys):
    assert main(["--preset", "fig2"]) == 1


def test_main_preset_writes_variant_files(tmp_path):
    code = main(["--preset", "fig3", "--trials", "50", "--out",
                 str(tmp_path / "fig3.csv"), "--emit-gnuplot"])
    assert code == 0
    for label in ("N2", "N6"):
        csv_path = tmp_path / f"fig3_{label}.csv"
        assert csv_path.exists()
        text = csv_path.read_text(encoding="utf-8")
        assert text.splitlines()[0] == CSV_HEADER
        # 31 axis points; 4 schemes x valid methods = 2*3 + 2*1 = 8 rows each
        assert len(text.splitlines()) == 1 + 31 * 8
        gp = (tmp_path / f"fig3_{label}.gp").read_text(encoding="utf-8")
        assert "set logscale y" in gp
        assert f"fig3_{label}.csv" in gp


def test_main_gnuplot_requires_out(capsys):
    assert main(["--values", "30", "--emit-gnuplot"]) == 1
