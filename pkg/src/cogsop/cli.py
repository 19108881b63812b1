"""Command-line parameter sweeps producing SOP data tables.

A sweep varies one axis (transmit SNR in dB, backhaul reliability, primary
outage threshold or transmitter count) while everything else stays fixed,
and evaluates each requested scheme with each requested method: "analytic"
(closed form for sts, adaptive quadrature for ots), "asymptotic" (high-SNR
floor, known-backhaul schemes only) and "mc" (Monte Carlo).  Output is a
deterministic CSV; given the same inputs the bytes are identical run to run.

Exit codes: 0 success, 1 invalid configuration or flags, 2 numerical
failure (quadrature non-convergence or a non-finite integrand), 3 a
comparison report found |z| > 4 between an analytic value and its Monte
Carlo estimate.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import sys
from dataclasses import dataclass

from .analytic import sop_ots, sop_ots_asymptotic, sop_sts, sop_sts_asymptotic
from .montecarlo import SchemeKind, simulate_sop
from .params import SystemConfig, ValidationError, asymptotic_params, derive
from .quadrature import IntegrandError, QuadratureError

AXES = ("gamma_t_db", "s", "phi", "n_transmitters")
METHODS = ("analytic", "asymptotic", "mc")
SCHEME_ORDER = (SchemeKind.STS_KNOWN, SchemeKind.OTS_KNOWN,
                SchemeKind.STS_BLIND, SchemeKind.OTS_BLIND)
CSV_HEADER = "axis,axis_value,scheme,method,sop,std_error,trials"

_AXIS_FIELD = {
    "gamma_t_db": "gamma_t_db",
    "s": "backhaul_prob",
    "phi": "primary_outage_threshold",
    "n_transmitters": "n_transmitters",
}

_BASE_CONFIG = SystemConfig(
    n_transmitters=6,
    backhaul_prob=0.99,
    primary_outage_threshold=0.1,
    primary_rate_threshold=0.5,
    secrecy_rate_threshold=0.5,
    gamma_t_db=30.0,
    mean_power_db=(3.0, -6.0, 3.0, -3.0, 6.0, -3.0),
)

PRESET_AXIS_VALUES = tuple(float(db) for db in range(0, 61, 2))


class SweepError(RuntimeError):
    """An evaluation failed; carries the offending sweep point in the message."""


@dataclass(frozen=True)
class SweepSpec:
    """One axis, a fixed base configuration, and what to evaluate on it."""

    axis: str
    axis_values: tuple
    fixed: SystemConfig
    schemes: tuple[SchemeKind, ...]
    methods: tuple[str, ...]
    trials: int = 1_000_000
    seed: int = 1
    workers: int = 1
    rel_tol: float = 1e-8

    def validate(self) -> None:
        if self.axis not in AXES:
            raise ValidationError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not self.axis_values:
            raise ValidationError("axis_values must be non-empty")
        if any(b <= a for a, b in zip(self.axis_values, self.axis_values[1:])):
            raise ValidationError(
                f"axis_values must be strictly increasing, got {self.axis_values!r}")
        if not self.schemes:
            raise ValidationError("at least one scheme is required")
        if any(not isinstance(s, SchemeKind) for s in self.schemes):
            raise ValidationError(f"schemes must be SchemeKind members, got {self.schemes!r}")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown or not self.methods:
            raise ValidationError(f"methods must be a non-empty subset of {METHODS}, "
                                  f"got {self.methods!r}")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ValidationError(f"trials must be an integer >= 1, got {self.trials!r}")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ValidationError(f"workers must be an integer >= 1, got {self.workers!r}")
        if not self.rel_tol > 0.0:
            raise ValidationError(f"rel_tol must be positive, got {self.rel_tol!r}")
        for scheme in self.schemes:
            if not any(_pair_valid(scheme, m) for m in self.methods):
                raise ValidationError(
                    f"scheme {scheme.value!r} has no valid method among "
                    f"{self.methods!r}; blind schemes are Monte-Carlo only")
        self._config_at(self.axis_values[0]).validate()

    def _config_at(self, value) -> SystemConfig:
        field = _AXIS_FIELD[self.axis]
        if self.axis == "n_transmitters":
            value = int(value)
        return dataclasses.replace(self.fixed, **{field: value})


def _pair_valid(scheme: SchemeKind, method: str) -> bool:
    # closed forms and asymptotes exist only when selection knows the
    # backhaul state; blind baselines are simulation-only
    if method in ("analytic", "asymptotic"):
        return scheme.knows_backhaul
    return True


@dataclass(frozen=True)
class SweepRow:
    axis: str
    axis_value: float
    scheme: SchemeKind
    method: str
    sop: float
    std_error: float | None
    trials: int | None


def _evaluate(spec: SweepSpec, config: SystemConfig, scheme: SchemeKind,
              method: str) -> tuple[float, float | None, int | None]:
    n_tx, s = config.n_transmitters, config.backhaul_prob
    if method == "analytic":
        p = derive(config)
        if scheme is SchemeKind.STS_KNOWN:
            return sop_sts(p, n_tx, s).value, None, None
        return sop_ots(p, n_tx, s, rel_tol=spec.rel_tol).value, None, None
    if method == "asymptotic":
        ap = asymptotic_params(config)
        fn = sop_sts_asymptotic if scheme is SchemeKind.STS_KNOWN else sop_ots_asymptotic
        return fn(ap, n_tx, s).value, None, None
    est = simulate_sop(config, scheme, spec.trials, seed=spec.seed,
                       workers=spec.workers)
    return est.estimate, est.std_error, est.trials


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate every (axis value, scheme, method) triple in deterministic
    order; invalid scheme/method pairs are skipped."""
    spec.validate()
    rows: list[SweepRow] = []
    schemes = [s for s in SCHEME_ORDER if s in spec.schemes]
    methods = [m for m in METHODS if m in spec.methods]
    for value in spec.axis_values:
        config = spec._config_at(value)
        for scheme in schemes:
            for method in methods:
                if not _pair_valid(scheme, method):
                    continue
                try:
                    sop, std_error, trials = _evaluate(spec, config, scheme, method)
                except ValidationError:
                    raise
                except Exception as exc:
                    raise SweepError(
                        f"evaluation failed at axis_value={value!r}, "
                        f"scheme={scheme.value}, method={method}: {exc}") from exc
                rows.append(SweepRow(spec.axis, value, scheme, method,
                                     sop, std_error, trials))
    return rows


def _fmt(v: float) -> str:
    return format(v, ".12g")


def _fmt_axis_value(axis: str, v) -> str:
    return str(int(v)) if axis == "n_transmitters" else _fmt(float(v))


def render_csv(rows: list[SweepRow]) -> str:
    """Fixed-dialect CSV: 12 significant digits, LF endings, stable order."""
    lines = [CSV_HEADER]
    for r in rows:
        se = "" if r.std_error is None else _fmt(r.std_error)
        tr = "" if r.trials is None else str(r.trials)
        lines.append(f"{r.axis},{_fmt_axis_value(r.axis, r.axis_value)},"
                     f"{r.scheme.value},{r.method},{_fmt(r.sop)},{se},{tr}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CompareRow:
    scheme: SchemeKind
    method: str
    reference_sop: float
    mc_estimate: float
    std_error: float
    z_score: float
    passed: bool


def compare_report(spec: SweepSpec) -> list[CompareRow]:
    """Cross-validate analytic/asymptotic values against Monte Carlo at a
    single sweep point; a row fails when |z| > 4."""
    spec.validate()
    if len(spec.axis_values) != 1:
        raise ValidationError("comparison reports need exactly one axis value")
    if "mc" not in spec.methods:
        raise ValidationError("comparison reports need the 'mc' method")
    references = [m for m in METHODS if m in spec.methods and m != "mc"]
    if not references:
        raise ValidationError(
            "comparison reports need 'analytic' or 'asymptotic' next to 'mc'")
    blind = [s.value for s in spec.schemes if not s.knows_backhaul]
    if blind:
        raise ValidationError(
            f"blind schemes have no analytic reference to compare against: {blind}")
    config = spec._config_at(spec.axis_values[0])
    rows: list[CompareRow] = []
    for scheme in [s for s in SCHEME_ORDER if s in spec.schemes]:
        est = simulate_sop(config, scheme, spec.trials, seed=spec.seed,
                           workers=spec.workers)
        for method in references:
            ref, _, _ = _evaluate(spec, config, scheme, method)
            if est.std_error > 0.0:
                z = (ref - est.estimate) / est.std_error
            else:
                z = 0.0 if ref == est.estimate else math.inf
            rows.append(CompareRow(scheme, method, ref, est.estimate,
                                   est.std_error, z, abs(z) <= 4.0))
    return rows


def render_compare_csv(rows: list[CompareRow]) -> str:
    lines = ["scheme,method,reference_sop,mc_estimate,std_error,z_score,pass"]
    for r in rows:
        z = _fmt(r.z_score) if math.isfinite(r.z_score) else "inf"
        lines.append(f"{r.scheme.value},{r.method},{_fmt(r.reference_sop)},"
                     f"{_fmt(r.mc_estimate)},{_fmt(r.std_error)},{z},"
                     f"{'pass' if r.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def preset_variants(name: str, trials: int = 100_000, seed: int = 1,
                    workers: int = 1, rel_tol: float = 1e-7,
                    ) -> list[tuple[str, SweepSpec]]:
    """Named two-variant sweep families.

    Each preset sweeps transmit SNR 0..60 dB in 2 dB steps for two values
    of one secondary parameter (backhaul reliability, transmitter count, or
    interference budget); returns (variant label, spec) pairs.
    """
    if name == "fig2":
        overrides = [("s0.5", {"backhaul_prob": 0.5}), ("s0.99", {"backhaul_prob": 0.99})]
    elif name == "fig3":
        overrides = [("N2", {"n_transmitters": 2}), ("N6", {"n_transmitters": 6})]
    elif name == "fig4":
        overrides = [("phi0.01", {"primary_outage_threshold": 0.01}),
                     ("phi0.1", {"primary_outage_threshold": 0.1})]
    else:
        raise ValidationError(f"unknown preset {name!r}; choose fig2, fig3 or fig4")
    out = []
    for label, over in overrides:
        fixed = dataclasses.replace(_BASE_CONFIG, **over)
        out.append((label, SweepSpec(
            axis="gamma_t_db", axis_values=PRESET_AXIS_VALUES, fixed=fixed,
            schemes=SCHEME_ORDER, methods=METHODS, trials=trials, seed=seed,
            workers=workers, rel_tol=rel_tol)))
    return out


# ---------------------------------------------------------------------------
# argument handling

_CONFIG_KEYS = {
    "n_transmitters": int,
    "backhaul_prob": float,
    "primary_outage_threshold": float,
    "primary_rate_threshold": float,
    "secrecy_rate_threshold": float,
    "gamma_t_db": float,
}


def parse_config_file(path: str) -> dict:
    """key=value lines with # comments; returns SystemConfig field overrides."""
    overrides: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValidationError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, _, value = (part.strip() for part in line.partition("="))
            if key in _CONFIG_KEYS:
                try:
                    overrides[key] = _CONFIG_KEYS[key](value)
                except ValueError as exc:
                    raise ValidationError(f"{path}:{lineno}: bad value for {key}: {exc}")
            elif key == "mean_power_db":
                overrides[key] = _parse_power_list(value, f"{path}:{lineno}")
            else:
                raise ValidationError(f"{path}:{lineno}: unknown key {key!r}")
    return overrides


def _parse_power_list(text: str, where: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise ValidationError(f"{where}: bad mean_power_db list: {exc}")
    if len(values) != 6:
        raise ValidationError(f"{where}: mean_power_db needs 6 comma-separated values")
    return values


class _Parser(argparse.ArgumentParser):
    # exit 1 on usage errors so exit 2 stays reserved for numeric failures
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cogsop",
        description="Secrecy outage probability sweeps for backhaul-gated "
                    "underlay small-cell transmitter selection.")
    parser.add_argument("--preset", choices=("fig2", "fig3", "fig4"),
                        help="run a named two-variant sweep family (writes one "
                             "CSV per variant next to --out)")
    parser.add_argument("--config", metavar="PATH",
                        help="key=value file overriding the base configuration")
    parser.add_argument("--axis", choices=AXES, default="gamma_t_db")
    parser.add_argument("--values", metavar="V1,V2,...",
                        help="strictly increasing axis values (default 0..60 dB "
                             "in 2 dB steps for gamma_t_db)")
    parser.add_argument("--scheme", action="append",
                        choices=[s.value for s in SCHEME_ORDER],
                        help="repeatable; default: all four schemes")
    parser.add_argument("--method", action="append", choices=METHODS,
                        help="repeatable; default: analytic and mc")
    parser.add_argument("--trials", type=int, default=1_000_000)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--workers", type=int, default=max(os.cpu_count() or 1, 1))
    parser.add_argument("--out", metavar="PATH", help="output CSV path (default stdout)")
    parser.add_argument("--rel-tol", type=float, default=1e-8,
                        help="relative tolerance for quadrature-backed values")
    parser.add_argument("--emit-gnuplot", action="store_true",
                        help="also write a gnuplot script next to --out")
    parser.add_argument("--compare", action="store_true",
                        help="single-point analytic vs Monte Carlo report "
                             "instead of a sweep (exit 3 when any |z| > 4)")
    for key in _CONFIG_KEYS:
        parser.add_argument(f"--{key.replace('_', '-')}", type=_CONFIG_KEYS[key],
                            dest=f"cfg_{key}", metavar="V",
                            help=f"override {key}")
    parser.add_argument("--mean-power-db", dest="cfg_mean_power_db",
                        metavar="P1,...,P6",
                        help="six mean channel powers in dB "
                             "(T->R,T->D,S->D,S->R,T->E,S->E)")
    return parser


def _config_from_args(args) -> SystemConfig:
    overrides: dict = {}
    if args.config:
        overrides.update(parse_config_file(args.config))
    for key in _CONFIG_KEYS:
        value = getattr(args, f"cfg_{key}")
        if value is not None:
            overrides[key] = value
    if args.cfg_mean_power_db is not None:
        overrides["mean_power_db"] = _parse_power_list(args.cfg_mean_power_db, "--mean-power-db")
    return dataclasses.replace(_BASE_CONFIG, **overrides)


def _axis_values_from_args(args) -> tuple:
    if args.values is not None:
        try:
            values = tuple(float(v) for v in args.values.split(","))
        except ValueError as exc:
            raise ValidationError(f"bad --values list: {exc}")
        if args.axis == "n_transmitters":
            values = tuple(int(v) for v in values)
        return values
    if args.axis == "gamma_t_db":
        return PRESET_AXIS_VALUES
    raise ValidationError(f"--values is required for axis {args.axis!r}")


def _spec_from_args(args) -> SweepSpec:
    schemes = tuple(SchemeKind(v) for v in dict.fromkeys(args.scheme)) if args.scheme \
        else SCHEME_ORDER
    methods = tuple(dict.fromkeys(args.method)) if args.method else ("analytic", "mc")
    return SweepSpec(axis=args.axis, axis_values=_axis_values_from_args(args),
                     fixed=_config_from_args(args), schemes=schemes, methods=methods,
                     trials=args.trials, seed=args.seed, workers=args.workers,
                     rel_tol=args.rel_tol)


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def emit_gnuplot(csv_path: str, rows: list[SweepRow]) -> str:
    """Write a companion gnuplot script; returns its path."""
    stem, _ = os.path.splitext(csv_path)
    gp_path = stem + ".gp"
    pairs = sorted({(r.scheme.value, r.method) for r in rows},
                   key=lambda p: (SCHEME_ORDER.index(SchemeKind(p[0])), METHODS.index(p[1])))
    plots = []
    for scheme, method in pairs:
        sel = f"(strcol(3) eq '{scheme}' && strcol(4) eq '{method}' ? column(5) : NaN)"
        style = "with lines" if method != "mc" else "with points pt 7 ps 0.5"
        plots.append(f"    '{os.path.basename(csv_path)}' every ::1 using 2:{sel} "
                     f"{style} title '{scheme} {method}'")
    script = "\n".join([
        "set datafile separator ','",
        "set logscale y",
        "set xlabel 'transmit SNR (dB)'" if rows and rows[0].axis == "gamma_t_db"
        else f"set xlabel '{rows[0].axis}'" if rows else "set xlabel 'axis'",
        "set ylabel 'secrecy outage probability'",
        "set key outside",
        "plot \\",
        ", \\\n".join(plots),
        "pause -1",
    ]) + "\n"
    _write_text(gp_path, script)
    return gp_path


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.compare and args.preset:
            raise ValidationError("--compare and --preset cannot be combined")
        if args.compare:
            spec = _spec_from_args(args)
            if args.values is None and args.axis == "gamma_t_db":
                # compare at the configured operating point, not the sweep default
                spec = dataclasses.replace(spec, axis_values=(spec.fixed.gamma_t_db,))
            rows = compare_report(spec)
            text = render_compare_csv(rows)
            if args.out:
                _write_text(args.out, text)
            else:
                sys.stdout.write(text)
            return 0 if all(r.passed for r in rows) else 3
        if args.preset:
            if not args.out:
                raise ValidationError("--preset requires --out (one CSV per variant)")
            stem, ext = os.path.splitext(args.out)
            ext = ext or ".csv"
            for label, spec in preset_variants(args.preset, trials=args.trials,
                                               seed=args.seed, workers=args.workers,
                                               rel_tol=args.rel_tol):
                rows = run_sweep(spec)
                path = f"{stem}_{label}{ext}"
                _write_text(path, render_csv(rows))
                if args.emit_gnuplot:
                    emit_gnuplot(path, rows)
            return 0
        spec = _spec_from_args(args)
        rows = run_sweep(spec)
        text = render_csv(rows)
        if args.out:
            _write_text(args.out, text)
            if args.emit_gnuplot:
                emit_gnuplot(args.out, rows)
        else:
            if args.emit_gnuplot:
                raise ValidationError("--emit-gnuplot requires --out")
            sys.stdout.write(text)
        return 0
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SweepError as exc:
        cause = exc.__cause__
        code = 1 if isinstance(cause, ValidationError) else 2
        print(f"error: {exc}", file=sys.stderr)
        return code
    except (QuadratureError, IntegrandError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
