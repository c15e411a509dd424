"""Command-line interface.

Usage examples::

    asymtunnel spectrum --g 1 --alpha 0.6
    asymtunnel evolve --beta 4 --tau-max 10 --tau-points 401 --oracle --output fig4.csv
    asymtunnel grid --quantity ratio --format json --output fig3.json
    asymtunnel rates --beta 4 --step 0.005 --tau-max 50 --output fig5.csv
    asymtunnel grid --config run.ini

Config files are INI-style. Recognized sections and keys::

    [model]    g, alpha | beta
    [output]   output, format
    [evolve]   tau_max, tau_points, oracle
    [grid]     quantity, tau_max, tau_points, beta_min, beta_max, beta_points, beta_scale
    [rates]    tau_max, step, n_a, n_b, tau_from

Command-line flags override the file. Exit codes: 0 ok, 2 domain or config
error, 3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import sys

import numpy as np

from . import semiclassical, spectral, sweep
from .errors import DomainError, NumericalError
from .model import ModelParams, hamiltonian_2x2, make_params, params_from_beta

EXIT_OK, EXIT_DOMAIN, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

DEFAULTS = {
    "model": {"g": 1.0, "alpha": 0.6},
    "output": {"output": "-", "format": "csv"},
    "evolve": {"tau_max": 10.0, "tau_points": 401, "oracle": False},
    "grid": {
        "quantity": "prob_AB",
        "tau_max": 2.0 * math.pi,
        "tau_points": 201,
        "beta_min": 0.25,
        "beta_max": 4.0,
        "beta_points": 129,
        "beta_scale": "log",
    },
    "rates": {
        "tau_max": semiclassical.DEFAULT_TAU_END,
        "step": semiclassical.DEFAULT_STEP,
        "n_a": 1.0,
        "n_b": 0.0,
        "tau_from": 10.0,
    },
}


class ConfigError(DomainError):
    pass


class _Settings:
    """Layered lookup: flags, then config file, then built-in defaults."""

    def __init__(self, args: argparse.Namespace, config: configparser.ConfigParser | None):
        self.args = args
        self.config = config

    def get(self, section: str, key: str, kind=float):
        flag = getattr(self.args, key, None)
        if flag is not None:
            return kind(flag)
        if self.config is not None and self.config.has_option(section, key):
            raw = self.config.get(section, key)
            try:
                if kind is bool:
                    return self.config.getboolean(section, key)
                return kind(raw)
            except ValueError as exc:
                raise ConfigError(f"[{section}] {key}={raw!r} is not a valid {kind.__name__}") from exc
        return DEFAULTS[section][key]

    def params(self) -> ModelParams:
        g = self.get("model", "g")
        flag_a, flag_b = self.args.alpha, self.args.beta
        if flag_a is not None and flag_b is not None:
            raise ConfigError("give either --alpha or --beta, not both")
        if flag_a is None and flag_b is None and self.config is not None:
            has_a = self.config.has_option("model", "alpha")
            has_b = self.config.has_option("model", "beta")
            if has_a and has_b:
                raise ConfigError("config [model] sets both alpha and beta")
            if has_b:
                return params_from_beta(g, self._config_float("model", "beta"))
            if has_a:
                return make_params(g, self._config_float("model", "alpha"))
        if flag_b is not None:
            return params_from_beta(g, flag_b)
        if flag_a is not None:
            return make_params(g, flag_a)
        return make_params(g, DEFAULTS["model"]["alpha"])

    def _config_float(self, section, key):
        raw = self.config.get(section, key)
        try:
            return float(raw)
        except ValueError as exc:
            raise ConfigError(f"[{section}] {key}={raw!r} is not a number") from exc


def _load_config(path: str | None) -> configparser.ConfigParser | None:
    if path is None:
        return None
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    return parser


def _write(text: str, destination: str) -> None:
    if destination == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(destination, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _cplx(z) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _params_doc(p: ModelParams) -> dict:
    return {"g": p.g, "alpha": p.alpha, "beta": p.beta, "omega": p.omega}


# ---------------------------------------------------------------------------
# commands


def cmd_spectrum(settings: _Settings) -> str:
    params = settings.params()
    h = hamiltonian_2x2(params)
    system = spectral.eigensystem_analytic(params)
    numeric = spectral.eigensystem_numeric(h)
    metric = spectral.metric_operator(system)
    hermitian_gap = float(np.max(np.abs(system.left - system.right.conj().T)))
    report = {
        "params": _params_doc(params),
        "eigenvalues": [_cplx(e) for e in system.eigenvalues],
        "right_vectors": [[_cplx(z) for z in v] for v in system.right_vectors],
        "left_vectors": [[_cplx(z) for z in v] for v in system.left_vectors],
        "biorthogonality_residual": system.biorthogonality_residual(),
        "completeness_residual": system.completeness_residual(),
        "numeric_eigenvalue_deviation": float(np.max(np.abs(numeric.eigenvalues - system.eigenvalues))),
        "metric_operator": [[_cplx(z) for z in row] for row in metric.matrix],
        "pseudo_hermiticity_residual": metric.pseudo_hermiticity_residual(h),
        "hermitian": params.is_hermitian,
        "left_minus_right_dagger": hermitian_gap,
    }
    if settings.get("output", "format", str) == "json":
        return json.dumps(report, indent=1) + "\n"

    def vec(v):
        return "[" + ", ".join(f"{z.real:+.12g}{z.imag:+.12g}j" for z in v) + "]"

    lines = [
        f"# g={_fmt(params.g)} alpha={_fmt(params.alpha)} beta={_fmt(params.beta)} omega={_fmt(params.omega)}",
        "eigenvalues: " + ", ".join(f"{e.real:+.15g}" for e in system.eigenvalues),
    ]
    for s, label in enumerate(("+", "-")):
        lines.append(f"right[{label}]: {vec(system.right[:, s])}")
        lines.append(f"left[{label}]:  {vec(system.left[s, :])}")
    lines += [
        f"biorthogonality residual: {report['biorthogonality_residual']:.3e}",
        f"completeness residual: {report['completeness_residual']:.3e}",
        f"numeric eigenvalue deviation: {report['numeric_eigenvalue_deviation']:.3e}",
        "metric operator: " + "; ".join(vec(row) for row in metric.matrix),
        f"pseudo-hermiticity residual: {report['pseudo_hermiticity_residual']:.3e}",
    ]
    if params.is_hermitian:
        lines.append(f"hermitian: left = right^dagger (max deviation {hermitian_gap:.3e})")
    else:
        lines.append("hermitian: no (non-reciprocal coupling)")
    return "\n".join(lines) + "\n"


def cmd_evolve(settings: _Settings) -> str:
    params = settings.params()
    tau_max = settings.get("evolve", "tau_max")
    points = settings.get("evolve", "tau_points", int)
    oracle = settings.get("evolve", "oracle", bool)
    taus = sweep.uniform_taus(tau_max, points)
    columns = ["N_A", "N_B", "P_AB", "P_AA", "P_BA", "P_BB", "norm_A", "norm_B", "ratio"]
    if oracle:
        columns += list(sweep.ORACLE_COLUMNS)
    table = sweep.timeseries(params, taus, columns)

    loss_a = np.max(np.abs(table.column("P_AA") + table.column("P_AB") - 1.0))
    loss_b = np.max(np.abs(table.column("P_BA") + table.column("P_BB") - 1.0))
    _note(f"conservation: max|P_AA+P_AB-1|={loss_a:.3e} max|P_BA+P_BB-1|={loss_b:.3e}")
    if oracle:
        pairs = [("P_AB", "oracle_P_AB"), ("P_BA", "oracle_P_BA"), ("N_A", "oracle_N_A"), ("norm_A", "oracle_norm_A")]
        deviation = max(float(np.max(np.abs(table.column(a) - table.column(b)))) for a, b in pairs)
        _note(f"oracle: max deviation={deviation:.3e}")
        if deviation > 1e-10:
            raise NumericalError(f"closed forms deviate from the propagator by {deviation:.3e}")
    if settings.get("output", "format", str) == "json":
        return table.to_json()
    return table.to_csv()


def cmd_grid(settings: _Settings) -> str:
    spec = sweep.GridSpec(
        tau_min=0.0,
        tau_max=settings.get("grid", "tau_max"),
        tau_points=settings.get("grid", "tau_points", int),
        beta_min=settings.get("grid", "beta_min"),
        beta_max=settings.get("grid", "beta_max"),
        beta_points=settings.get("grid", "beta_points", int),
        beta_scale=settings.get("grid", "beta_scale", str),
    )
    result = sweep.grid(spec, settings.get("grid", "quantity", str))
    if settings.get("output", "format", str) == "json":
        return result.to_json()
    return result.to_csv()


def cmd_rates(settings: _Settings) -> str:
    params = settings.params()
    initial = semiclassical.RatePopulations(settings.get("rates", "n_a"), settings.get("rates", "n_b"))
    if initial.n_A < 0 or initial.n_B < 0 or initial.total <= 0:
        raise DomainError("initial populations must be non-negative with a positive total")
    traj = semiclassical.integrate(
        initial, params, tau_end=settings.get("rates", "tau_max"), step=settings.get("rates", "step")
    )
    tau_from = settings.get("rates", "tau_from")
    mean_a, mean_b, amp_a = semiclassical.equilibrium_stats(traj, tau_from)
    _note(f"equilibrium: mean_nA={mean_a:.6f} mean_nB={mean_b:.6f} amplitude_nA={amp_a:.3e}")
    if settings.get("output", "format", str) == "json":
        doc = {
            "params": _params_doc(params),
            "step": traj.step,
            "columns": ["tau", "n_A", "n_B"],
            "rows": np.column_stack([traj.tau, traj.n_A, traj.n_B]).tolist(),
            "equilibrium": {"tau_from": tau_from, "mean_nA": mean_a, "mean_nB": mean_b, "amplitude_nA": amp_a},
        }
        return json.dumps(doc, indent=1) + "\n"
    out = [f"# g={_fmt(params.g)} alpha={_fmt(params.alpha)} beta={_fmt(params.beta)} step={_fmt(traj.step)}", "tau,n_A,n_B"]
    out += [f"{_fmt(t)},{_fmt(a)},{_fmt(b)}" for t, a, b in zip(traj.tau, traj.n_A, traj.n_B)]
    out.append(
        f"# tau_from={_fmt(tau_from)} mean_nA={_fmt(mean_a)} mean_nB={_fmt(mean_b)} amplitude_nA={_fmt(amp_a)}"
    )
    return "\n".join(out) + "\n"


COMMANDS = {"spectrum": cmd_spectrum, "evolve": cmd_evolve, "grid": cmd_grid, "rates": cmd_rates}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI file with [model], [output] and per-command sections")
    common.add_argument("--g", type=float, help="coupling constant (default 1)")
    common.add_argument("--alpha", type=float, help="asymmetry in (-1, 1) (default 0.6)")
    common.add_argument("--beta", type=float, help="(1+alpha)/(1-alpha), alternative to --alpha")
    common.add_argument("--output", help="output path, '-' for stdout (default)")
    common.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")

    parser = argparse.ArgumentParser(prog="asymtunnel", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("spectrum", parents=[common], help="eigenvalues, biorthogonal vectors, metric operator")

    ev = sub.add_parser("evolve", parents=[common], help="occupations and probabilities versus tau")
    ev.add_argument("--tau-max", dest="tau_max", type=float)
    ev.add_argument("--tau-points", dest="tau_points", type=int)
    ev.add_argument("--oracle", action="store_const", const=True, help="add matrix-exponential columns")

    gr = sub.add_parser("grid", parents=[common], help="closed-form quantity on a (tau, beta) grid")
    gr.add_argument("--quantity", choices=sweep.GRID_QUANTITIES)
    gr.add_argument("--tau-max", dest="tau_max", type=float)
    gr.add_argument("--tau-points", dest="tau_points", type=int)
    gr.add_argument("--beta-min", dest="beta_min", type=float)
    gr.add_argument("--beta-max", dest="beta_max", type=float)
    gr.add_argument("--beta-points", dest="beta_points", type=int)
    gr.add_argument("--beta-scale", dest="beta_scale", choices=("linear", "log"))

    ra = sub.add_parser("rates", parents=[common], help="RK4 integration of the rate equation")
    ra.add_argument("--tau-max", dest="tau_max", type=float, help="integration horizon (default 50)")
    ra.add_argument("--step", type=float, help="RK4 step in tau (default 0.005)")
    ra.add_argument("--n-a", dest="n_a", type=float, help="initial population of A (default 1)")
    ra.add_argument("--n-b", dest="n_b", type=float, help="initial population of B (default 0)")
    ra.add_argument("--tau-from", dest="tau_from", type=float, help="start of the averaging window (default 10)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_DOMAIN if exc.code else EXIT_OK
    try:
        settings = _Settings(args, _load_config(args.config))
        text = COMMANDS[args.command](settings)
        _write(text, settings.get("output", "output", str))
    except DomainError as exc:
        _note(f"error: {exc}")
        return EXIT_DOMAIN
    except NumericalError as exc:
        _note(f"numerical error: {exc}")
        return EXIT_NUMERIC
    except OSError as exc:
        _note(f"I/O error: {exc}")
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
