"""Grid and time-series datasets over (tau, beta), with CSV/JSON serialization.

Grids are laid out with tau along rows and beta along columns. For each beta
node the model is built with ``g = 1`` and ``alpha = (beta - 1)/(beta + 1)``,
so ``tau`` doubles as physical time.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import dynamics
from ._validation import check_finite_scalar
from .errors import DomainError
from .model import ModelParams, Site, params_from_beta
from .semiclassical import DEFAULT_STEP, RatePopulations, integrate

__all__ = [
    "GRID_JSON_SCHEMA",
    "GRID_QUANTITIES",
    "TIMESERIES_COLUMNS",
    "GridResult",
    "GridSpec",
    "TimeSeries",
    "grid",
    "read_grid_csv",
    "read_grid_json",
    "timeseries",
    "uniform_taus",
]

GRID_QUANTITIES = ("prob_AB", "prob_BA", "ratio", "norm_A", "norm_B")

_CLOSED_FORMS = {
    "prob_AB": dynamics.prob_ab,
    "prob_BA": dynamics.prob_ba,
    "ratio": dynamics.ratio,
    "norm_A": dynamics.norm_a,
    "norm_B": dynamics.norm_b,
}

GRID_JSON_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["spec", "quantity", "values"],
    "additionalProperties": False,
    "properties": {
        "spec": {
            "type": "object",
            "required": [
                "tau_min", "tau_max", "tau_points",
                "beta_min", "beta_max", "beta_points", "beta_scale",
            ],
            "additionalProperties": False,
            "properties": {
                "tau_min": {"type": "number"},
                "tau_max": {"type": "number"},
                "tau_points": {"type": "integer", "minimum": 2},
                "beta_min": {"type": "number", "exclusiveMinimum": 0},
                "beta_max": {"type": "number", "exclusiveMinimum": 0},
                "beta_points": {"type": "integer", "minimum": 2},
                "beta_scale": {"enum": ["linear", "log"]},
            },
        },
        "quantity": {"enum": list(GRID_QUANTITIES)},
        "values": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}},
        },
    },
}


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


@dataclass(frozen=True)
class GridSpec:
    tau_min: float = 0.0
    tau_max: float = 2.0 * math.pi
    tau_points: int = 201
    beta_min: float = 0.25
    beta_max: float = 4.0
    beta_points: int = 129
    beta_scale: str = "log"

    def __post_init__(self):
        for name in ("tau_min", "tau_max", "beta_min", "beta_max"):
            object.__setattr__(self, name, check_finite_scalar(getattr(self, name), name))
        for name in ("tau_points", "beta_points"):
            value = getattr(self, name)
            if int(value) != value or value < 2:
                raise DomainError(f"{name} must be an integer >= 2, got {value!r}")
            object.__setattr__(self, name, int(value))
        if not self.tau_min < self.tau_max:
            raise DomainError("tau_min must be below tau_max")
        if not 0.0 < self.beta_min < self.beta_max:
            raise DomainError("need 0 < beta_min < beta_max")
        if self.beta_scale not in ("linear", "log"):
            raise DomainError(f"beta_scale must be 'linear' or 'log', got {self.beta_scale!r}")

    def taus(self) -> np.ndarray:
        return np.linspace(self.tau_min, self.tau_max, self.tau_points)

    def betas(self) -> np.ndarray:
        if self.beta_scale == "linear":
            return np.linspace(self.beta_min, self.beta_max, self.beta_points)
        lo, hi = math.log(self.beta_min), math.log(self.beta_max)
        exps = np.linspace(lo, hi, self.beta_points)
        if math.isclose(lo, -hi, rel_tol=0.0, abs_tol=1e-15):
            # Mirror so that node k and node n-1-k are exact reciprocals.
            exps = 0.5 * (exps - exps[::-1])
        return np.exp(exps)


@dataclass(frozen=True, eq=False)
class GridResult:
    spec: GridSpec
    quantity: str
    values: np.ndarray = field(repr=False)

    def to_csv(self) -> str:
        buf = io.StringIO(newline="")
        buf.write(
            f"# quantity={self.quantity} tau_points={self.spec.tau_points} "
            f"beta_points={self.spec.beta_points}\n"
        )
        buf.write("tau,beta,value\n")
        taus, betas = self.spec.taus(), self.spec.betas()
        for i, tau in enumerate(taus):
            row = self.values[i]
            for j, beta in enumerate(betas):
                buf.write(f"{_fmt(tau)},{_fmt(beta)},{_fmt(row[j])}\n")
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "spec": asdict(self.spec),
            "quantity": self.quantity,
            "values": self.values.tolist(),
        }
        return json.dumps(doc, indent=1) + "\n"


def grid(spec: GridSpec, quantity: str = "prob_AB") -> GridResult:
    """Evaluate a closed-form quantity on every (tau, beta) node."""
    if quantity not in _CLOSED_FORMS:
        raise DomainError(f"unknown quantity {quantity!r}; choose from {', '.join(GRID_QUANTITIES)}")
    taus, betas = spec.taus(), spec.betas()
    # Route through ModelParams so every node obeys the same domain checks.
    nodes = [params_from_beta(1.0, b) for b in betas]
    omegas = np.array([p.omega for p in nodes])
    betas_used = np.array([p.beta for p in nodes])
    phase = taus[:, None] * omegas[None, :]
    values = np.asarray(_CLOSED_FORMS[quantity](betas_used[None, :], phase), dtype=float)
    if not np.all(np.isfinite(values)):
        raise DomainError(f"non-finite values in {quantity} grid")
    return GridResult(spec, quantity, values)


def read_grid_json(text: str) -> GridResult:
    doc = json.loads(text)
    spec = GridSpec(**doc["spec"])
    values = np.array(doc["values"], dtype=float).reshape(spec.tau_points, spec.beta_points)
    return GridResult(spec, doc["quantity"], values)


def read_grid_csv(text: str, spec: GridSpec) -> GridResult:
    lines = text.split("\n")
    header = dict(item.split("=", 1) for item in lines[0].lstrip("# ").split())
    if int(header["tau_points"]) != spec.tau_points or int(header["beta_points"]) != spec.beta_points:
        raise DomainError("CSV dimensions do not match the grid spec")
    rows = [line.split(",") for line in lines[2:] if line]
    values = np.array([float(r[2]) for r in rows]).reshape(spec.tau_points, spec.beta_points)
    return GridResult(spec, header["quantity"], values)


# ---------------------------------------------------------------------------
# time series

TIMESERIES_COLUMNS = (
    "N_A", "N_B",
    "P_AB", "P_AA", "P_BA", "P_BB",
    "norm_A", "norm_B", "ratio",
    "n_A", "n_B",
)
ORACLE_COLUMNS = ("oracle_P_AB", "oracle_P_BA", "oracle_N_A", "oracle_norm_A")


@dataclass(frozen=True, eq=False)
class TimeSeries:
    params: ModelParams
    columns: tuple
    data: np.ndarray

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    def to_csv(self) -> str:
        buf = io.StringIO(newline="")
        buf.write(f"# g={_fmt(self.params.g)} alpha={_fmt(self.params.alpha)} beta={_fmt(self.params.beta)}\n")
        buf.write(",".join(self.columns) + "\n")
        for row in self.data:
            buf.write(",".join(_fmt(x) for x in row) + "\n")
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "params": {"g": self.params.g, "alpha": self.params.alpha, "beta": self.params.beta},
            "columns": list(self.columns),
            "rows": self.data.tolist(),
        }
        return json.dumps(doc, indent=1) + "\n"


def uniform_taus(tau_max: float, points: int, tau_min: float = 0.0) -> np.ndarray:
    """``tau_min + k * spacing``, built the same way :func:`integrate` builds its nodes."""
    if points < 2 or not tau_max > tau_min:
        raise DomainError("need points >= 2 and tau_max > tau_min")
    spacing = (tau_max - tau_min) / (points - 1)
    return tau_min + spacing * np.arange(points)


def timeseries(
    params: ModelParams,
    tau_grid: np.ndarray,
    quantities=("N_A", "N_B"),
    initial: tuple[float, float] = (1.0, 0.0),
    max_step: float = DEFAULT_STEP,
) -> TimeSeries:
    """Tabulate per-tau columns; quantum columns assume the excitation starts on A.

    Semiclassical columns ``n_A``/``n_B`` need a uniform ``tau_grid``; the
    integrator runs at ``spacing / m`` with the smallest ``m`` keeping the step
    at or below ``max_step``, and every ``m``-th sample is reported.
    Columns prefixed ``oracle_`` come from the matrix-exponential propagator.
    """
    taus = np.asarray(tau_grid, dtype=float)
    quantities = tuple(quantities)
    allowed = TIMESERIES_COLUMNS + ORACLE_COLUMNS
    unknown = [q for q in quantities if q not in allowed]
    if unknown:
        raise DomainError(f"unknown timeseries columns {unknown}; choose from {', '.join(allowed)}")

    beta = params.beta
    phase = params.omega * params.to_time(taus)
    closed = {
        "N_A": lambda: dynamics.prob_aa(beta, phase),
        "N_B": lambda: dynamics.prob_ab(beta, phase),
        "P_AB": lambda: dynamics.prob_ab(beta, phase),
        "P_AA": lambda: dynamics.prob_aa(beta, phase),
        "P_BA": lambda: dynamics.prob_ba(beta, phase),
        "P_BB": lambda: dynamics.prob_bb(beta, phase),
        "norm_A": lambda: dynamics.norm_a(beta, phase),
        "norm_B": lambda: dynamics.norm_b(beta, phase),
        "ratio": lambda: dynamics.ratio(beta, phase),
    }
    times = params.to_time(taus)
    oracle = {
        "oracle_P_AB": lambda: [dynamics.numeric_probability(params, Site.A, Site.B, t) for t in times],
        "oracle_P_BA": lambda: [dynamics.numeric_probability(params, Site.B, Site.A, t) for t in times],
        "oracle_N_A": lambda: [dynamics.numeric_occupation(params, Site.A, Site.A, t) for t in times],
        "oracle_norm_A": lambda: [dynamics.numeric_norm_factor(params, Site.A, t).real for t in times],
    }

    columns = {"tau": taus}
    if "n_A" in quantities or "n_B" in quantities:
        n_a, n_b = _semiclassical_columns(params, taus, initial, max_step)
        columns["n_A"], columns["n_B"] = n_a, n_b
    for q in quantities:
        if q in closed:
            columns[q] = np.asarray(closed[q](), dtype=float)
        elif q in oracle:
            columns[q] = np.asarray(oracle[q](), dtype=float)

    names = ("tau",) + quantities
    data = np.column_stack([columns[n] for n in names])
    return TimeSeries(params, names, data)


def _semiclassical_columns(params, taus, initial, max_step):
    if taus.shape[0] < 2:
        raise DomainError("semiclassical columns need at least two tau nodes")
    spacing = (taus[-1] - taus[0]) / (taus.shape[0] - 1)
    if not np.allclose(np.diff(taus), spacing, rtol=1e-9, atol=1e-12):
        raise DomainError("semiclassical columns need a uniform tau grid")
    substeps = max(1, math.ceil(spacing / max_step - 1e-9))
    traj = integrate(
        RatePopulations(initial[0], initial[1], float(taus[0])),
        params,
        tau_end=float(taus[-1]),
        step=spacing / substeps,
    )
    picked = slice(0, None, substeps)
    return traj.n_A[picked][: taus.shape[0]], traj.n_B[picked][: taus.shape[0]]
