"""Sweep harness that regenerates the reference result tables as files.

Five canned experiments mirror the figures of record: analytic-vs-MC
outage over rho (fig3), the rho x theta outage surface (fig4), optimal
outage versus relay location (fig5), versus the power ratio P2/P1 (fig6),
and the GA convergence trace (fig7).  Each produces a list of
:class:`SweepRow` records, written as a CSV with one fixed header plus a
JSON sidecar holding the fully resolved scenario for provenance.  All
randomness is seeded and all iteration orders are fixed, so identical
scenario files yield byte-identical outputs.

A scenario is a single optional JSON file; every field has a documented
default (see ``DEFAULT_SCENARIO``).  Sweep specifications give either
``start``/``stop``/``step`` or an explicit ``values`` list for one or two
of the variables ``rho``, ``theta``, ``d1``, ``P2``.
"""

import csv
import json
import math
from dataclasses import asdict, dataclass, fields, replace
from typing import Optional

from .analytic import outage_capacity, outage_probability
from .errors import ParameterError
from .model import (FadingModel, NoiseModel, Protocol, ProtocolConfig,
                    SystemParams)
from .montecarlo import McConfig, estimate_outage
from .optimizer import GaConfig, ga_optimize, grid_search

DEFAULT_SCENARIO = {
    "params": {
        "P1": 1.0, "P2": 1.0, "d1": 1.0, "d2": 1.0, "m": 2.7, "eta": 1.0,
        "R0": 1.0, "T": 1.0, "B": 1.0,
        "noise": {
            "sigma2_r_a": [0.01, 0.01], "sigma2_r_c": [0.01, 0.01],
            "sigma2_u_a": [0.01, 0.01], "sigma2_u_c": [0.01, 0.01],
        },
        "fading": {
            "lambda_h1": 1.0, "lambda_h2": 1.0,
            "lambda_f1": 1.0, "lambda_f2": 1.0,
        },
    },
    "protocol": {"kind": "both", "rho": 0.5, "theta": 0.5},
    "sweep": None,
    "mc": {"n_samples": 1_000_000, "seed": 0, "workers": 1},
    "ga": {"k_ini": 100, "epsilon": 0.5, "mu": 0.05, "delta": 1e-5,
           "max_generations": 500, "seed": 0},
    "grid_resolution": 0.01,
}

#: Domain of each sweepable variable (closed bounds; None = unbounded).
_SWEEP_DOMAINS = {
    "rho": (0.0, 1.0),
    "theta": (0.0, 1.0),
    "d1": (0.0, None),  # exclusive lower bound, checked separately
    "P2": (0.0, None),
}


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable and the ordered values it takes."""

    variable: str
    values: tuple

    def __post_init__(self):
        if self.variable not in _SWEEP_DOMAINS:
            raise ParameterError(
                f"unknown sweep variable {self.variable!r}; "
                f"expected one of {sorted(_SWEEP_DOMAINS)}")
        if not self.values:
            raise ParameterError(f"sweep over {self.variable!r} has no values")
        lo, hi = _SWEEP_DOMAINS[self.variable]
        for v in self.values:
            if not math.isfinite(v):
                raise ParameterError(f"sweep value {v!r} is not finite")
            if v < lo or (lo == 0.0 and v == 0.0 and self.variable in ("d1", "P2")):
                raise ParameterError(
                    f"sweep value {v} outside the domain of {self.variable!r}")
            if hi is not None and v > hi:
                raise ParameterError(
                    f"sweep value {v} outside the domain of {self.variable!r}")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ParameterError(
                f"sweep values for {self.variable!r} must be strictly increasing")


@dataclass(frozen=True)
class Scenario:
    """A fully resolved experiment description."""

    params: SystemParams
    kinds: tuple
    rho: float
    theta: float
    sweeps: tuple
    mc: McConfig
    ga: GaConfig
    grid_resolution: float

    def sweep_for(self, variable: str) -> Optional[SweepSpec]:
        for spec in self.sweeps:
            if spec.variable == variable:
                return spec
        return None


@dataclass(frozen=True)
class SweepRow:
    """One output record; unused columns stay empty in the CSV.

    The same header serves all five experiments: swept variables
    (rho/theta/d1/d2/P1/P2), the analytic outage ``p_out`` with its
    closed-form ``branch``, the Monte Carlo estimate ``p_hat`` with
    ``std_err``, the analytic outage ``capacity``, grid-optimal settings
    (``rho_opt``/``theta_opt``/``p_out_opt``), and the GA trace columns
    (``generation``/``q_min``).
    """

    protocol: str
    rho: Optional[float] = None
    theta: Optional[float] = None
    d1: Optional[float] = None
    d2: Optional[float] = None
    P1: Optional[float] = None
    P2: Optional[float] = None
    p_out: Optional[float] = None
    branch: Optional[str] = None
    p_hat: Optional[float] = None
    std_err: Optional[float] = None
    capacity: Optional[float] = None
    rho_opt: Optional[float] = None
    theta_opt: Optional[float] = None
    p_out_opt: Optional[float] = None
    generation: Optional[int] = None
    q_min: Optional[float] = None

    def __post_init__(self):
        for name in ("p_out", "p_hat", "p_out_opt", "q_min"):
            v = getattr(self, name)
            if v is not None and not 0.0 <= v <= 1.0:
                raise ParameterError(f"{name}={v!r} is not a probability")


def _merge(defaults, data, path=""):
    if not isinstance(data, dict):
        raise ParameterError(f"scenario section {path or '<root>'!r} must be an object")
    out = dict(defaults)
    for key, value in data.items():
        if key not in defaults:
            raise ParameterError(f"unknown scenario field {path + key!r}")
        if isinstance(defaults[key], dict) and key != "sweep":
            out[key] = _merge(defaults[key], value, f"{path}{key}.")
        else:
            out[key] = value
    return out


def _sweep_values(spec: dict, path: str) -> tuple:
    known = {"variable", "start", "stop", "step", "values"}
    unknown = set(spec) - known
    if unknown:
        raise ParameterError(f"unknown sweep field {path}{sorted(unknown)[0]!r}")
    if "variable" not in spec:
        raise ParameterError(f"sweep at {path or '<root>'} needs a 'variable'")
    if "values" in spec:
        if any(k in spec for k in ("start", "stop", "step")):
            raise ParameterError(
                "give either explicit sweep 'values' or start/stop/step, not both")
        return tuple(float(v) for v in spec["values"])
    try:
        start, stop, step = (float(spec[k]) for k in ("start", "stop", "step"))
    except KeyError as missing:
        raise ParameterError(f"sweep over {spec['variable']!r} is missing "
                             f"{missing.args[0]!r}") from None
    if step <= 0 or stop < start:
        raise ParameterError("sweep needs step > 0 and stop >= start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(round(start + i * step, 10) for i in range(count))


def scenario_from_dict(data: dict) -> Scenario:
    """Build a validated Scenario from a (possibly partial) plain dict."""
    raw = _merge(DEFAULT_SCENARIO, data)
    p = raw["params"]
    params = SystemParams(
        P1=p["P1"], P2=p["P2"], d1=p["d1"], d2=p["d2"], m=p["m"],
        eta=p["eta"], R0=p["R0"], T=p["T"], B=p["B"],
        noise=NoiseModel(**{k: tuple(v) for k, v in p["noise"].items()}),
        fading=FadingModel(**p["fading"]),
    )
    kind_name = str(raw["protocol"]["kind"]).lower()
    if kind_name == "both":
        kinds = (Protocol.TSNCR, Protocol.TSFPR)
    else:
        try:
            kinds = (Protocol(kind_name),)
        except ValueError:
            raise ParameterError(
                f"protocol kind must be 'tsncr', 'tsfpr' or 'both', "
                f"got {kind_name!r}") from None
    sweep_raw = raw["sweep"]
    if sweep_raw is None:
        sweep_list = []
    elif isinstance(sweep_raw, dict):
        sweep_list = [sweep_raw]
    else:
        sweep_list = list(sweep_raw)
    if len(sweep_list) > 2:
        raise ParameterError("at most two sweep variables are supported")
    sweeps = tuple(SweepSpec(spec["variable"], _sweep_values(spec, f"sweep[{i}]."))
                   for i, spec in enumerate(sweep_list))
    if len({s.variable for s in sweeps}) != len(sweeps):
        raise ParameterError("sweep variables must be distinct")
    rho = float(raw["protocol"]["rho"])
    theta = float(raw["protocol"]["theta"])
    scenario = Scenario(
        params=params,
        kinds=kinds,
        rho=rho,
        theta=theta,
        sweeps=sweeps,
        mc=McConfig(**raw["mc"]),
        ga=GaConfig(**raw["ga"]),
        grid_resolution=float(raw["grid_resolution"]),
    )
    ProtocolConfig(kinds[0], rho, theta)  # bounds check for rho/theta
    if not 0 < scenario.grid_resolution <= 0.1:
        raise ParameterError("grid_resolution must be in (0, 0.1]")
    return scenario


def load_scenario(path: str) -> Scenario:
    """Read and validate a scenario JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"scenario file {path!r} is not valid JSON: {exc}") from None
    return scenario_from_dict(data)


def resolved_dict(scenario: Scenario, experiment: str) -> dict:
    """JSON-ready snapshot of a scenario with every default filled in."""
    return {
        "experiment": experiment,
        "params": asdict(scenario.params),
        "protocol": {"kind": [k.value for k in scenario.kinds],
                     "rho": scenario.rho, "theta": scenario.theta},
        "sweep": [{"variable": s.variable, "values": list(s.values)}
                  for s in scenario.sweeps],
        "mc": asdict(scenario.mc),
        "ga": asdict(scenario.ga),
        "grid_resolution": scenario.grid_resolution,
    }


def _default_sweep(scenario: Scenario, variable: str, start, stop, step) -> tuple:
    spec = scenario.sweep_for(variable)
    if spec is not None:
        return spec.values
    count = int(round((stop - start) / step)) + 1
    return tuple(round(start + i * step, 10) for i in range(count))


def _row_seed(base: int, index: int) -> int:
    return (base + index) % 2 ** 64


def run_fig3(scenario: Scenario) -> list:
    """Analytic and Monte Carlo outage side by side over a rho sweep.

    Runs every selected protocol at the symmetric power split (the
    experiment is defined at theta = 0.5 and refuses anything else).
    Row i uses the derived seed mc.seed + i so rows are independent.
    """
    if scenario.theta != 0.5:
        raise ParameterError("the fig3 experiment is defined at theta = 0.5")
    rhos = _default_sweep(scenario, "rho", 0.0, 1.0, 0.05)
    rows = []
    for kind in scenario.kinds:
        for i, rho in enumerate(rhos):
            config = ProtocolConfig(kind, rho, scenario.theta)
            ov = outage_probability(scenario.params, config)
            mc = replace(scenario.mc,
                         seed=_row_seed(scenario.mc.seed, len(rows)))
            est = estimate_outage(scenario.params, config, mc)
            rows.append(SweepRow(
                protocol=kind.value,
                rho=rho,
                theta=scenario.theta if kind is Protocol.TSFPR else None,
                p_out=ov.probability,
                branch=ov.branch.value,
                p_hat=est.p_hat,
                std_err=est.std_err,
                capacity=outage_capacity(scenario.params, config,
                                         ov.probability),
            ))
    return rows


def run_fig4(scenario: Scenario) -> list:
    """Closed-form outage surface: a rho curve for TSNCR and, for TSFPR,
    the full rho x theta grid (default resolution 0.01 on both axes)."""
    rhos = _default_sweep(scenario, "rho", 0.0, 1.0, 0.01)
    thetas = _default_sweep(scenario, "theta", 0.0, 1.0, 0.01)
    rows = []
    for kind in scenario.kinds:
        if kind is Protocol.TSNCR:
            for rho in rhos:
                ov = outage_probability(scenario.params,
                                        ProtocolConfig(kind, rho))
                rows.append(SweepRow(protocol=kind.value, rho=rho,
                                     p_out=ov.probability,
                                     branch=ov.branch.value))
        else:
            for rho in rhos:
                for theta in thetas:
                    ov = outage_probability(scenario.params,
                                            ProtocolConfig(kind, rho, theta))
                    rows.append(SweepRow(protocol=kind.value, rho=rho,
                                         theta=theta, p_out=ov.probability,
                                         branch=ov.branch.value))
    return rows


def run_fig5(scenario: Scenario) -> list:
    """Grid-optimal outage and capacity while the relay slides between the
    users: d1 sweeps with d2 = 2 - d1 on a fixed total distance of 2."""
    d1s = _default_sweep(scenario, "d1", 0.4, 1.6, 0.1)
    if any(not 0.0 < d1 < 2.0 for d1 in d1s):
        raise ParameterError("fig5 requires 0 < d1 < 2 so that d2 = 2 - d1 > 0")
    rows = []
    for kind in scenario.kinds:
        for d1 in d1s:
            d2 = round(2.0 - d1, 10)
            params = replace(scenario.params, d1=d1, d2=d2)
            best = grid_search(params, kind, scenario.grid_resolution)
            theta_opt = best.theta if kind is Protocol.TSFPR else None
            config = ProtocolConfig(kind, best.rho,
                                    0.5 if theta_opt is None else theta_opt)
            rows.append(SweepRow(
                protocol=kind.value, d1=d1, d2=d2,
                rho_opt=best.rho, theta_opt=theta_opt,
                p_out_opt=best.objective,
                capacity=outage_capacity(params, config, best.objective),
            ))
    return rows


def run_fig6(scenario: Scenario) -> list:
    """Grid-optimal outage and capacity as U2's power grows: P2 sweeps
    (default 0.5 to 1.5 in steps of 0.25) at fixed P1."""
    p2s = _default_sweep(scenario, "P2", 0.5, 1.5, 0.25)
    rows = []
    for kind in scenario.kinds:
        for p2 in p2s:
            params = replace(scenario.params, P2=p2)
            best = grid_search(params, kind, scenario.grid_resolution)
            theta_opt = best.theta if kind is Protocol.TSFPR else None
            config = ProtocolConfig(kind, best.rho,
                                    0.5 if theta_opt is None else theta_opt)
            rows.append(SweepRow(
                protocol=kind.value, P1=scenario.params.P1, P2=p2,
                rho_opt=best.rho, theta_opt=theta_opt,
                p_out_opt=best.objective,
                capacity=outage_capacity(params, config, best.objective),
            ))
    return rows


def run_fig7(scenario: Scenario) -> list:
    """GA convergence trace: best objective per generation, per protocol."""
    rows = []
    for kind in scenario.kinds:
        _, trace = ga_optimize(scenario.params, kind, scenario.ga)
        for t, q in enumerate(trace.q_min):
            rows.append(SweepRow(protocol=kind.value, generation=t, q_min=q))
    return rows


RUNNERS = {
    "fig3": run_fig3,
    "fig4": run_fig4,
    "fig5": run_fig5,
    "fig6": run_fig6,
    "fig7": run_fig7,
}


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def write_csv(rows, path: str) -> None:
    """Write rows under the fixed SweepRow header; bytes are a pure
    function of the row values (LF line endings, repr float format)."""
    header = [f.name for f in fields(SweepRow)]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_cell(getattr(row, name))
                             for name in header])


def sidecar_path(out_path: str) -> str:
    base = out_path[:-4] if out_path.endswith(".csv") else out_path
    return base + ".scenario.json"


def write_sidecar(scenario: Scenario, experiment: str, out_path: str) -> str:
    """Write the resolved-scenario JSON next to a CSV; returns its path."""
    path = sidecar_path(out_path)
    payload = json.dumps(resolved_dict(scenario, experiment),
                         indent=2, sort_keys=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(payload + "\n")
    return path
