"""Command-line entry point.

Subcommands ``fig3``..``fig7`` regenerate the canned experiments as CSV
files (plus a resolved-scenario JSON sidecar); ``eval`` prints a single
analytic + Monte Carlo evaluation as one JSON line; ``optimize`` runs the
GA, writes its convergence trace, and prints the best settings.  Exit
code is 0 on success; handled failures print one machine-readable JSON
line to stderr and return 2.

    ehrelay fig3 --out fig3.csv --samples 200000 --seed 7
    ehrelay eval --scenario scenario.json
    ehrelay optimize --out trace.csv
"""

import argparse
import json
import sys
from dataclasses import replace

from .analytic import outage_capacity, outage_probability
from .errors import InternalConsistencyError, ParameterError
from .experiments import (RUNNERS, Scenario, SweepRow, load_scenario,
                          scenario_from_dict, write_csv, write_sidecar)
from .model import Protocol, ProtocolConfig
from .montecarlo import estimate_outage
from .optimizer import ga_optimize

_EXPERIMENT_HELP = {
    "fig3": "analytic vs Monte Carlo outage over a rho sweep",
    "fig4": "closed-form outage surface over rho (and theta for TSFPR)",
    "fig5": "grid-optimal outage/capacity vs relay location (d2 = 2 - d1)",
    "fig6": "grid-optimal outage/capacity vs the power ratio P2/P1",
    "fig7": "GA convergence trace (best outage per generation)",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ehrelay",
        description="Outage analysis for energy-harvesting two-way relaying")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = dict(_EXPERIMENT_HELP)
    commands["eval"] = "print one analytic + Monte Carlo evaluation as JSON"
    commands["optimize"] = "run the GA and write its convergence trace"
    for name, help_text in commands.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--scenario", metavar="PATH",
                       help="scenario JSON file; defaults apply when omitted")
        p.add_argument("--out", metavar="PATH",
                       help="output CSV path (default: <command>.csv)")
        p.add_argument("--seed", type=int, metavar="U64",
                       help="override both the MC and GA seeds")
        p.add_argument("--samples", type=int, metavar="N",
                       help="override the MC sample count")
    return parser


def _load(args) -> Scenario:
    if args.scenario:
        scenario = load_scenario(args.scenario)
    else:
        scenario = scenario_from_dict({})
    if args.seed is not None:
        scenario = replace(scenario,
                           mc=replace(scenario.mc, seed=args.seed),
                           ga=replace(scenario.ga, seed=args.seed))
    if args.samples is not None:
        scenario = replace(scenario, mc=replace(scenario.mc,
                                                n_samples=args.samples))
    return scenario


def _run_eval(scenario: Scenario) -> dict:
    """Analytic and MC outage plus capacities at the scenario's (rho, theta)."""
    result = {"rho": scenario.rho}
    for kind in scenario.kinds:
        config = ProtocolConfig(kind, scenario.rho, scenario.theta)
        ov = outage_probability(scenario.params, config)
        est = estimate_outage(scenario.params, config, scenario.mc)
        entry = {
            "p_out": ov.probability,
            "branch": ov.branch.value,
            "p_hat": est.p_hat,
            "std_err": est.std_err,
            "n_samples": est.n_samples,
            "capacity": outage_capacity(scenario.params, config,
                                        ov.probability),
        }
        if kind is Protocol.TSFPR:
            entry["theta"] = scenario.theta
        result[kind.value] = entry
    return result


def _run_optimize(scenario: Scenario, out: str) -> dict:
    """GA per selected protocol; trace rows go to ``out``, summary to stdout."""
    rows = []
    result = {"trace": out}
    for kind in scenario.kinds:
        best, trace = ga_optimize(scenario.params, kind, scenario.ga)
        for t, q in enumerate(trace.q_min):
            rows.append(SweepRow(protocol=kind.value, generation=t, q_min=q))
        entry = {
            "rho": best.genes[0],
            "p_out": best.fitness,
            "generations": trace.generations,
            "terminated_by": trace.terminated_by.value,
        }
        if kind is Protocol.TSFPR:
            entry["theta"] = best.genes[1]
        result[kind.value] = entry
    write_csv(rows, out)
    result["sidecar"] = write_sidecar(scenario, "optimize", out)
    return result


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = _load(args)
        if args.command in RUNNERS:
            rows = RUNNERS[args.command](scenario)
            out = args.out or f"{args.command}.csv"
            write_csv(rows, out)
            sidecar = write_sidecar(scenario, args.command, out)
            print(json.dumps({"out": out, "sidecar": sidecar,
                              "rows": len(rows)}))
        elif args.command == "eval":
            print(json.dumps(_run_eval(scenario)))
        else:
            print(json.dumps(_run_optimize(scenario,
                                           args.out or "optimize.csv")))
    except (ParameterError, InternalConsistencyError, OSError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
