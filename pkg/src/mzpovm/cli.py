"""Command-line front end: run one experiment, sweep a parameter, verify.

Subcommands
-----------
run     Evaluate one configuration: output probabilities, the extracted
        POVM with classified marginals, per-probe-outcome conditional
        detector probabilities, and every applicable relation report, as
        canonical JSON (sorted keys, shortest round-trip floats) on
        standard output.
sweep   Emit plot-ready CSV, one row per step of delta, gamma or theta.
exit    codes: 0 success, 1 verification failure, 2 usage error.
verify  Run the full invariant suite and print a pass/fail table.

Angles are radians; pass --degrees to convert every angle flag at parse
time. Complex numbers serialize as [re, im] pairs, matrices row-major.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import extraction, interferometer, linalg, oracle, povm, relations, verify
from .errors import MzPovmError, ZeroProbabilityCondition

SWEEP_COLUMNS = [
    "param_value",
    "p11",
    "p12",
    "p21",
    "p22",
    "F_contrast",
    "G_contrast",
    "H_contrast",
    "C_P",
    "C_Ix",
    "D",
    "V_e",
    "duality_slack",
]


class UsageError(Exception):
    pass


def _parse_input(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError(f"--input wants re,im,re,im (4 reals), got {len(parts)} fields")
    try:
        reals = [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"--input fields must be numbers: {exc}") from None
    v = np.array([reals[0] + 1j * reals[1], reals[2] + 1j * reals[3]])
    n = float(np.linalg.norm(v))
    if abs(n * n - 1.0) > 1e-6:
        raise UsageError(f"input state squared norm {n * n!r} deviates from 1 by more than 1e-6")
    if abs(n * n - 1.0) > 1e-10:
        print(f"note: renormalizing input state (norm {n!r})", file=sys.stderr)
    return v / n


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _matrix(m: np.ndarray) -> list[list[list[float]]]:
    return [[_complex_pair(complex(m[i, j])) for j in range(m.shape[1])] for i in range(m.shape[0])]


def _povm_dict(p: povm.DiscretePovm) -> dict:
    return {e.label: _matrix(e.operator) for e in p.effects}


def _classify(p: povm.DiscretePovm) -> dict:
    cls = povm.validate(p)
    if not cls.valid:
        kind = "invalid"
    elif cls.trivial:
        kind = "trivial"
    elif cls.sharp:
        kind = "sharp"
    else:
        kind = "unsharp"
    return {"valid": cls.valid, "sharp": cls.sharp, "trivial": cls.trivial, "kind": kind}


def _report_dict(r: relations.RelationReport) -> dict:
    return {
        "name": r.name,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "kind": r.kind,
        "satisfied": r.satisfied,
        "slack": r.slack,
    }


def _bloch_list(v) -> list[float] | None:
    if v is None:
        return None
    return [float(x) for x in v]


def _config_from_args(args) -> interferometer.MzConfig:
    fields = {"experiment": args.experiment, "delta": args.delta, "gamma": args.gamma, "theta": args.theta}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            file_fields = json.load(fh)
        for key in ("experiment", "delta", "gamma", "theta"):
            if fields[key] is None and key in file_fields:
                fields[key] = file_fields[key]
    if fields["experiment"] is None:
        raise UsageError("an experiment must be given via --experiment or --config")
    scale = math.pi / 180.0 if args.degrees else 1.0
    return interferometer.MzConfig(
        experiment=fields["experiment"],
        delta=scale * float(fields["delta"] or 0.0),
        gamma=scale * float(fields["gamma"] or 0.0),
        theta=scale * float(fields["theta"] or 0.0),
    )


def _input_from_args(args) -> np.ndarray:
    text = args.input
    if text is None and getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            file_fields = json.load(fh)
        if "input" in file_fields:
            reals = file_fields["input"]
            text = ",".join(str(float(x)) for x in reals)
    if text is None:
        text = "0.7071067811865476,0,0.7071067811865476,0"
    return _parse_input(text)


def evaluate_run(config: interferometer.MzConfig, psi: np.ndarray) -> dict:
    """The full report for one configuration and input state."""
    scheme = extraction.scheme_for(config)
    measured = extraction.extract_povm(scheme)
    probabilities = oracle.direct_probabilities(scheme, psi)
    rho = linalg.pure_density(psi)

    reports = [relations.variance_ur(rho)]
    reports.append(relations.entropic_bound(relations.pauli_pvm("z"), relations.pauli_pvm("x"), psi))
    reports.extend(relations.triple_relations(rho))

    report: dict = {
        "config": {
            "experiment": config.experiment,
            "delta": config.delta,
            "gamma": config.gamma,
            "theta": config.theta,
            "effective_delta": interferometer.effective_delta(config),
        },
        "input": [_complex_pair(complex(psi[0])), _complex_pair(complex(psi[1]))],
        "probabilities": {label: float(p) for label, p in probabilities.items()},
        "povm": _povm_dict(measured),
        "povm_classification": _classify(measured),
    }

    probes = interferometer.probes_for(config)
    audit = relations.erasure_duality(complex(psi[0]), complex(psi[1]), probes.p1, probes.p2)
    reports.extend([audit.duality, audit.variance_tradeoff])
    report["distinguishability"] = {
        "D": audit.inference.distinguishability,
        "L": audit.inference.max_correct_probability,
        "r0": _bloch_list(audit.inference.pointer_direction),
    }
    report["visibility"] = {
        "V_e": audit.visibility.value,
        "n": _bloch_list(audit.visibility.direction),
    }

    if len(measured.effects) == 4:
        grouped = extraction.marginals_of(measured)
        report["marginals"] = {
            "F": {"effects": _povm_dict(grouped.detector), "classification": _classify(grouped.detector)},
            "G": {"effects": _povm_dict(grouped.probe), "classification": _classify(grouped.probe)},
            "H": {"effects": _povm_dict(grouped.coincidence), "classification": _classify(grouped.coincidence)},
        }
        conditional = {}
        for probe_label in ("1", "2"):
            try:
                conditional[probe_label] = extraction.conditional_probabilities(
                    measured, probe_label, psi
                )
            except ZeroProbabilityCondition:
                conditional[probe_label] = None
        report["conditional_probabilities"] = conditional

    report["relations"] = [_report_dict(r) for r in reports]
    return report


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(float(value))


def sweep_rows(config: interferometer.MzConfig, psi: np.ndarray, param: str, start: float, stop: float, steps: int):
    """One CSV row of probabilities, contrasts and duality data per step."""
    values = np.linspace(start, stop, steps)
    state_contrast = relations.contrasts(linalg.pure_density(psi))
    for value in values:
        fields = {
            "experiment": config.experiment,
            "delta": config.delta,
            "gamma": config.gamma,
            "theta": config.theta,
        }
        fields[param] = float(value)
        step_config = interferometer.MzConfig(**fields)
        scheme = extraction.scheme_for(step_config)
        measured = extraction.extract_povm(scheme)
        probabilities = oracle.direct_probabilities(scheme, psi)
        row = {name: None for name in SWEEP_COLUMNS}
        row["param_value"] = float(value)
        row["C_P"] = state_contrast.path
        row["C_Ix"] = state_contrast.interference_x
        if len(measured.effects) == 4:
            for label in ("11", "12", "21", "22"):
                row["p" + label] = probabilities[label]
            grouped = extraction.marginals_of(measured)
            row["F_contrast"] = povm.contrast(grouped.detector)
            row["G_contrast"] = povm.contrast(grouped.probe)
            row["H_contrast"] = povm.contrast(grouped.coincidence)
        else:
            row["F_contrast"] = povm.contrast(measured)
        probes = interferometer.probes_for(step_config)
        audit = relations.erasure_duality(complex(psi[0]), complex(psi[1]), probes.p1, probes.p2)
        row["D"] = audit.inference.distinguishability
        row["V_e"] = audit.visibility.value
        row["duality_slack"] = audit.duality.slack
        yield row


def _add_common_flags(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--experiment",
        choices=interferometer.EXPERIMENTS,
        default=None,
        help="experiment kind",
    )
    parser.add_argument("--delta", type=float, default=None, help="phase shift (radians)")
    parser.add_argument("--gamma", type=float, default=None, help="erasure pointer phase (radians)")
    parser.add_argument("--theta", type=float, default=None, help="marker tilt (radians)")
    parser.add_argument("--input", default=None, help="photon input as re,im,re,im")
    parser.add_argument("--config", default=None, help="JSON file with the same fields; flags override")
    parser.add_argument("--degrees", action="store_true", help="interpret all angles in degrees")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mzpovm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="evaluate one experiment configuration")
    _add_common_flags(run_p)

    sweep_p = sub.add_parser("sweep", help="sweep one angle, emitting CSV")
    _add_common_flags(sweep_p)
    sweep_p.add_argument("--param", choices=("delta", "gamma", "theta"), required=True)
    sweep_p.add_argument("--from", dest="start", type=float, required=True)
    sweep_p.add_argument("--to", dest="stop", type=float, required=True)
    sweep_p.add_argument("--steps", type=int, required=True)

    verify_p = sub.add_parser("verify", help="run the invariant suite")
    verify_p.add_argument("--seed", type=int, default=42)
    verify_p.add_argument("--samples", type=int, default=100)
    verify_p.add_argument("--tol", type=float, default=1e-10)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            config = _config_from_args(args)
            psi = _input_from_args(args)
            print(render_json(evaluate_run(config, psi)))
            return 0
        if args.command == "sweep":
            config = _config_from_args(args)
            psi = _input_from_args(args)
            if not args.start < args.stop:
                raise UsageError("--from must be strictly below --to")
            if not 2 <= args.steps <= 100000:
                raise UsageError("--steps must lie in [2, 100000]")
            scale = math.pi / 180.0 if args.degrees else 1.0
            print(",".join(SWEEP_COLUMNS))
            for row in sweep_rows(
                config, psi, args.param, scale * args.start, scale * args.stop, args.steps
            ):
                print(",".join(_fmt(row[name]) for name in SWEEP_COLUMNS))
            return 0
        if args.command == "verify":
            if args.samples < 1:
                raise UsageError("--samples must be at least 1")
            if not args.tol > 0.0:
                raise UsageError("--tol must be positive")
            results = verify.run_all(seed=args.seed, samples=args.samples, tol=args.tol)
            print(verify.format_table(results, args.seed, args.samples, args.tol))
            return 0 if all(r.passed for r in results) else 1
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MzPovmError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
