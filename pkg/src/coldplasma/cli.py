"""Command-line front end.

Subcommands: ``classify`` (breaking criteria over a sampled profile),
``char`` (one extended characteristic), ``hill`` (Hill-equation
classification of one sample), ``wave`` (traveling-wave profiles) and
``simulate`` (the Eulerian grid experiment).  Outputs are CSV files plus a
JSON summary per run; identical configurations produce byte-identical
outputs.

Exit codes: 0 completed, 2 breaking detected, 1 error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import eulerian, hill, moc, nonrel, rel, twave
from .numerics import integrate_adaptive
from .profiles import make_profile
from .verdict import BREAKS, INDETERMINATE, SMOOTH, Verdict

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BREAKING = 2

#: spatial-constancy tolerance routing a profile to the coupled-data
#: criterion: max deviation of the invariant below 1e-10 * (1 + C1)
CONSTANT_C1_RTOL = 1.0e-10


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors exit with code 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit2(f"{self.prog}: error: {message}")


class SystemExit2(Exception):
    """Usage/config error carried up to main() for the exit-1 path."""


def _fmt(value) -> str:
    if value is None:
        return ""
    value = float(value)
    if math.isnan(value):
        return "nan"
    return format(value, ".17g")


def _write_csv(path: Path, header: list[str], columns) -> None:
    rows = zip(*columns)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) if not isinstance(v, str) else v for v in row))
            fh.write("\n")


def _write_json(path: Path, payload: dict) -> None:
    def _default(obj):
        if isinstance(obj, np.generic):
            return obj.item()
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        raise TypeError(f"not JSON-serializable: {type(obj)}")

    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=_default)
        fh.write("\n")


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise SystemExit2("config file must hold a JSON object")
    return cfg


def _merge(args: argparse.Namespace, config: dict, defaults: dict) -> dict:
    """Flag > config-file > default, per option name."""
    out = {}
    for key, default in defaults.items():
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            out[key] = flag_value
        elif key in config:
            out[key] = config[key]
        else:
            out[key] = default
    return out


def _profile_from_options(opts: dict):
    family = opts["profile"]
    if family is None:
        raise SystemExit2("a --profile family is required")
    params = {}
    if family == "gaussian":
        params = {"a_star": opts["a_star"], "rho_star": opts["rho_star"]}
    elif family == "sine":
        params = {"amplitude": opts["amplitude"], "wavenumber": opts["wavenumber"]}
    elif family == "linear":
        params = {"alpha": opts["alpha"], "beta": opts["beta"]}
    elif family == "table":
        if not opts["table"]:
            raise SystemExit2("profile family 'table' needs --table PATH")
        params = {"path": opts["table"]}
    else:
        raise SystemExit2(f"unknown profile family {family!r}")
    missing = [k for k, v in params.items() if v is None]
    if missing:
        raise SystemExit2(f"profile {family!r} needs values for {missing}")
    try:
        return make_profile(family, **params)
    except (ValueError, OSError) as exc:
        raise SystemExit2(str(exc))


# ---------------------------------------------------------------- classify

def _classify_nonrel(samples) -> list[Verdict]:
    verdicts = []
    for v0, e0 in zip(samples.dP0, samples.dE0):
        verdict = nonrel.classify_slopes(float(v0), float(e0))
        if verdict.breaks:
            theta_star = nonrel.blowup_time(float(e0), float(v0))
            verdict = Verdict(
                criterion=verdict.criterion,
                classification=verdict.classification,
                scope=verdict.scope,
                theta_star=theta_star,
                evidence=verdict.evidence,
            )
        verdicts.append(verdict)
    return verdicts


def _classify_rel(samples, horizon_periods: float, hill_refine: bool) -> list[Verdict]:
    C1 = rel.first_integral(samples.P0, samples.E0)
    c1_max = float(np.max(C1))
    constant = float(np.max(C1) - np.min(C1)) <= CONSTANT_C1_RTOL * (1.0 + c1_max)
    verdicts: list[Verdict] = []
    if constant and c1_max <= 2.0 + 1.0e-12:
        for _ in range(samples.rho.size):
            verdicts.append(
                Verdict(
                    criterion=rel.COUPLED_CRITERION,
                    classification=SMOOTH,
                    evidence={"C1": 2.0, "reason": "equilibrium profile"},
                )
            )
        return verdicts
    if constant:
        for P0, E0, p0 in zip(samples.P0, samples.E0, samples.dP0):
            verdicts.append(rel.classify_coupled(float(P0), float(E0), float(p0)))
        return verdicts
    for P0, E0, p0, e0 in zip(samples.P0, samples.E0, samples.dP0, samples.dE0):
        verdict = rel.classify_first_period(float(P0), float(E0), float(p0), float(e0))
        if verdict.indeterminate and hill_refine and p0 != 0.0:
            problem = hill.hill_problem_from_slopes(
                float(P0), float(E0), float(p0), float(e0)
            )
            problem = hill.HillProblem(
                K=problem.K, T=problem.T, u0=problem.u0, lambda0=problem.lambda0,
                horizon=horizon_periods * problem.T, K_lower=problem.K_lower,
            )
            verdict = hill.classify_hill(problem)
        verdicts.append(verdict)
    return verdicts


def _cmd_classify(args) -> int:
    config = _load_config(args.config)
    defaults = {
        "model": None, "profile": None, "a_star": None, "rho_star": None,
        "amplitude": None, "wavenumber": None, "alpha": None, "beta": None,
        "table": None, "rho_min": None, "rho_max": None, "rho_samples": 201,
        "horizon_periods": 20.0, "hill_refine": True, "out_dir": ".",
    }
    opts = _merge(args, config, defaults)
    if opts["model"] not in ("rel", "nonrel"):
        raise SystemExit2("--model must be rel or nonrel")
    profile = _profile_from_options(opts)
    span = profile.default_span
    rho_min = opts["rho_min"] if opts["rho_min"] is not None else span[0]
    rho_max = opts["rho_max"] if opts["rho_max"] is not None else span[1]
    n = int(opts["rho_samples"])
    if n < 2 or not rho_max > rho_min:
        raise SystemExit2("need rho_max > rho_min and at least 2 samples")
    samples = profile.samples(np.linspace(rho_min, rho_max, n))

    if opts["model"] == "nonrel":
        verdicts = _classify_nonrel(samples)
    else:
        verdicts = _classify_rel(
            samples, float(opts["horizon_periods"]), bool(opts["hill_refine"])
        )

    out_dir = Path(opts["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    delta_col, c2_col, theta_col, labels = [], [], [], []
    for verdict in verdicts:
        labels.append(verdict.classification)
        ev = verdict.evidence
        if verdict.criterion == nonrel.CRITERION_NAME:
            delta_col.append(ev.get("delta"))
            c2_col.append(None)
        elif verdict.criterion == rel.COUPLED_CRITERION:
            delta_col.append(None)
            c2_col.append(ev.get("C2"))
        else:
            delta_col.append(ev.get("break_margin"))
            c2_col.append(None)
        theta_col.append(verdict.theta_star)
    _write_csv(
        out_dir / "classify.csv",
        ["rho", "verdict", "delta", "c2", "theta_star"],
        [samples.rho, labels, delta_col, c2_col, theta_col],
    )

    n_breaks = sum(v.breaks for v in verdicts)
    n_smooth = sum(v.smooth for v in verdicts)
    if n_breaks:
        global_verdict = BREAKS
    elif n_smooth == len(verdicts):
        global_verdict = SMOOTH
    else:
        global_verdict = INDETERMINATE
    summary = {
        "command": "classify",
        "model": opts["model"],
        "profile": {"family": profile.name, **profile.params},
        "rho_span": [rho_min, rho_max],
        "rho_samples": n,
        "criteria_used": sorted({v.criterion for v in verdicts}),
        "counts": {
            "breaks": n_breaks,
            "smooth": n_smooth,
            "indeterminate": len(verdicts) - n_breaks - n_smooth,
        },
        "global_verdict": global_verdict,
        "verdict_basis": "sampled",
        "first_breaking_sample": next(
            (
                {"rho": float(r), **v.to_dict()}
                for r, v in zip(samples.rho, verdicts)
                if v.breaks
            ),
            None,
        ),
    }
    _write_json(out_dir / "classify_summary.json", summary)
    return EXIT_BREAKING if global_verdict == BREAKS else EXIT_OK


# -------------------------------------------------------------------- char

def _cmd_char(args) -> int:
    config = _load_config(args.config)
    defaults = {
        "model": None, "rho0": 0.0, "P0": None, "E0": None, "p0": None,
        "e0": None, "profile": None, "a_star": None, "rho_star": None,
        "amplitude": None, "wavenumber": None, "alpha": None, "beta": None,
        "table": None, "theta_max": 25.0, "rel_tol": 1.0e-10,
        "guard": 1.0e12, "output_samples": 2001, "out_dir": ".",
    }
    opts = _merge(args, config, defaults)
    if opts["model"] not in ("rel", "nonrel"):
        raise SystemExit2("--model must be rel or nonrel")

    if opts["profile"] is not None:
        profile = _profile_from_options(opts)
        s = profile.samples(np.asarray([float(opts["rho0"])]))
        P0, E0 = float(s.P0[0]), float(s.E0[0])
        p0, e0 = float(s.dP0[0]), float(s.dE0[0])
    else:
        needed = [k for k in ("P0", "E0", "p0", "e0") if opts[k] is None]
        if needed:
            raise SystemExit2(f"char needs {needed} (or a --profile with --rho0)")
        P0, E0, p0, e0 = (float(opts[k]) for k in ("P0", "E0", "p0", "e0"))

    y0 = [float(opts["rho0"]), P0, E0, p0, e0]
    rhs = rel.rhs_extended if opts["model"] == "rel" else nonrel.rhs_extended
    traj = integrate_adaptive(
        rhs, y0, (0.0, float(opts["theta_max"])),
        rel_tol=float(opts["rel_tol"]), blowup_guard=float(opts["guard"]),
    )
    t = np.linspace(traj.times[0], traj.final_time, int(opts["output_samples"]))
    states = traj.at(t)

    out_dir = Path(opts["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    mom = "P" if opts["model"] == "rel" else "V"
    _write_csv(
        out_dir / "char.csv",
        ["theta", "rho", mom, "E", mom.lower(), "e"],
        [t, states[0], states[1], states[2], states[3], states[4]],
    )
    if opts["model"] == "rel":
        inv0 = float(rel.first_integral(P0, E0))
        inv1 = float(rel.first_integral(states[1][-1], states[2][-1]))
    else:
        inv0 = P0 * P0 + E0 * E0
        inv1 = float(states[1][-1] ** 2 + states[2][-1] ** 2)
    summary = {
        "command": "char",
        "model": opts["model"],
        "initial": {"rho0": y0[0], mom: P0, "E0": E0, mom.lower() + "0": p0, "e0": e0},
        "terminated_early": traj.terminated_early,
        "termination_reason": traj.termination_reason,
        "theta_stop": traj.final_time,
        "invariant_initial": inv0,
        "invariant_final": inv1,
    }
    _write_json(out_dir / "char_summary.json", summary)
    return EXIT_BREAKING if traj.terminated_early else EXIT_OK


# -------------------------------------------------------------------- hill

def _cmd_hill(args) -> int:
    config = _load_config(args.config)
    defaults = {
        "P0": 0.0, "E0": None, "p0": None, "e0": None, "u0": None,
        "lambda0": None, "horizon_periods": 100.0, "rel_tol": 1.0e-10,
        "output_samples": 4001, "out_dir": ".",
    }
    opts = _merge(args, config, defaults)
    if opts["E0"] is None:
        raise SystemExit2("hill needs --E0 (and --P0) to build the coefficient")
    P0, E0 = float(opts["P0"]), float(opts["E0"])
    if opts["u0"] is not None and opts["lambda0"] is not None:
        K, T = hill.build_K(P0, E0)
        C1 = float(rel.first_integral(P0, E0))
        problem = hill.HillProblem(
            K=K, T=T, u0=float(opts["u0"]), lambda0=float(opts["lambda0"]),
            K_lower=8.0 / C1**3,
        )
    elif opts["p0"] is not None and opts["e0"] is not None:
        problem = hill.hill_problem_from_slopes(
            P0, E0, float(opts["p0"]), float(opts["e0"])
        )
    else:
        raise SystemExit2("hill needs --p0/--e0 or --u0/--lambda0")
    problem = hill.HillProblem(
        K=problem.K, T=problem.T, u0=problem.u0, lambda0=problem.lambda0,
        horizon=float(opts["horizon_periods"]) * problem.T, K_lower=problem.K_lower,
    )
    traj = hill.hill_solution(problem, rel_tol=float(opts["rel_tol"]))
    verdict = hill.classify_hill(problem, rel_tol=float(opts["rel_tol"]))

    out_dir = Path(opts["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    t = np.linspace(0.0, traj.final_time, int(opts["output_samples"]))
    z = traj.at(t)
    _write_csv(out_dir / "hill.csv", ["theta", "z", "dz"], [t, z[0], z[1]])
    summary = {
        "command": "hill",
        "problem": {
            "P0": P0, "E0": E0, "u0": problem.u0, "lambda0": problem.lambda0,
            "period": problem.T, "horizon": problem.horizon,
        },
        "verdict": verdict.to_dict(),
    }
    _write_json(out_dir / "hill_summary.json", summary)
    return EXIT_BREAKING if verdict.breaks else EXIT_OK


# -------------------------------------------------------------------- wave

def _cmd_wave(args) -> int:
    config = _load_config(args.config)
    defaults = {
        "model": "rel", "w": None, "I2": None, "I0": None, "P0": None,
        "E0": None, "V0": 0.0, "periods": 2, "samples_per_period": 512,
        "multivalued": False, "out_dir": ".",
    }
    opts = _merge(args, config, defaults)
    if opts["w"] is None:
        raise SystemExit2("wave needs --w")
    w = float(opts["w"])
    out_dir = Path(opts["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)

    if opts["model"] == "rel":
        if opts["I2"] is not None:
            I2 = float(opts["I2"])
        elif opts["E0"] is not None:
            I2 = float(twave.wave_invariant(float(opts["P0"] or 0.0), float(opts["E0"])))
        else:
            raise SystemExit2("wave --model rel needs --I2 or --E0 (with --P0)")
        w_crit = twave.critical_speed(I2)
        if bool(opts["multivalued"]):
            xi, P, E = twave.wave_branch_data(I2, w, n_turns=int(opts["periods"]))
            _write_csv(out_dir / "wave.csv", ["xi", "P", "E"], [xi, P, E])
            _write_json(
                out_dir / "wave_summary.json",
                {
                    "command": "wave", "model": "rel", "w": w, "I2": I2,
                    "critical_speed": w_crit, "multivalued": True,
                },
            )
            return EXIT_OK
        try:
            prof = twave.wave_profile(
                I2, w, n_periods=int(opts["periods"]),
                samples_per_period=int(opts["samples_per_period"]),
            )
        except ValueError as exc:
            raise SystemExit2(str(exc))
        _write_csv(out_dir / "wave.csv", ["xi", "P", "E"], [prof.xi, prof.P, prof.E])
        summary = {
            "command": "wave", "model": "rel", "w": w, "I2": I2,
            "critical_speed": w_crit, "X": prof.X,
            "P_plus": prof.P_plus, "P_minus": prof.P_minus,
            "invariant_residual": prof.invariant_residual(),
            "max_slope": prof.max_slope(),
        }
    else:
        if opts["I0"] is not None:
            I0 = float(opts["I0"])
        elif opts["E0"] is not None:
            I0 = math.hypot(float(opts["V0"] or 0.0), float(opts["E0"]))
        else:
            raise SystemExit2("wave --model nonrel needs --I0 or --E0 (with --V0)")
        try:
            prof = twave.wave_profile_nonrel(
                I0, w, V_at_0=float(opts["V0"] or 0.0),
                n_periods=int(opts["periods"]),
                samples_per_period=int(opts["samples_per_period"]),
            )
        except ValueError as exc:
            raise SystemExit2(str(exc))
        _write_csv(out_dir / "wave.csv", ["xi", "V", "E"], [prof.xi, prof.P, prof.E])
        summary = {
            "command": "wave", "model": "nonrel", "w": w, "I0": I0,
            "critical_speed": twave.critical_speed_nonrel(I0), "X": prof.X,
            "invariant_residual": prof.invariant_residual(),
            "max_slope": prof.max_slope(),
        }
    _write_json(out_dir / "wave_summary.json", summary)
    return EXIT_OK


# ---------------------------------------------------------------- simulate

def _cmd_simulate(args) -> int:
    config = _load_config(args.config)
    defaults = {
        "model": "rel", "a_star": 2.07, "rho_star": 3.0, "grid_points": 4000,
        "domain_halfwidth": None, "theta_max": 60.0, "record_interval": 0.05,
        "snapshot_interval": None, "density_threshold": 1.0e3,
        "filter_strength": None, "certify": True,
        "backend": None, "out_dir": ".",
    }
    opts = _merge(args, config, defaults)
    try:
        sim_config = eulerian.SimulationConfig(
            model=opts["model"],
            a_star=float(opts["a_star"]),
            rho_star=float(opts["rho_star"]),
            grid_points=int(opts["grid_points"]),
            domain_halfwidth=(
                None if opts["domain_halfwidth"] is None
                else float(opts["domain_halfwidth"])
            ),
            theta_max=float(opts["theta_max"]),
            record_interval=float(opts["record_interval"]),
            snapshot_interval=(
                None if opts["snapshot_interval"] is None
                else float(opts["snapshot_interval"])
            ),
            density_threshold=float(opts["density_threshold"]),
            backend=opts["backend"],
            **(
                {}
                if opts["filter_strength"] is None
                else {"filter_strength": float(opts["filter_strength"])}
            ),
        )
        diagnostics, snapshots = eulerian.run(sim_config)
    except ValueError as exc:
        raise SystemExit2(str(exc))

    certificate = None
    if bool(opts["certify"]):
        profile = make_profile(
            "gaussian", a_star=sim_config.a_star, rho_star=sim_config.rho_star
        )
        certificate = moc.first_breaking(
            profile,
            sim_config.model,
            (0.0, 2.0 * sim_config.rho_star),
            theta_max=sim_config.theta_max,
        )

    out_dir = Path(opts["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(
        out_dir / "simulate_diagnostics.csv",
        ["theta", "N_max", "N_origin", "rho_of_max"],
        [diagnostics.theta, diagnostics.N_max, diagnostics.N_origin,
         diagnostics.rho_of_max],
    )
    if snapshots:
        cols = {"theta": [], "rho": [], "P": [], "E": [], "N": []}
        for snap in snapshots:
            cols["theta"].append(np.full_like(snap.rho, snap.theta))
            cols["rho"].append(snap.rho)
            cols["P"].append(snap.P)
            cols["E"].append(snap.E)
            cols["N"].append(snap.N)
        _write_csv(
            out_dir / "simulate_snapshots.csv",
            ["theta", "rho", "P", "E", "N"],
            [np.concatenate(cols[k]) for k in ("theta", "rho", "P", "E", "N")],
        )

    peaks = eulerian.offaxis_peaks(diagnostics)
    event = diagnostics.breaking_event
    summary = {
        "command": "simulate",
        "model": sim_config.model,
        "a_star": sim_config.a_star,
        "rho_star": sim_config.rho_star,
        "grid_points": sim_config.grid_points,
        "domain_halfwidth": sim_config.halfwidth,
        "theta_max": sim_config.theta_max,
        "backend": eulerian.active_backend() if opts["backend"] is None else opts["backend"],
        "breaking_event": (
            None if event is None
            else {"theta": event.theta, "rho": event.rho, "reason": event.reason}
        ),
        "certified_breaking": (
            None if certificate is None
            else {"theta": certificate.theta, "rho0": certificate.rho0,
                  "method": "characteristics"}
        ),
        "offaxis_density_peaks": [
            {"theta": t, "N_max": nm, "rho": rm} for t, nm, rm in peaks
        ],
        "records": int(diagnostics.theta.size),
    }
    _write_json(out_dir / "simulate_summary.json", summary)
    broke = event is not None or certificate is not None
    return EXIT_BREAKING if broke else EXIT_OK


# -------------------------------------------------------------------- main

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--out-dir", dest="out_dir", help="output directory (default .)")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coldplasma", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="breaking criteria over a sampled profile")
    p.add_argument("--model", choices=["rel", "nonrel"])
    p.add_argument("--profile", choices=["gaussian", "sine", "linear", "table"])
    p.add_argument("--a-star", dest="a_star", type=float)
    p.add_argument("--rho-star", dest="rho_star", type=float)
    p.add_argument("--amplitude", type=float)
    p.add_argument("--wavenumber", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--table")
    p.add_argument("--rho-min", dest="rho_min", type=float)
    p.add_argument("--rho-max", dest="rho_max", type=float)
    p.add_argument("--rho-samples", dest="rho_samples", type=int)
    p.add_argument("--horizon-periods", dest="horizon_periods", type=float)
    p.add_argument(
        "--no-hill-refine", dest="hill_refine", action="store_false", default=None,
        help="leave first-period indeterminates unrefined",
    )
    _add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("char", help="integrate one extended characteristic")
    p.add_argument("--model", choices=["rel", "nonrel"])
    p.add_argument("--rho0", type=float)
    p.add_argument("--P0", type=float)
    p.add_argument("--E0", type=float)
    p.add_argument("--p0", type=float)
    p.add_argument("--e0", type=float)
    p.add_argument("--profile", choices=["gaussian", "sine", "linear", "table"])
    p.add_argument("--a-star", dest="a_star", type=float)
    p.add_argument("--rho-star", dest="rho_star", type=float)
    p.add_argument("--amplitude", type=float)
    p.add_argument("--wavenumber", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--table")
    p.add_argument("--theta-max", dest="theta_max", type=float)
    p.add_argument("--rel-tol", dest="rel_tol", type=float)
    p.add_argument("--guard", type=float)
    p.add_argument("--output-samples", dest="output_samples", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_char)

    p = sub.add_parser("hill", help="Hill-equation classification of one sample")
    p.add_argument("--P0", type=float)
    p.add_argument("--E0", type=float)
    p.add_argument("--p0", type=float)
    p.add_argument("--e0", type=float)
    p.add_argument("--u0", type=float)
    p.add_argument("--lambda0", type=float)
    p.add_argument("--horizon-periods", dest="horizon_periods", type=float)
    p.add_argument("--rel-tol", dest="rel_tol", type=float)
    p.add_argument("--output-samples", dest="output_samples", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_hill)

    p = sub.add_parser("wave", help="traveling-wave profile")
    p.add_argument("--model", choices=["rel", "nonrel"])
    p.add_argument("--w", type=float)
    p.add_argument("--I2", type=float)
    p.add_argument("--I0", type=float)
    p.add_argument("--P0", type=float)
    p.add_argument("--E0", type=float)
    p.add_argument("--V0", type=float)
    p.add_argument("--periods", type=int)
    p.add_argument("--samples-per-period", dest="samples_per_period", type=int)
    p.add_argument(
        "--multivalued", action="store_true", default=None,
        help="emit the parametric branch data of a subcritical (singular) wave",
    )
    _add_common(p)
    p.set_defaults(func=_cmd_wave)

    p = sub.add_parser("simulate", help="Eulerian grid experiment")
    p.add_argument("--model", choices=["rel", "nonrel"])
    p.add_argument("--a-star", dest="a_star", type=float)
    p.add_argument("--rho-star", dest="rho_star", type=float)
    p.add_argument("--grid-points", dest="grid_points", type=int)
    p.add_argument("--domain-halfwidth", dest="domain_halfwidth", type=float)
    p.add_argument("--theta-max", dest="theta_max", type=float)
    p.add_argument("--record-interval", dest="record_interval", type=float)
    p.add_argument("--snapshot-interval", dest="snapshot_interval", type=float)
    p.add_argument("--density-threshold", dest="density_threshold", type=float)
    p.add_argument("--filter-strength", dest="filter_strength", type=float)
    p.add_argument(
        "--no-certify", dest="certify", action="store_false", default=None,
        help="skip the characteristics-based breaking certification",
    )
    p.add_argument("--backend", choices=["cython", "python"])
    _add_common(p)
    p.set_defaults(func=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
