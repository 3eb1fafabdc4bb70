"""Config-driven experiment runner.

Executes the configured scheme over every sweep combination, checks the
structure-preservation gates on the emitted diagnostics, and writes the
CSV/JSON artifact set: summary.csv (one row per run), steps_*.csv (one
row per time step), run.json (records, slopes, config hash) and
config.json (the defaulted document).  All floating-point cells use 17
significant digits so identical configs produce byte-identical CSV
bodies; wall times live only in run.json.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .config import ExperimentConfig
from .diagnostics import StepDiagnostics, least_squares_slope, relative_error, expm_constant_probe
from .integrators import StepPlan, Trajectory, integrate
from .linalg import expm, hermitize, min_eigenvalue
from .model import LindbladModel
from .oracle import (
    reference_solution,
    reference_solution_timedep,
    rk4_vectorized_step,
    superoperator,
    superoperator_applier,
    unvec,
    vec,
)

__all__ = ["HarnessError", "GateError", "RunRecord", "RunReport", "run_experiment"]

# post-run numeric gates on emitted trajectories
FREE_TRACE_GATE = 1e-12
LREE_NORM_GATE = 1e-13
POSITIVITY_GATE = -1e-10


class HarnessError(RuntimeError):
    """Run aborted; partial output files have been removed."""


class GateError(HarnessError):
    """A structure-preservation gate failed on emitted diagnostics."""


@dataclass(frozen=True)
class RunRecord:
    """One executed (sweep-point, step-count) run."""

    scheme: str
    tau: float
    steps: int
    steps_csv: str
    wall_time_s: float
    error: float | None = None
    delta: float | None = None
    eps1: float | None = None
    eps2: float | None = None


@dataclass
class RunReport:
    """Everything run_experiment wrote, plus where."""

    out_dir: Path
    config_hash: str
    records: list[RunRecord] = field(default_factory=list)
    slopes: list[dict] = field(default_factory=list)

    @property
    def slope(self) -> float | None:
        if len(self.slopes) == 1:
            return self.slopes[0]["slope"]
        return None


def _fmt(x: float) -> str:
    return "%.17e" % x


def _write_text(path: Path, text: str, created: list[Path]):
    created.append(path)
    path.write_text(text)


def _steps_csv_name(prefix_parts: list[str], tau: float) -> str:
    return "_".join(["steps", *prefix_parts, f"{tau:g}"]) + ".csv"


def _steps_csv_text(rows: list[StepDiagnostics], populations: tuple[int, ...]) -> str:
    header = ["step", "time", "trace_deviation", "min_eig", "rank"]
    header += [f"pop_{i}" for i in populations]
    lines = [",".join(header)]
    for row in rows:
        cells = [
            str(row.step),
            _fmt(row.time),
            _fmt(row.trace_deviation),
            _fmt(row.min_eig),
            "" if row.rank is None else str(row.rank),
        ]
        cells += [_fmt(row.populations[i]) for i in populations]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _dense_rows(
    states: list[np.ndarray],
    tau: float,
    populations: tuple[int, ...],
) -> list[StepDiagnostics]:
    rows = []
    for n, state in enumerate(states):
        sym = hermitize(state)
        rows.append(StepDiagnostics(
            step=n,
            time=n * tau,
            trace_deviation=float(np.trace(state).real - 1.0),
            min_eig=min_eigenvalue(sym),
            rank=None,
            populations={i: float(sym[i - 1, i - 1].real) for i in populations},
        ))
    return rows


def _rk4_trajectory(
    model: LindbladModel, rho0: np.ndarray, horizon: float, steps: int
) -> list[np.ndarray]:
    apply_gen = superoperator_applier(model)
    tau = horizon / steps
    v = vec(rho0)
    states = [rho0.astype(complex)]
    for n in range(steps):
        v = rk4_vectorized_step(apply_gen, v, tau, t=n * tau)
        states.append(unvec(v))
    return states


def _oracle_trajectory(
    model: LindbladModel, rho0: np.ndarray, horizon: float, steps: int, substeps: int
) -> list[np.ndarray]:
    tau = horizon / steps
    states = [rho0.astype(complex)]
    if model.is_time_dependent:
        per_step = max(1, -(-substeps // steps))
        rho = rho0
        for n in range(steps):
            rho = reference_solution_timedep(
                model, rho, tau, substeps=per_step, t0=n * tau
            )
            states.append(rho)
    else:
        propagator = expm(tau * superoperator(model))
        v = vec(rho0)
        for _ in range(steps):
            v = propagator @ v
            states.append(hermitize(unvec(v)))
    return states


def _check_gates(scheme: str, rows: list[StepDiagnostics], tau: float):
    """Structure gates on what was emitted, not on intermediate state."""
    if scheme not in ("FREE", "LREE"):
        return
    trace_gate = FREE_TRACE_GATE if scheme == "FREE" else LREE_NORM_GATE
    worst_trace = max(abs(r.trace_deviation) for r in rows)
    worst_eig = min(r.min_eig for r in rows)
    if worst_trace > trace_gate:
        raise GateError(
            f"{scheme} at tau={tau:g}: |trace deviation| {worst_trace:.3e} "
            f"exceeds the {trace_gate:g} gate"
        )
    if worst_eig < POSITIVITY_GATE:
        raise GateError(
            f"{scheme} at tau={tau:g}: min eigenvalue {worst_eig:.3e} "
            f"below the {POSITIVITY_GATE:g} gate"
        )


def run_experiment(config: ExperimentConfig, out_dir: str | Path) -> RunReport:
    """Run every sweep combination of the config and write the artifact set.

    Deterministic for a fixed config: the summary and steps CSV bodies
    are byte-identical across repeat runs.  On any failure the files
    written so far are removed before the error propagates.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    created: list[Path] = []
    report = RunReport(out_dir=out_dir, config_hash=config.config_hash())
    try:
        _write_text(out_dir / "config.json", config.canonical_json(), created)
        if config.is_probe:
            _run_probe(config, out_dir, created, report)
        else:
            _run_trajectories(config, out_dir, created, report)
        return report
    except BaseException:
        for path in created:
            path.unlink(missing_ok=True)
        raise


def _run_probe(config: ExperimentConfig, out_dir: Path, created: list[Path], report: RunReport):
    start = time.monotonic()
    taus, tols = config.probe
    model = config.build_model()
    rows = expm_constant_probe(model, taus, tols, seed=config.seed)
    lines = ["tau,tol,ce"]
    lines += [",".join((_fmt(tau), _fmt(tol), _fmt(ce))) for tau, tol, ce in rows]
    _write_text(out_dir / "ce_probe.csv", "\n".join(lines) + "\n", created)
    run_json = {
        "config_hash": report.config_hash,
        "probe": {"rows": len(rows)},
        "wall_time_s": time.monotonic() - start,
    }
    _write_text(out_dir / "run.json", json.dumps(run_json, indent=2) + "\n", created)


def _run_trajectories(config: ExperimentConfig, out_dir: Path, created: list[Path], report: RunReport):
    start = time.monotonic()
    model = config.build_model()
    deltas = config.deltas if config.initial_kind == "perturbed" else (None,)
    sweep_cols = [
        name
        for name, present in (
            ("delta", config.delta_swept),
            ("eps1", config.tol1.swept),
            ("eps2", config.tol2.swept),
        )
        if present
    ]
    summary_rows: list[dict] = []

    for delta in deltas:
        rho0, factor0 = config.initial_state(delta)
        reference = None
        if config.oracle_enabled:
            if model.is_time_dependent:
                reference = reference_solution_timedep(
                    model, rho0, config.horizon, substeps=config.oracle_substeps
                )
            else:
                reference = reference_solution(model, rho0, config.horizon)
        for eps1 in config.tol1.values:
            for eps2 in config.tol2.values:
                series_errors: list[tuple[float, float]] = []
                compare_errors: list[tuple[float, float]] = []
                for steps in config.steps:
                    tau = config.horizon / steps
                    point = {
                        "delta": delta if config.delta_swept else None,
                        "eps1": eps1 if config.tol1.swept else None,
                        "eps2": eps2 if config.tol2.swept else None,
                    }
                    prefix = [
                        f"{name}{point[name]:g}" for name in sweep_cols
                    ]
                    error = _run_one(
                        config, model, rho0, factor0, steps, tau, eps1, eps2,
                        config.scheme, prefix, reference,
                        out_dir, created, report, summary_rows, point,
                    )
                    if error is not None and error > 0.0:
                        series_errors.append((tau, error))
                    if config.compare_free:
                        cmp_error = _run_one(
                            config, model, rho0, factor0, steps, tau, eps1, eps2,
                            "FREE", ["free", *prefix], reference,
                            out_dir, created, report, summary_rows, point,
                        )
                        if cmp_error is not None and cmp_error > 0.0:
                            compare_errors.append((tau, cmp_error))
                for scheme, errors in ((config.scheme, series_errors), ("FREE", compare_errors)):
                    if len(errors) >= 2:
                        taus = [np.log10(t) for t, _ in errors]
                        errs = [np.log10(e) for _, e in errors]
                        entry = {k: v for k, v in point.items() if v is not None}
                        entry["scheme"] = scheme
                        entry["slope"] = least_squares_slope(taus, errs)
                        report.slopes.append(entry)

    _write_summary(out_dir, created, sweep_cols, summary_rows)
    run_json = {
        "config_hash": report.config_hash,
        "scheme": config.scheme,
        "records": [
            {k: v for k, v in vars(r).items() if v is not None}
            for r in report.records
        ],
        "slopes": report.slopes,
        "wall_time_s": time.monotonic() - start,
    }
    if report.slope is not None:
        run_json["slope"] = report.slope
    _write_text(out_dir / "run.json", json.dumps(run_json, indent=2) + "\n", created)


def _run_one(
    config: ExperimentConfig,
    model: LindbladModel,
    rho0: np.ndarray,
    factor0: np.ndarray,
    steps: int,
    tau: float,
    eps1: float,
    eps2: float,
    scheme: str,
    prefix: list[str],
    reference: np.ndarray | None,
    out_dir: Path,
    created: list[Path],
    report: RunReport,
    summary_rows: list[dict],
    point: dict,
) -> float | None:
    run_start = time.monotonic()
    tolerances = config.tolerances(eps1, eps2, tau)
    plan = StepPlan(config.horizon, steps, tolerances)
    if scheme in ("FREE", "STD", "LREE"):
        state0 = factor0 if scheme == "LREE" else rho0
        trajectory: Trajectory = integrate(
            scheme, model, state0, plan,
            population_indices=config.populations,
            snapshot_stride=config.snapshot_stride,
        )
        rows = list(trajectory.diagnostics)
        final = trajectory.final_state
        final_dense = final @ final.conj().T if scheme == "LREE" else final
    elif scheme == "RK4":
        states = _rk4_trajectory(model, rho0, config.horizon, steps)
        rows = _dense_rows(states, tau, config.populations)
        final_dense = hermitize(states[-1])
    elif scheme == "ORACLE":
        states = _oracle_trajectory(
            model, rho0, config.horizon, steps, config.oracle_substeps
        )
        rows = _dense_rows(states, tau, config.populations)
        final_dense = states[-1]
    else:
        raise HarnessError(f"unhandled scheme {scheme!r}")

    _check_gates(scheme, rows, tau)
    error = None
    if reference is not None:
        error = relative_error(final_dense, reference)

    name = _steps_csv_name(prefix, tau)
    _write_text(out_dir / name, _steps_csv_text(rows, config.populations), created)
    report.records.append(RunRecord(
        scheme=scheme, tau=tau, steps=steps, steps_csv=name,
        wall_time_s=time.monotonic() - run_start, error=error,
        delta=point["delta"], eps1=point["eps1"], eps2=point["eps2"],
    ))
    summary_rows.append({
        **point,
        "scheme": scheme,
        "tau": tau,
        "error": error,
        "max_abs_trace_dev": max(abs(r.trace_deviation) for r in rows),
        "min_min_eig": min(r.min_eig for r in rows),
        "max_rank": max((r.rank for r in rows if r.rank is not None), default=None),
    })
    return error


def _write_summary(out_dir: Path, created: list[Path], sweep_cols: list[str], rows: list[dict]):
    header = [*sweep_cols, "scheme", "tau", "error", "log10_tau", "log10_error",
              "max_abs_trace_dev", "min_min_eig", "max_rank"]
    lines = [",".join(header)]
    for row in rows:
        cells = [_fmt(row[c]) for c in sweep_cols]
        cells.append(row["scheme"])
        cells.append(_fmt(row["tau"]))
        if row["error"] is None:
            cells += ["", _fmt(np.log10(row["tau"])), ""]
        else:
            cells += [
                _fmt(row["error"]),
                _fmt(np.log10(row["tau"])),
                # an exactly-zero error (oracle against itself) has no log
                "" if row["error"] == 0.0 else _fmt(np.log10(row["error"])),
            ]
        cells.append(_fmt(row["max_abs_trace_dev"]))
        cells.append(_fmt(row["min_min_eig"]))
        cells.append("" if row["max_rank"] is None else str(row["max_rank"]))
        lines.append(",".join(cells))
    _write_text(out_dir / "summary.csv", "\n".join(lines) + "\n", created)
