"""Command-line entry point: run config documents, run presets, list presets.

Exit codes: 0 success, 2 config rejected, 3 numeric gate failed, 1 any
other failure.  The output root defaults to ./runs and can be moved with
the LINDBLADINT_OUTPUT_ROOT environment variable; --out overrides both.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_GATE = 3

OUTPUT_ROOT_ENV = "LINDBLADINT_OUTPUT_ROOT"


def _pin_blas_threads():
    # single-threaded BLAS keeps reductions associatively fixed, which the
    # byte-identical-CSV contract depends on; must happen before numpy loads
    for var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, "1")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lindbladint",
        description="Structure-preserving Lindblad integrators: experiment runner.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a JSON config document")
    run_p.add_argument("config", help="path to the config file")
    run_p.add_argument("--out", help="output directory (default <root>/<config stem>)")

    preset_p = sub.add_parser("preset", help="run a named preset experiment")
    preset_p.add_argument("name", help="preset name; see list-presets")
    preset_p.add_argument("--out", help="output directory (default <root>/<name>)")
    preset_p.add_argument(
        "--dump-config", action="store_true",
        help="print the preset's config document instead of running it",
    )

    sub.add_parser("list-presets", help="list preset names with their deviation notes")
    return parser


def _output_dir(explicit: str | None, config_dir: str | None, fallback_name: str) -> Path:
    if explicit:
        return Path(explicit)
    if config_dir:
        return Path(config_dir)
    root = os.environ.get(OUTPUT_ROOT_ENV, "runs")
    return Path(root) / fallback_name


def _report_lines(report) -> list[str]:
    lines = [f"config hash {report.config_hash}"]
    for entry in report.slopes:
        keys = ", ".join(f"{k}={v:g}" for k, v in entry.items() if k not in ("scheme", "slope"))
        label = entry["scheme"] + (f" ({keys})" if keys else "")
        lines.append(f"fitted slope [{label}]: {entry['slope']:.6f}")
    lines.append(f"wrote {report.out_dir}")
    return lines


def main(argv: list[str] | None = None) -> int:
    _pin_blas_threads()
    args = _build_parser().parse_args(argv)

    from .config import ConfigError, parse_config, preset, preset_names, preset_note
    from .harness import GateError, run_experiment

    try:
        if args.command == "list-presets":
            for name in preset_names():
                print(f"{name:16} {preset_note(name)}")
            return EXIT_OK

        if args.command == "preset":
            config = preset(args.name)
            if args.dump_config:
                sys.stdout.write(config.canonical_json())
                return EXIT_OK
            out_dir = _output_dir(args.out, config.output_dir, args.name)
            report = run_experiment(config, out_dir)
            print("\n".join(_report_lines(report)))
            return EXIT_OK

        config_path = Path(args.config)
        try:
            text = config_path.read_text()
        except OSError as exc:
            print(f"error: cannot read {config_path}: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        config = parse_config(text)
        out_dir = _output_dir(args.out, config.output_dir, config_path.stem)
        report = run_experiment(config, out_dir)
        print("\n".join(_report_lines(report)))
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GateError as exc:
        print(f"gate failure: {exc}", file=sys.stderr)
        return EXIT_GATE
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
