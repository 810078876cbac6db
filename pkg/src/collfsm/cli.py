"""Command line entry point.

Exit codes: 0 success, 1 usage or configuration error, 2 analysis error,
3 ``diff`` found a behavioural change.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .errors import CollFsmError, ConfigError, IncomparableModels, SourceError
from .extract import extract_fsm
from .io.config import load_config
from .io.diff import diff_fsm
from .io.dot import emit_dot
from .io.json_io import emit_json, parse_json
from .oracle import oracle_check

EXIT_OK, EXIT_CONFIG, EXIT_ANALYSIS, EXIT_CHANGED = 0, 1, 2, 3


def _cmd_extract(args) -> int:
    cfg = load_config(args.config)
    out_dir = Path(args.output_dir) if args.output_dir else cfg.output_dir
    units = _load_units(cfg)
    opts = cfg.options()
    out_dir.mkdir(parents=True, exist_ok=True)
    for path, unit in units:
        start = time.perf_counter()
        fsm = extract_fsm(unit, opts)
        stem = cfg.output_name if len(units) == 1 else f"{cfg.output_name}-{unit.name}"
        written = []
        if "dot" in cfg.outputs:
            target = out_dir / f"{stem}.dot"
            target.write_text(emit_dot(fsm, unit.name), encoding="utf-8")
            written.append(target)
        if "json" in cfg.outputs:
            target = out_dir / f"{stem}.json"
            target.write_text(emit_json(fsm) + "\n", encoding="utf-8")
            written.append(target)
        took = time.perf_counter() - start
        print(f"{path.name}: {len(fsm.states)} states, {len(fsm.transitions)} transitions "
              f"({took:.2f}s)")
        for w in written:
            print(f"  wrote {w}")
    return EXIT_OK


def _load_units(cfg):
    units = []
    for path in cfg.sources:
        try:
            units.append((path, cfg.load_unit(path)))
        except SourceError as exc:
            raise CollFsmError(f"{path}: {exc}") from exc
    return units


def _read_fsm(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read model: {exc.strerror}", path) from exc
    return parse_json(text, path)


def _cmd_diff(args) -> int:
    a, b = _read_fsm(args.model_a), _read_fsm(args.model_b)
    report = diff_fsm(a, b)
    sys.stdout.write(report.render(Path(args.model_a).name, Path(args.model_b).name))
    return EXIT_CHANGED if report.changed else EXIT_OK


def _cmd_oracle_check(args) -> int:
    cfg = load_config(args.config)
    limit = args.max_vars if args.max_vars is not None else cfg.max_oracle_vars
    opts = cfg.options()
    failed = False
    for path, unit in _load_units(cfg):
        start = time.perf_counter()
        report = oracle_check(unit, opts, limit)
        took = time.perf_counter() - start
        verdict = "ok" if report.ok else "MISMATCH"
        print(f"{path.name}: {verdict}: {len(report.checked)} transition tasks compared ({took:.2f}s)")
        for m, n in report.skipped:
            print(f"  skipped {m}: {n} trace variables exceed the limit of {limit}")
        for src, meth, dst in report.mismatches:
            print(f"  mismatch: {src} --{meth}--> {dst}")
        failed |= not report.ok
    return EXIT_ANALYSIS if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="collfsm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract FSMs for the sources named in a config file")
    p.add_argument("config", help="JSON extraction config")
    p.add_argument("--output-dir", help="override the config's output_dir")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("diff", help="compare two extracted models (exit 3 when they differ)")
    p.add_argument("model_a")
    p.add_argument("model_b")
    p.set_defaults(func=_cmd_diff)

    p = sub.add_parser("oracle-check", help="cross-check SAT guards against brute force")
    p.add_argument("config", help="JSON extraction config")
    p.add_argument("--max-vars", type=int, default=None,
                   help="largest trace (in variables) to check; default from config")
    p.set_defaults(func=_cmd_oracle_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IncomparableModels as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    except CollFsmError as exc:
        print(f"analysis error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS


if __name__ == "__main__":
    sys.exit(main())
