"""``cyclegap`` command line.

Exit codes: 0 success, 1 a reproduction check failed, 2 usage or
configuration error, 3 data or ingestion error.
"""

from __future__ import annotations

import argparse
import logging
import os
import shutil
import sys
import tempfile
from pathlib import Path

from ..errors import CycleGapError, FetchError, ParseError
from ..ingest import OFFLINE_ENV
from . import reports, stages
from .config import ConfigError, PipelineConfig
from .model import build_inputs

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3
COMMANDS = ("decompose", "correlate", "indices", "regress", "diagnose", "reproduce")

log = logging.getLogger("cyclegap")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclegap", description="Output-gap divergence pipeline.")
    p.add_argument("--config", type=Path, help="pipeline configuration (JSON)")
    p.add_argument("--out", type=Path, help="output directory (overrides the config)")
    p.add_argument("--offline", action="store_true", help="never touch the network; use cached downloads only")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "decompose": "HP trend/cycle and output gap per region",
        "correlate": "output-gap correlations per window",
        "indices": "divergence and convergence indices",
        "regress": "estimate the divergence regression",
        "diagnose": "post-estimation diagnostics",
        "reproduce": "run every stage and compare against expected values",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, help=helps[name])
        # accept the global flags after the subcommand too
        sp.add_argument("--config", type=Path, default=argparse.SUPPRESS)
        sp.add_argument("--out", type=Path, default=argparse.SUPPRESS)
        sp.add_argument("--offline", action="store_true", default=argparse.SUPPRESS)
    return p


def write_outputs(files: dict[str, str], out_dir: Path, formats: frozenset[str]) -> list[Path]:
    """Write into a fresh temp directory, then move each file into place."""
    out_dir.mkdir(parents=True, exist_ok=True)
    selected = {k: v for k, v in files.items() if k.rsplit(".", 1)[-1] in formats}
    tmp = Path(tempfile.mkdtemp(prefix=".run-", dir=out_dir))
    written = []
    try:
        for name in sorted(selected):
            (tmp / name).write_bytes(selected[name].encode("utf-8"))
        for name in sorted(selected):
            target = out_dir / name
            os.replace(tmp / name, target)
            written.append(target)
    finally:
        shutil.rmtree(tmp, ignore_errors=True)
    return written


def _run_single(command: str, config: PipelineConfig, manifest) -> stages.StageOutput:
    if command == "decompose":
        return stages.decompose(config, manifest)
    if command == "correlate":
        return stages.correlate(config, manifest)
    inputs = build_inputs(manifest, config.lam, config.cache_dir)
    if command == "indices":
        return stages.indices(config, inputs)
    out, res = stages.regress(config, inputs)
    if command == "regress":
        return out
    diag, _ = stages.diagnose(config, inputs, res)
    return diag


def _reproduce(config: PipelineConfig, manifest, out_dir: Path) -> int:
    expected = stages.load_expected(config.expected) if config.expected is not None else {}
    out, errors = stages.run_all(config, manifest)
    checks = [stages.Check(f"stage {name}", stages.HARD, "ok", msg, False) for name, msg in sorted(errors.items())]
    checks += stages.evaluate(out.metrics, expected)
    out.files["reproduce.md"] = reports.check_matrix_md(checks)
    write_outputs(out.files, out_dir, config.report_formats | {"md"})
    width = max((len(c.name) for c in checks), default=10)
    for c in checks:
        print(f"{c.status:4}  {c.kind:11}  {c.name:<{width}}  expected {c.expected_text}  actual {c.actual_text}")
    failed = [c for c in checks if c.failed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks without hard failure")
    if failed:
        print("failed: " + ", ".join(c.name for c in failed), file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if args.offline:
        os.environ[OFFLINE_ENV] = "1"
    try:
        config = PipelineConfig.load(args.config) if args.config else PipelineConfig()
        out_dir = args.out or config.output_dir
        manifest = stages.load_manifest(config)
        if args.command == "reproduce":
            return _reproduce(config, manifest, out_dir)
        result = _run_single(args.command, config, manifest)
        for path in write_outputs(result.files, out_dir, config.report_formats):
            print(path)
        return EXIT_OK
    except ConfigError as exc:
        print(f"cyclegap: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, FetchError) as exc:
        print(f"cyclegap: ingestion error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except CycleGapError as exc:
        print(f"cyclegap: data error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
