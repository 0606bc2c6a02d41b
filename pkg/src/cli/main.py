"""Typer CLI entry point for stripes.

Commands: ``toy``, ``verify``, ``witness``, ``bench``, ``metrics``, ``mi`` and
``history``.
Exit codes: 0 success, 1 suite failure, 2 usage error.
"""

from __future__ import annotations

import asyncio
import logging
from pathlib import Path
from typing import List, Optional

import typer
from rich.logging import RichHandler

from ..config import Config
from ..context.labels import ContextType, RepOrder
from ..core.errors import StripesError, WitnessNotFound
from ..core.types import Method
from ..kernels.fixtures import PIN_BUDGET, PIN_POINTS, pin_witness
from .commands.bench import parse_lengths, run_bench
from .commands.history import forget_run, load_history, load_run
from .commands.music import run_metrics, run_mi
from .commands.toy import parse_fgrid, run_toy
from .commands.verify import SUITES, run_suites
from .manifest import RunManifest, json_text, record_run, write_text
from .output import (
    console,
    emit_json,
    emit_text,
    print_error,
    print_info,
    print_success,
    print_suite_results,
    print_table,
    print_warning,
)

# ---------------------------------------------------------------------------
# Typer app
# ---------------------------------------------------------------------------

app = typer.Typer(
    name="stripes",
    help="stripes - positional encodings as kernels",
    no_args_is_help=True,
    add_completion=False,
)


@app.callback()
def _setup(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level"),
) -> None:
    """Install the rich log handler once per invocation."""
    default = getattr(logging, Config.LOG_LEVEL, logging.WARNING)
    level = logging.DEBUG if verbose else default
    root = logging.getLogger()
    root.handlers = [
        RichHandler(console=console, show_path=False, rich_tracebacks=True)
    ]
    root.setLevel(level)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _out_dir(out: Optional[Path]) -> Path:
    return out if out is not None else Path(Config.OUTPUT_DIR)


def _finish(
    manifest: RunManifest, out_dir: Path, stem: str, exit_code: int = 0
) -> None:
    manifest.write(out_dir, stem)
    record_run(manifest, exit_code)


def _bad(exc: Exception, param: str) -> typer.BadParameter:
    return typer.BadParameter(str(exc), param_hint=param)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@app.command()
def toy(
    method: Method = typer.Option(
        ..., "--method", help="fstripe1, rope or ropepool"
    ),
    n: int = typer.Option(5, "--n", min=1, help="Number of contexts"),
    p: int = typer.Option(100, "--p", min=1, help="Number of points"),
    sigma: float = typer.Option(0.08, "--sigma", help="Content standard deviation"),
    seed: int = typer.Option(Config.SEED, "--seed"),
    fgrid: str = typer.Option("0:1:64", "--fgrid", help="start:stop:count"),
    query: int = typer.Option(50, "--query", help="Index of the query point"),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory"),
) -> None:
    """Heatmap CSV and discriminability/asymmetry JSON for the toy dataset."""
    try:
        grid = parse_fgrid(fgrid)
    except ValueError as exc:
        raise _bad(exc, "--fgrid") from exc
    if sigma <= 0:
        raise typer.BadParameter(
            f"sigma must be > 0, got {sigma}", param_hint="--sigma"
        )
    if not 0 <= query < p:
        raise typer.BadParameter(
            f"query must be in [0, {p}), got {query}", param_hint="--query"
        )
    directory = _out_dir(out)
    paths, summary = run_toy(method, n, p, sigma, seed, grid, query, directory)
    manifest = RunManifest(
        "toy",
        {
            "method": method.value,
            "n": n,
            "p": p,
            "sigma": sigma,
            "fgrid": fgrid,
            "query": query,
        },
        seed,
        outputs=[str(path) for path in paths],
    )
    _finish(manifest, directory, f"toy_{method.value}")
    rows = [(d["f"], d["value"]) for d in summary["discriminability"]]
    if rows:
        step = max(1, len(rows) // 8)
        print_table("Discriminability", ["f", "same - different"], rows[::step])
    else:
        print_warning("a single context has no discriminability; heatmap only")
    print_success(f"wrote {', '.join(str(path) for path in paths)}")


@app.command()
def verify(
    seed: int = typer.Option(Config.SEED, "--seed"),
    trials: int = typer.Option(8, "--trials", help="Random instances per suite"),
    suite: Optional[List[str]] = typer.Option(
        None, "--suite", help=f"Suites to run (default all): {', '.join(SUITES)}"
    ),
    method: Optional[Method] = typer.Option(
        None, "--method", help="Restrict to one method"
    ),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory"),
) -> None:
    """Run the equivalence and invariant suites; exit 1 if any fails."""
    if trials < 1:
        raise typer.BadParameter(
            f"trials must be >= 1, got {trials}", param_hint="--trials"
        )
    names = suite or list(SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise typer.BadParameter(
            f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}",
            param_hint="--suite",
        )
    results = run_suites(names, seed, trials, method)
    passed = all(r["passed"] for r in results)
    report = {"seed": seed, "trials": trials, "passed": passed, "suites": results}
    directory = _out_dir(out)
    path = write_text(directory / "verify.json", json_text(report))
    exit_code = 0 if passed else 1
    manifest = RunManifest(
        "verify",
        {"trials": trials, "suites": names, "method": method.value if method else None},
        seed,
        outputs=[str(path)],
    )
    _finish(manifest, directory, "verify", exit_code)
    print_suite_results(results)
    emit_json(report)
    if not passed:
        raise typer.Exit(1)


@app.command()
def witness(
    method: Method = typer.Option(..., "--method", help="fstripe1, rope or ropepool"),
    out: Path = typer.Option(..., "--out", dir_okay=False, help="Fixture path"),
    seed: int = typer.Option(Config.SEED, "--seed"),
    points: int = typer.Option(PIN_POINTS, "--points", min=2, help="Samples per Gram"),
    budget: int = typer.Option(PIN_BUDGET, "--budget", min=1, help="Search trials"),
) -> None:
    """Search for a positive-definiteness witness and pin it as JSON."""
    parameters = {"method": method.value, "points": points, "budget": budget}
    try:
        found = pin_witness(method, out, seed, points, budget, workers=Config.workers())
    except WitnessNotFound as exc:
        record_run(RunManifest("witness", parameters, seed), exit_code=1)
        print_error(str(exc))
        raise typer.Exit(1) from exc
    record_run(RunManifest("witness", parameters, seed, outputs=[str(out)]))
    print_success(
        f"{method.value} witness at trial {found.trial} (term {found.term}) -> {out}"
    )


@app.command()
def bench(
    method: Method = typer.Option(Method.FSTRIPE1, "--method"),
    lengths: str = typer.Option(
        "256,512,1024,2048", "--lengths", help="Comma-separated T"
    ),
    d: int = typer.Option(64, "--d", min=1, help="Model dimension"),
    repeats: int = typer.Option(9, "--repeats", min=1),
    seed: int = typer.Option(Config.SEED, "--seed"),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory"),
) -> None:
    """Median wall-clock time of the linear and quadratic paths."""
    try:
        parsed = parse_lengths(lengths)
    except ValueError as exc:
        raise _bad(exc, "--lengths") from exc
    directory = _out_dir(out)
    try:
        path, _rows, text = run_bench(method, parsed, d, repeats, seed, directory)
    except StripesError as exc:
        raise _bad(exc, "--d") from exc
    except ValueError as exc:
        raise _bad(exc, "--lengths") from exc
    manifest = RunManifest(
        "bench",
        {"method": method.value, "lengths": parsed, "d": d, "repeats": repeats},
        seed,
        outputs=[str(path)],
    )
    _finish(manifest, directory, f"bench_{method.value}")
    emit_text(text)


@app.command()
def metrics(
    target: Path = typer.Option(..., "--target", exists=True, dir_okay=False),
    pred: Path = typer.Option(..., "--pred", exists=True, dir_okay=False),
) -> None:
    """SSMD, CS, GS and NDD between two pianoroll files."""
    try:
        bundle = run_metrics(target, pred)
    except StripesError as exc:
        raise _bad(exc, "--target/--pred") from exc
    if bundle["ndd"] is None:
        print_warning("NDD needs at least 4 steps per quarter; reported as null")
    manifest = RunManifest("metrics", {"target": str(target), "pred": str(pred)}, 0)
    record_run(manifest)
    emit_json(bundle)


@app.command()
def mi(
    input: List[Path] = typer.Option(..., "--input", exists=True, dir_okay=False),
    context: ContextType = typer.Option(..., "--context"),
    rep_order: RepOrder = typer.Option(RepOrder.ID, "--rep-order"),
    onset_only: bool = typer.Option(False, "--onset-only", help="Count onsets only"),
) -> None:
    """Mutual information between pitches and context tokens."""
    try:
        report = run_mi(input, context, rep_order, onset_only)
    except StripesError as exc:
        raise _bad(exc, "--input/--context") from exc
    manifest = RunManifest(
        "mi",
        {
            "input": [str(path) for path in input],
            "context": context.value,
            "rep_order": rep_order.value,
            "onset_only": onset_only,
        },
        0,
    )
    record_run(manifest)
    emit_json(dict(report))


@app.command()
def history(
    limit: int = typer.Option(20, "--limit", min=1),
    command: Optional[str] = typer.Option(
        None, "--command", help="Filter by command"
    ),
    show: Optional[str] = typer.Option(
        None, "--show", help="Print one run's parameters and outputs"
    ),
    delete: Optional[str] = typer.Option(None, "--delete", help="Forget one run"),
) -> None:
    """List recent runs from the history database."""
    if show is not None:
        record = asyncio.run(load_run(show))
        if record is None:
            raise typer.BadParameter(f"no run with id {show!r}", param_hint="--show")
        emit_json(record)
        return
    if delete is not None:
        if not asyncio.run(forget_run(delete)):
            raise typer.BadParameter(
                f"no run with id {delete!r}", param_hint="--delete"
            )
        print_success(f"Deleted run {delete}")
        return
    try:
        runs = asyncio.run(load_history(limit, command))
    except Exception as exc:
        print_error(f"Failed to load run history: {exc}")
        raise typer.Exit(1) from exc
    if not runs:
        print_info("No recorded runs.")
        return
    print_table(
        "Runs",
        ["ID", "Command", "Seed", "Timestamp", "Exit", "Outputs"],
        [
            (r.id, r.command, r.seed, r.timestamp, r.exit_code, r.output_count)
            for r in runs
        ],
    )


def main() -> None:
    """Entry point declared under ``[project.scripts]`` in ``pyproject.toml``."""
    app()


if __name__ == "__main__":
    main()
