"""Rich output layer for the stripes CLI.

All human-facing output flows through this module so that callers never
touch ``print()`` or ``console.print()`` directly.

Two global consoles are provided:

* ``console`` writes to **stderr** (messages, tables, log records).
* ``output_console`` writes to **stdout** (CSV / JSON payloads).
"""

from __future__ import annotations

import json
from typing import Any, Sequence

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from .manifest import _json_default
from .theme import STRIPES_THEME

# ---------------------------------------------------------------------------
# Console singletons
# ---------------------------------------------------------------------------

console = Console(theme=STRIPES_THEME, stderr=True, highlight=False)
"""Interactive console on *stderr*."""

output_console = Console(theme=STRIPES_THEME, highlight=False, soft_wrap=True)
"""Piped console on *stdout* for machine-readable output."""


# ---------------------------------------------------------------------------
# Notifications
# ---------------------------------------------------------------------------


def _notify(text: str, style: str, title: str) -> None:
    try:
        console.print(
            Panel(
                Text(text, style=style),
                title=f"[{style}]{title}[/]",
                border_style=style,
                padding=(0, 2),
            )
        )
    except Exception:
        console.print(f"{title}: {text}", markup=False, emoji=False)


def print_error(text: str) -> None:
    """Print a red-bordered error panel."""
    _notify(text, "error", "ERROR")


def print_success(text: str) -> None:
    _notify(text, "success", "SUCCESS")


def print_warning(text: str) -> None:
    _notify(text, "warning", "WARNING")


def print_info(text: str) -> None:
    _notify(text, "info", "Info")


# ---------------------------------------------------------------------------
# Tables and payloads
# ---------------------------------------------------------------------------


def print_table(
    title: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]
) -> None:
    """Print a rounded table on stderr.

    Parameters
    ----------
    title:
        Table title.
    columns:
        Header labels; numeric cells are right-aligned.
    rows:
        Cell values, converted with ``str``.
    """
    try:
        if not rows:
            console.print(f"[dim]{title}: nothing to show.[/]")
            return
        table = Table(
            title=f"[title]{title}[/]",
            box=box.ROUNDED,
            border_style="border",
            header_style="bold",
        )
        for i, col in enumerate(columns):
            numeric = all(isinstance(r[i], (int, float)) for r in rows)
            table.add_column(
                col,
                style="number" if numeric else "value",
                justify="right" if numeric else "left",
            )
        for row in rows:
            table.add_row(*(str(c) for c in row))
        console.print(table)
    except Exception:
        for row in rows:
            console.print("  ".join(str(c) for c in row), markup=False, emoji=False)


def print_suite_results(results: Sequence[dict[str, Any]]) -> None:
    """One line per verify suite with a pass/fail badge."""
    for result in results:
        badge = "badge.pass" if result["passed"] else "badge.fail"
        label = " PASS " if result["passed"] else " FAIL "
        line = Text()
        line.append(label, style=badge)
        line.append(f" {result['suite']:<12}", style="label")
        line.append(f" max error {result['max_error']:.3e}", style="value")
        if result.get("detail"):
            line.append(f"  {result['detail']}", style="hint")
        console.print(line)


def emit_json(payload: Any) -> None:
    """Write *payload* as JSON on stdout."""
    output_console.print(
        json.dumps(payload, indent=2, sort_keys=True, default=_json_default),
        markup=False, emoji=False
    )


def emit_text(text: str) -> None:
    """Write raw text (CSV) on stdout."""
    output_console.print(text, markup=False, emoji=False, end="")
