"""Catppuccin Mocha colour theme for Rich.

Provides a :class:`rich.theme.Theme` named ``STRIPES_THEME`` with every
named style used by the stripes CLI.  Use it by passing ``theme=`` to any
:class:`rich.console.Console`, e.g.::

    >>> from rich.console import Console
    >>> from src.cli.theme import STRIPES_THEME
    >>> console = Console(theme=STRIPES_THEME)
    >>> console.print("[success]All good![/]")
"""

from __future__ import annotations

from rich.theme import Theme as RichTheme

# ---------------------------------------------------------------------------
# Catppuccin Mocha palette
# ---------------------------------------------------------------------------
# Reference: https://github.com/catppuccin/catppuccin
_BLUE = "#89b4fa"
_LAVENDER = "#b4befe"
_YELLOW = "#f9e2af"
_RED = "#f38ba8"
_GREEN = "#a6e3a1"
_TEXT = "#cdd6f4"
_BG = "#1e1e2e"
_BORDER = "#45475a"
_SUBTEXT0 = "#a6adc8"
_SUBTEXT1 = "#bac2de"
_OVERLAY2 = "#9399b2"
_INFO = "#74c7ec"

STRIPES_THEME = RichTheme(
    {
        # ------------------------------------------------------------------
        # Base styles
        # ------------------------------------------------------------------
        "default": _TEXT,
        "dim": _SUBTEXT0,
        "error": _RED,
        "warning": _YELLOW,
        "success": _GREEN,
        "info": _INFO,
        # ------------------------------------------------------------------
        # UI component styles
        # ------------------------------------------------------------------
        "title": f"bold {_TEXT}",
        "label": f"bold {_TEXT}",
        "value": _SUBTEXT1,
        "hint": f"italic {_OVERLAY2}",
        "border": _BORDER,
        "accent": _LAVENDER,
        "command": f"bold {_BLUE}",
        "number": _LAVENDER,
        # ------------------------------------------------------------------
        # Suite status badges
        # ------------------------------------------------------------------
        "badge.pass": f"bold {_BG} on {_GREEN}",
        "badge.fail": f"bold {_BG} on {_RED}",
        "badge.info": f"bold {_BG} on {_INFO}",
    },
    inherit=True,
)
