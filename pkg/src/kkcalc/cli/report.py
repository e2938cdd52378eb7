"""Text and JSON emission.

JSON output is an envelope ``{"schema_version": 1, "results": [...]}`` with
one entry per command, in the order written.  Keys are sorted and the
layout is fixed, so identical jobs give byte-identical output.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass
from typing import Any

from kkcalc.cli.commands import Outcome
from kkcalc.cli.jobfile import SCHEMA_VERSION


@dataclass
class Entry:
    command: dict[str, Any]
    outcome: Outcome | None = None
    error: dict[str, Any] | None = None


def use_color(stream=None) -> bool:
    stream = stream or sys.stdout
    if os.environ.get("NO_COLOR") is not None or os.environ.get("KKCALC_NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def to_json(entries: list[Entry]) -> str:
    results = []
    for e in entries:
        item: dict[str, Any] = {"command": e.command, "ok": e.error is None}
        if e.error is None:
            item["result"] = e.outcome.data
        else:
            item["error"] = e.error
        results.append(item)
    doc = {"schema_version": SCHEMA_VERSION, "results": results}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _header(cmd: dict) -> str:
    args = " ".join(f"{k}={','.join(v) if isinstance(v, list) else v}"
                    for k, v in cmd.items() if k != "op")
    return f"{cmd['op']} {args}".rstrip()


def to_text(entries: list[Entry], color: bool = False) -> str:
    bold, red, reset = ("\x1b[1m", "\x1b[31m", "\x1b[0m") if color else ("", "", "")
    blocks = []
    for e in entries:
        lines = [f"{bold}{_header(e.command)}{reset}"]
        if e.error is not None:
            lines.append(f"{red}error ({e.error['kind']}): {e.error['message']}{reset}")
        else:
            rows = e.outcome.rows
            width = max((len(k) for k, _ in rows), default=0)
            lines.extend(f"  {k.ljust(width)} = {v}" for k, v in rows)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def emit(entries: list[Entry], fmt: str = "text", color: bool = False) -> str:
    return to_json(entries) if fmt == "json" else to_text(entries, color)
