#!/usr/bin/env python3
"""Report writers for the table and JSON formats."""

from pathlib import Path
import json
import logging
import sys
from typing import Any, Dict, List, Optional

log = logging.getLogger(__name__)


def render_json(report: Dict[str, Any]) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _is_ideal(value: Any) -> bool:
    return isinstance(value, dict) and "rows" in value and "generators" in value


def _generators(ideal: Dict[str, Any]) -> str:
    return "(" + (", ".join(str(g) for g in ideal["generators"]) or "0") + ")"


def _describe_ideal(ideal: Dict[str, Any]) -> str:
    return f"{_generators(ideal)}  index {ideal['index']}"


def _scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    return str(value)


def _lines(key: str, value: Any, indent: int, out: List[str]) -> None:
    pad = "  " * indent
    label = f"{pad}{key}:" if key else pad.rstrip()
    if _is_ideal(value):
        out.append(f"{label} {_describe_ideal(value)}".rstrip())
    elif isinstance(value, dict):
        if key:
            out.append(label)
        for k in sorted(value):
            _lines(k, value[k], indent + 1 if key else indent, out)
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            out.append(f"{label} [{', '.join(_scalar(v) for v in value)}]")
            return
        out.append(f"{label} {len(value)} item(s)")
        for i, item in enumerate(value, 1):
            if _is_ideal(item):
                out.append(f"{pad}  {i}. {_describe_ideal(item)}")
            elif isinstance(item, list) and all(_is_ideal(v) for v in item):
                out.append(f"{pad}  {i}. " + " * ".join(_generators(v) for v in item))
            else:
                _lines(f"{i}", item, indent + 1, out)
    else:
        out.append(f"{label} {_scalar(value)}")


def render_table(report: Dict[str, Any]) -> str:
    """Indented plain-text rendering; lists of ideals print one per line."""
    out: List[str] = []
    heading = f"fmdlab {report.get('command', '')}".rstrip()
    out.append(heading)
    out.append("=" * len(heading))
    for key in sorted(report):
        if key in ("command", "schema"):
            continue
        _lines(key, report[key], 0, out)
    return "\n".join(out) + "\n"


def write_outputs(report: Dict[str, Any], output: str, report_path: Optional[Path] = None) -> None:
    """Print the report on stdout in ``output`` format; also save JSON to ``report_path`` if given."""
    text = render_json(report) if output == "json" else render_table(report)
    sys.stdout.write(text)
    if report_path is not None:
        report_path.parent.mkdir(parents=True, exist_ok=True)
        with open(report_path, "w") as f:
            f.write(render_json(report))
        log.info("JSON report written to %s", report_path)
