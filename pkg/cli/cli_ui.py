import json
import sys
from typing import Any, Dict, Iterable, List, Sequence, TextIO

from hp_modules.hp_utils import Colors


# ─── STATUS LINES (stderr, colored) ───────────────────────────────────────────
def status(message: str, color: str = Colors.SYSTEM_INFO, stream: TextIO = None) -> None:
    """Human-facing progress line; stdout stays free for machine-readable output."""
    stream = stream or sys.stderr
    if stream.isatty():
        stream.write(f"{color}{message}{Colors.ENDC}\n")
    else:
        stream.write(message + "\n")
    stream.flush()


def violation(message: str) -> None:
    status(message, Colors.VIOLATION)


# ─── MACHINE-READABLE OUTPUT (stdout, never colored) ──────────────────────────
def _cell(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple, set, frozenset)):
        return "{" + ",".join(_cell(v) for v in sorted(value)) + "}"
    return str(value)


def format_tsv(rows: Sequence[Dict[str, Any]], keys: Sequence[str]) -> str:
    lines = ["\t".join(keys)]
    lines.extend("\t".join(_cell(row.get(k)) for k in keys) for row in rows)
    return "\n".join(lines) + "\n"


def format_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def emit(rows: List[Dict[str, Any]], keys: Sequence[str], as_json: bool, stream: TextIO = None) -> None:
    stream = stream or sys.stdout
    if as_json:
        stream.write(format_json(rows if len(rows) != 1 else rows[0]))
    else:
        stream.write(format_tsv(rows, keys))
    stream.flush()


def witness_cells(vertex_sets: Iterable[Iterable[int]]) -> List[List[int]]:
    return [sorted(s) for s in vertex_sets]
