"""CSV and JSON writers for experiment output."""

import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Iterable, Sequence

from ..config.models import ExperimentConfig


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def render_csv(
    config: ExperimentConfig,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    comments: Iterable[str] = (),
) -> str:
    """CSV text: a provenance comment, optional extra comments, header, rows."""
    buffer = io.StringIO()
    buffer.write(f"# config_hash={config.config_hash()} master_seed={config.master_seed}\n")
    for comment in comments:
        buffer.write(f"# {comment}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buffer.getvalue()


def write_text(text: str, path: str | Path | None) -> Path | None:
    """Write to ``path``, or to stdout when no path is given."""
    if path is None:
        sys.stdout.write(text)
        return None
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    return target


def write_json(data: Any, path: str | Path) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(data, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")
    return target
