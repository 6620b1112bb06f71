"""Delimited output with a schema-version column and a timestamp header.

Every CSV starts with a single ``#``-prefixed timestamp line; everything
below it is deterministic for a fixed config, which the test suite checks
byte-for-byte.
"""
from __future__ import annotations

import csv
import datetime
import json
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .config import SCHEMA_VERSION


def _timestamp() -> str:
    return datetime.datetime.now(datetime.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def write_csv(path: str | Path, header: Sequence[str],
              rows: Iterable[Sequence], add_schema: bool = True) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# generated {_timestamp()}\n")
        writer = csv.writer(fh, lineterminator="\n")
        if add_schema:
            writer.writerow(["schema_version", *header])
            for row in rows:
                writer.writerow([SCHEMA_VERSION, *_fmt_row(row)])
        else:
            writer.writerow(header)
            for row in rows:
                writer.writerow(_fmt_row(row))
    return path


def _fmt_row(row: Sequence) -> list:
    out = []
    for v in row:
        if isinstance(v, float):
            out.append(format(v, ".12g"))
        else:
            out.append(v)
    return out


def write_jsonl(path: str | Path, records: Iterable[Mapping]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps({"schema_version": SCHEMA_VERSION, **rec}) + "\n")
    return path


def read_csv_body(path: str | Path) -> list[str]:
    """File lines without ``#`` comments; the determinism comparator."""
    with open(path, encoding="utf-8") as fh:
        return [ln for ln in fh.read().splitlines() if not ln.startswith("#")]


def lower_median(values: Sequence[float]) -> float:
    """Median that picks the lower of the two middle values for even counts."""
    ordered = sorted(values)
    if not ordered:
        raise ValueError("empty sequence")
    return float(ordered[(len(ordered) - 1) // 2])
