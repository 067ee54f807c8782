"""Report serialization shared by the CLI commands.

JSON reports carry ``schema_version`` and validate against
``schemas/report-v1.schema.json``. CSV output has a header row, comma
separators and LF line endings; floats are written with 17 significant digits.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from importlib import resources
from typing import Iterable, List, Optional, Sequence

SCHEMA_VERSION = "1.0"
SCHEMA_FILE = "report-v1.schema.json"


def load_schema() -> dict:
    text = resources.files("chtmorse").joinpath("schemas", SCHEMA_FILE).read_text()
    return json.loads(text)


def rational(x) -> str:
    """Exact rational as ``"p"`` or ``"p/q"``."""
    return str(Fraction(x))


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    if isinstance(v, Fraction):
        return rational(v)
    return str(v)


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


def to_csv(
    header: Sequence[str],
    rows: Iterable[Sequence],
    footer: Optional[List[tuple]] = None,
) -> str:
    """CSV text; ``footer`` pairs become trailing ``# key=value`` lines."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    for key, value in footer or []:
        buf.write(f"# {key}={_cell(value)}\n")
    return buf.getvalue()
