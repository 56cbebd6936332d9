"""Report serialization with fixed 17-significant-digit numbers.

``json`` writes the shortest round-trip repr, so documents are emitted by a
small writer of our own. Non-finite floats become the strings ``"inf"``,
``"-inf"`` and ``"nan"`` in both JSON and CSV.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from pathlib import Path

SCHEMA_PATH = Path(__file__).with_name("schema") / "report.schema.json"


def format_number(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def _write(obj, out: list, indent: int, level: int) -> None:
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, enum.Enum):
        _write(obj.value, out, indent, level)
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        s = format_number(obj)
        out.append(s if math.isfinite(obj) else json.dumps(s))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{")
        for k, (key, val) in enumerate(obj.items()):
            if k:
                out.append(",")
            out.append(pad)
            out.append(json.dumps(str(key)) + ": ")
            _write(val, out, indent, level + 1)
        out.append(end + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            out.append("[")
            for k, v in enumerate(obj):
                if k:
                    out.append(", ")
                _write(v, out, indent, level + 1)
            out.append("]")
            return
        out.append("[")
        for k, val in enumerate(obj):
            if k:
                out.append(",")
            out.append(pad)
            _write(val, out, indent, level + 1)
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    out: list[str] = []
    _write(obj, out, indent, 0)
    return "".join(out) + "\n"


def compact(obj) -> str:
    return dumps(obj, indent=0).replace("\n", "")


def document(config_echo: dict, reports: list[dict], n_pass: int, n_fail: int) -> dict:
    return {"config_echo": config_echo, "reports": reports, "summary": {"pass": n_pass, "fail": n_fail}}


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_number(v)
    if v is None:
        return ""
    if isinstance(v, (dict, list, tuple)):
        return compact(v)
    if isinstance(v, enum.Enum):
        return str(v.value)
    return str(v)


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    fields = list(rows[0])
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([_cell(r.get(f)) for f in fields])
    return buf.getvalue()


def load_schema() -> dict:
    return json.loads(SCHEMA_PATH.read_text())
