"""JSON loaders with file references, and byte-stable report emission.

A file reference is either an inline object or a path string.  Paths are
resolved relative to the directory of the file that mentions them; a path
starting with ``data:`` points into the bundled data directory.
"""
from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import InputError, ParseError
from .fields import field_from_spec
from .fourier import RepresentationBundle, bundle_from_json
from .groups import Group, Subgroup, is_subgroup, load_group
from .gset import GSet, build_action, coset_action
from .permmodule import FunctionOnX

DATA_DIR = Path(__file__).resolve().parent / "data"


@dataclass(frozen=True)
class Loaded:
    obj: Any
    base: Path  # directory used to resolve nested references


def read_json(path: Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def resolve(ref, base: Path) -> Loaded:
    if isinstance(ref, dict):
        return Loaded(ref, base)
    if not isinstance(ref, str):
        raise ParseError(f"bad file reference {ref!r}")
    if ref.startswith("data:"):
        path = DATA_DIR / ref[len("data:"):]
    else:
        path = Path(ref)
        if not path.is_absolute():
            path = base / path
    return Loaded(read_json(path), path.parent)


_GROUP_CACHE: dict[str, Group] = {}


def group_from_ref(ref, base: Path) -> Group:
    loaded = resolve(ref, base)
    key = json.dumps(loaded.obj, sort_keys=True)
    if key not in _GROUP_CACHE:
        _GROUP_CACHE[key] = load_group(loaded.obj)
    return _GROUP_CACHE[key]


def action_from_ref(ref, base: Path) -> GSet:
    loaded = resolve(ref, base)
    obj = loaded.obj
    if "group" not in obj:
        raise ParseError("action file needs a 'group' reference")
    g = group_from_ref(obj["group"], loaded.base)
    kind = obj.get("kind", "table" if "table" in obj else None)
    if kind in ("regular", "natural"):
        return build_action(g, kind)
    if kind == "coset":
        elems = obj.get("subgroup")
        if elems is None or not is_subgroup(g, elems):
            raise InputError("coset action needs a valid 'subgroup'")
        return coset_action(g, Subgroup(g, tuple(sorted(set(elems)))))
    if kind == "table":
        return build_action(g, obj["table"])
    raise ParseError(f"unknown action kind {kind!r}")


def function_from_ref(ref, base: Path) -> FunctionOnX:
    loaded = resolve(ref, base)
    obj = loaded.obj
    for key in ("action", "field", "values"):
        if key not in obj:
            raise ParseError(f"function file needs {key!r}")
    xs = action_from_ref(obj["action"], loaded.base)
    fc = field_from_spec(obj["field"])
    return FunctionOnX.from_values(xs, fc, obj["values"])


def bundle_from_ref(ref, base: Path) -> RepresentationBundle:
    loaded = resolve(ref, base)
    obj = loaded.obj
    g = group_from_ref(obj["group"], loaded.base)
    fc = field_from_spec(obj["field"])
    return bundle_from_json(g, fc, obj["irreps"])


def load_function(path: str | Path) -> FunctionOnX:
    return function_from_ref(str(path), Path.cwd())


def load_bundle(path: str | Path) -> RepresentationBundle:
    return bundle_from_ref(str(path), Path.cwd())


def builtin_group(name: str) -> Group:
    return group_from_ref(f"data:groups/{name}.json", DATA_DIR)


def builtin_bundle(name: str) -> RepresentationBundle:
    return bundle_from_ref(f"data:bundles/{name}.json", DATA_DIR)


# ---------------------------------------------------------------------------
# emission

def _jsonable(obj):
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj


def render(obj, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        if hasattr(obj, "csv_rows"):
            header, rows = obj.csv_rows()
        else:
            data = _jsonable(obj)
            if not isinstance(data, dict):
                raise InputError("csv output needs a flat record or a ledger")
            header = sorted(k for k, v in data.items() if not isinstance(v, (dict, list)))
            rows = [[data[k] for k in header]]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_csv_cell(v) for v in row])
        return buf.getvalue()
    raise InputError(f"unknown format {fmt!r}")


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return v


def emit_report(obj, fmt: str = "json", path: str | Path | None = None) -> str:
    """Write ``obj`` as JSON (sorted keys) or CSV; returns the text written."""
    text = render(obj, fmt)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
