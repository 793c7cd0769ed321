"""Stable JSON and aligned text tables for command output."""
from __future__ import annotations

import json
from collections import defaultdict
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .monolith import Case, GroupSpec, enumerate_group
from .subgroups import DiagonalType, ProductType, Socle, TwistKernel, enumerate_maximals_G


def _default(obj: Any):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, Case):
        return obj.value
    return str(obj)


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, default=_default) + "\n"


def envelope(command: str, flags: dict, result: Any) -> dict:
    return {"tool": "monocover", "version": __version__, "command": command, "flags": flags, "result": result}


def text_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = []
    for k, row in enumerate(cells):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        print(text, end="")
        return
    Path(path).write_text(text, encoding="utf-8")


def _kind(D) -> str:
    if isinstance(D, Socle):
        return "N"
    if isinstance(D, TwistKernel):
        return f"H{D.r}"
    if isinstance(D, DiagonalType):
        return "d" if D.m == 2 and len(D.classes) == 1 else "diag"
    if isinstance(D, ProductType):
        lab = D.label
        if lab.startswith("stab"):
            return "r"
        if lab.startswith("D10"):
            return "s"
        if lab.startswith("int"):
            return "t"
        return "prod:" + lab.split("[")[0].split("(")[0]
    return type(D).__name__


def _spread(values) -> str:
    vals = sorted(set(int(v) for v in values))
    return "/".join(str(v) for v in vals)


def census_rows(spec: GroupSpec) -> tuple[list[str], list[list]]:
    """One row per type of maximal subgroup: count, order, and element-type counts where defined."""
    G = enumerate_group(spec)
    fam = enumerate_maximals_G(spec)
    groups: dict[str, list[int]] = defaultdict(list)
    for D, b in fam.items():
        groups[_kind(D)].append(b)
    order_key = {"N": 0, "r": 1, "s": 2, "t": 3, "d": 4}
    kinds = sorted(groups, key=lambda k: (order_key.get(k, 9), k))
    if spec.case is Case.EVEN and spec.n == 5 and spec.m == 2:
        codes = G.type_codes()
        m3, m5 = codes == "(3)", codes == "(5)"
        headers = ["type", "count", "order", "type (3)", "type (5)"]
        rows = []
        for k in kinds:
            masks = [np.frombuffer(b.to_bytes((G.order + 7) // 8, "little"), dtype=np.uint8) for b in groups[k]]
            bools = [np.unpackbits(mk, bitorder="little")[:G.order].astype(bool) for mk in masks]
            rows.append([k, len(groups[k]), _spread(b.bit_count() for b in groups[k]),
                         _spread(x[m3].sum() for x in bools), _spread(x[m5].sum() for x in bools)])
        return headers, rows
    headers = ["type", "count", "order"]
    return headers, [[k, len(groups[k]), _spread(b.bit_count() for b in groups[k])] for k in kinds]
