"""Deterministic JSON formats: groups, braces, solutions, census lines, reports.

Loaders run full validation and refuse silently-invalid input.  Tables whose
identity is not at index 0 are relabeled on load and the permutation used is
recorded in the load report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .braces import SkewBrace, validate_brace
from .construct import CensusEntry
from .errors import GroupValidationError, NoIdentityAtZero
from .groups import FiniteGroup, Perm, validate_group
from .ybe import Solution, validate_solution


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def dumps_line(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


@dataclass(frozen=True)
class LoadReport:
    """How a file was brought into canonical form."""

    relabeling: Perm | None  # old index -> new index, None when untouched

    def to_json(self) -> dict:
        return {"relabeling": list(self.relabeling) if self.relabeling else None}


def _find_identity(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    for e in range(n):
        if all(table[e][a] == a and table[a][e] == a for a in range(n)):
            return e
    raise NoIdentityAtZero(-1)


def _relabel(table: Sequence[Sequence[int]], perm: Perm) -> list[list[int]]:
    n = len(table)
    out = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            out[perm[a]][perm[b]] = perm[table[a][b]]
    return out


def _swap_perm(n: int, e: int) -> Perm:
    perm = list(range(n))
    perm[0], perm[e] = e, 0
    return tuple(perm)


def group_to_json(G: FiniteGroup) -> dict:
    return {"order": G.order, "table": [list(r) for r in G.table]}


def load_group_data(data: dict) -> tuple[FiniteGroup, LoadReport]:
    table = data["table"]
    if len(table) != data.get("order", len(table)):
        raise GroupValidationError("declared order does not match the table")
    e = _find_identity(table)
    relabeling = None
    if e != 0:
        relabeling = _swap_perm(len(table), e)
        table = _relabel(table, relabeling)
    return validate_group(table), LoadReport(relabeling)


def load_group(path: str | Path) -> tuple[FiniteGroup, LoadReport]:
    return load_group_data(json.loads(Path(path).read_text(encoding="utf-8")))


def brace_to_json(B: SkewBrace) -> dict:
    return {"order": B.order,
            "add": [list(r) for r in B.add.table],
            "mul": [list(r) for r in B.mul.table]}


def load_brace_data(data: dict) -> tuple[SkewBrace, LoadReport]:
    add, mul = data["add"], data["mul"]
    if len(add) != data.get("order", len(add)):
        raise GroupValidationError("declared order does not match the tables")
    e = _find_identity(add)
    relabeling = None
    if e != 0:
        relabeling = _swap_perm(len(add), e)
        add = _relabel(add, relabeling)
        mul = _relabel(mul, relabeling)
    return validate_brace(add, mul), LoadReport(relabeling)


def load_brace(path: str | Path) -> tuple[SkewBrace, LoadReport]:
    return load_brace_data(json.loads(Path(path).read_text(encoding="utf-8")))


def solution_to_json(S: Solution) -> dict:
    return S.to_json()


def load_solution_data(data: dict) -> Solution:
    return validate_solution(data["lambda"], data["rho"])


def load_solution(path: str | Path) -> Solution:
    return load_solution_data(json.loads(Path(path).read_text(encoding="utf-8")))


def census_entry_to_json(entry: CensusEntry, index: int) -> dict:
    return {
        "index": index,
        "order": entry.order,
        "add_group": {"id": entry.add_group_id, "name": entry.add_group_name},
        "mul_group": {"id": entry.mul_group_id, "name": entry.mul_group_name},
        "add": [list(r) for r in entry.brace.add.table],
        "mul": [list(r) for r in entry.brace.mul.table],
        "provenance": {"phi": [list(entry.provenance.perm(g))
                               for g in entry.brace.elements()]},
    }


def census_to_lines(entries: Sequence[CensusEntry]) -> str:
    return "".join(dumps_line(census_entry_to_json(e, i))
                   for i, e in enumerate(entries))
