"""Serialization of semigroups, covarieties and trees (JSON, CSV, DOT, plain)."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, TextIO

from .covariety import EnumerationTree
from .semigroup import NumericalSemigroup, remove_element, to_record

CSV_COLUMNS = ("frobenius", "multiplicity", "genus", "type", "embedding_dimension",
               "rank", "msg", "gaps")


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def csv_row(s: NumericalSemigroup) -> list:
    naturals = s.is_naturals
    return [
        s.frobenius,
        s.multiplicity,
        s.genus,
        "" if naturals else s.type,
        s.embedding_dimension,
        # rank inside A(F(S)): minimal generators below F
        "" if naturals else sum(1 for x in s.msg if x < s.frobenius),
        ";".join(map(str, s.msg)),
        ";".join(map(str, s.gaps)),
    ]


def csv_writer(out: TextIO):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    return w


def gap_label(s: NumericalSemigroup) -> str:
    return "[" + ",".join(map(str, s.gaps)) + "]"


def tree_to_dot(tree: EnumerationTree, name: str = "G") -> str:
    ids = {s: f"n{i}" for i, s in enumerate(tree.vertices)}
    buf = io.StringIO()
    buf.write(f"digraph {name} {{\n")
    for s in tree.vertices:
        buf.write(f'  {ids[s]} [label="{gap_label(s)}"];\n')
    for child, parent in tree.edges:
        buf.write(f"  {ids[child]} -> {ids[parent]};\n")
    buf.write("}\n")
    return buf.getvalue()


def tree_to_json(tree: EnumerationTree) -> dict:
    return {
        "root": list(tree.root.gaps),
        "vertices": [list(s.gaps) for s in tree.vertices],
        "edges": [[list(c.gaps), list(p.gaps)] for c, p in tree.edges],
    }


def stream_dot(vertices: Iterable[NumericalSemigroup], root: NumericalSemigroup,
               out: TextIO, name: str = "G") -> int:
    """DOT for vertices arriving in BFS order; parents always precede children."""
    ids: dict[NumericalSemigroup, str] = {}
    out.write(f"digraph {name} {{\n")
    for s in vertices:
        ids[s] = f"n{len(ids)}"
        out.write(f'  {ids[s]} [label="{gap_label(s)}"];\n')
        if s != root:
            out.write(f"  {ids[s]} -> {ids[remove_element(s, s.multiplicity)]};\n")
    out.write("}\n")
    return len(ids)


def records(semigroups: Iterable[NumericalSemigroup]) -> list[dict]:
    return [to_record(s) for s in semigroups]
