"""semicov command line.

Exit codes: 0 ok, 1 verification mismatch, 2 bad input, 3 output failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, TextIO

from . import covariety as cov
from . import frobenius as af
from .errors import SemicovError
from .formats import csv_row, csv_writer, dumps, stream_dot, tree_to_json
from .oracle import brute_enumerate
from .semigroup import (
    NumericalSemigroup,
    from_gaps,
    from_generators,
    from_record,
    is_irreducible,
    is_med,
    to_record,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3

FORMATS = ("json", "jsonl", "csv", "dot", "plain")


class OutputError(Exception):
    pass


@dataclass
class CliConfig:
    subcommand: str
    F: int | None = None
    generators: list[int] = field(default_factory=list)
    gaps: list[int] | None = None
    format: str | None = None
    parallel: int = 1
    order_insensitive: bool = False
    low_memory: bool = False
    output: str | None = None
    files: list[str] = field(default_factory=list)

    def validate(self) -> None:
        if self.parallel < 1:
            raise SemicovError("--parallel must be >= 1")
        if self.format is not None and self.format not in FORMATS:
            raise SemicovError(f"unknown format {self.format!r}")

    @property
    def enum_options(self) -> dict:
        return {"workers": self.parallel, "order_insensitive": self.order_insensitive,
                "low_memory": self.low_memory}


# -- helpers --------------------------------------------------------------

def _semigroup_input(cfg: CliConfig) -> NumericalSemigroup:
    if cfg.gaps is not None:
        if cfg.generators:
            raise SemicovError("give generators or --gaps, not both")
        return from_gaps(cfg.gaps)
    return from_generators(cfg.generators)


def _require_f(cfg: CliConfig) -> int:
    if cfg.F is None:
        raise SemicovError("-F is required")
    return cfg.F


def _emit_stream(out: TextIO, fmt: str, semigroups: Iterable[NumericalSemigroup],
                 header: dict | None = None, trailer: dict | None = None,
                 root: NumericalSemigroup | None = None) -> int:
    """Write semigroups one at a time; returns how many were written."""
    count = 0
    if fmt == "jsonl":
        if header is not None:
            out.write(dumps(header) + "\n")
        for s in semigroups:
            out.write(dumps(to_record(s)) + "\n")
            count += 1
        out.write(dumps({"count": count, **(trailer or {})}) + "\n")
    elif fmt == "json":
        recs = [to_record(s) for s in semigroups]
        count = len(recs)
        out.write(dumps({**(header or {}), "members": recs, "count": count, **(trailer or {})}) + "\n")
    elif fmt == "csv":
        w = csv_writer(out)
        for s in semigroups:
            w.writerow(csv_row(s))
            count += 1
    elif fmt == "plain":
        for s in semigroups:
            out.write(f"{s}\n")
            count += 1
    elif fmt == "dot":
        if root is None:
            raise SemicovError("dot output needs a tree")
        count = stream_dot(semigroups, root, out)
    return count


# -- subcommands ----------------------------------------------------------

def cmd_enumerate(cfg: CliConfig, out: TextIO) -> int:
    f = _require_f(cfg)
    nodes = af.iter_af(f, **cfg.enum_options)
    _emit_stream(out, cfg.format or "jsonl", nodes, header={"F": f}, root=af.delta(f))
    return EXIT_OK


def cmd_tree(cfg: CliConfig, out: TextIO) -> int:
    f = _require_f(cfg)
    fmt = cfg.format or "dot"
    if fmt == "dot":
        _emit_stream(out, "dot", af.iter_af(f, **cfg.enum_options), root=af.delta(f))
    elif fmt == "json":
        out.write(dumps(tree_to_json(cov.tree(af.af_covariety(f)))) + "\n")
    else:
        raise SemicovError("tree supports --format dot or json")
    return EXIT_OK


def analyze_report(s: NumericalSemigroup) -> dict:
    trivial = s.is_naturals
    return {
        "frobenius": s.frobenius,
        "multiplicity": s.multiplicity,
        "genus": s.genus,
        "embedding_dimension": s.embedding_dimension,
        "type": None if trivial else s.type,
        "msg": list(s.msg),
        "gaps": list(s.gaps),
        "pseudo_frobenius": None if trivial else list(s.pseudo_frobenius),
        "special_gaps": None if trivial else list(s.special_gaps),
        "med": is_med(s),
        "irreducible": is_irreducible(s),
        "small_elements": str(s),
    }


def cmd_analyze(cfg: CliConfig, out: TextIO) -> int:
    report = analyze_report(_semigroup_input(cfg))
    if (cfg.format or "plain") == "plain":
        for key, value in report.items():
            if isinstance(value, list):
                value = "{" + ",".join(map(str, value)) + "}"
            elif value is None:
                value = "n/a"
            elif isinstance(value, bool):
                value = str(value).lower()
            out.write(f"{key}: {value}\n")
    else:
        out.write(dumps(report) + "\n")
    return EXIT_OK


def cmd_closure(cfg: CliConfig, out: TextIO) -> int:
    s = af.af_closure(_require_f(cfg), cfg.generators)
    _emit_single(out, cfg.format or "json", s)
    return EXIT_OK


def _emit_single(out: TextIO, fmt: str, s: NumericalSemigroup) -> None:
    if fmt in ("json", "jsonl"):
        out.write(dumps(to_record(s)) + "\n")
    elif fmt == "csv":
        w = csv_writer(out)
        w.writerow(csv_row(s))
    elif fmt == "plain":
        out.write(f"{s}\n")
    else:
        raise SemicovError(f"format {fmt!r} not supported here")


def cmd_chain(cfg: CliConfig, out: TextIO) -> int:
    s = _semigroup_input(cfg)
    f = s.frobenius if cfg.F is None else cfg.F
    chain = cov.chain_cad(s, f)
    _emit_stream(out, cfg.format or "jsonl", chain.links, header={"F": f})
    return EXIT_OK


def _load_semigroups(path: str) -> list[NumericalSemigroup]:
    with (sys.stdin if path == "-" else open(path)) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
        items = data if isinstance(data, list) else data.get("members", [data])
    except json.JSONDecodeError:
        items = [json.loads(line) for line in text.splitlines() if line.strip()]
    return [from_record(r) for r in items if isinstance(r, dict) and ("gaps" in r or "msg" in r)]


def cmd_cov_generate(cfg: CliConfig, out: TextIO) -> int:
    family = []
    for path in cfg.files:
        try:
            family.extend(_load_semigroups(path))
        except OSError as exc:
            raise SemicovError(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SemicovError(f"{path}: invalid JSON: {exc}") from exc
    c = cov.generated_covariety(family)
    out.write(dumps(c.to_json()) + "\n")
    return EXIT_OK


def cmd_count_rank1(cfg: CliConfig, out: TextIO) -> int:
    f = _require_f(cfg)
    n = len(af.rank1_classify(f))
    if (cfg.format or "plain") == "plain":
        out.write(f"{n}\n")
    else:
        out.write(dumps({"F": f, "count": n}) + "\n")
    return EXIT_OK


def cmd_max_rank(cfg: CliConfig, out: TextIO) -> int:
    f = _require_f(cfg)
    _emit_stream(out, cfg.format or "jsonl", af.max_rank_members(f), header={"F": f})
    return EXIT_OK


def cmd_verify(cfg: CliConfig, out: TextIO) -> int:
    f = _require_f(cfg)
    fast = af.members(f, **cfg.enum_options)
    brute = brute_enumerate(f)
    duplicates = len(fast) - len(set(fast))
    missing = sorted(brute - set(fast))
    extra = sorted(set(fast) - brute)
    ok = not (missing or extra or duplicates)
    status = "match" if ok else "mismatch"
    fmt = cfg.format or "plain"
    if fmt == "plain":
        out.write(f"{status}: F={f} enumerate={len(fast)} brute={len(brute)}\n")
        for s in missing:
            out.write(f"  missing {s}\n")
        for s in extra:
            out.write(f"  extra {s}\n")
        if duplicates:
            out.write(f"  duplicates {duplicates}\n")
    elif fmt == "jsonl":
        _emit_stream(out, "jsonl", sorted(brute), header={"F": f}, trailer={"status": status})
    else:
        out.write(dumps({
            "F": f, "status": status, "enumerate": len(fast), "brute": len(brute),
            "missing": [list(s.gaps) for s in missing],
            "extra": [list(s.gaps) for s in extra],
            "duplicates": duplicates,
        }) + "\n")
    return EXIT_OK if ok else EXIT_MISMATCH


COMMANDS = {
    "enumerate": cmd_enumerate,
    "analyze": cmd_analyze,
    "closure": cmd_closure,
    "chain": cmd_chain,
    "cov-generate": cmd_cov_generate,
    "count-rank1": cmd_count_rank1,
    "max-rank": cmd_max_rank,
    "verify": cmd_verify,
    "tree": cmd_tree,
}


# -- argument parsing -----------------------------------------------------

@lru_cache(maxsize=1)
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-F", dest="F", type=int, help="Frobenius number")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--parallel", type=int, default=None,
                        help="worker processes (default: $SEMICOV_THREADS or 1)")
    common.add_argument("--order-insensitive", action="store_true",
                        help="allow output order to depend on scheduling")
    common.add_argument("--low-memory", action="store_true",
                        help="recompute Apery tables instead of storing them per node")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="semicov",
                                     description="Numerical semigroups and covarieties.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in ("enumerate", "count-rank1", "max-rank", "verify", "tree"):
        sub.add_parser(name, parents=[common])
    for name in ("analyze", "chain"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("generators", nargs="*", type=int)
        p.add_argument("--gaps", nargs="*", type=int)
    p = sub.add_parser("closure", parents=[common])
    p.add_argument("generators", nargs="*", type=int, metavar="element")
    p = sub.add_parser("cov-generate", parents=[common])
    p.add_argument("files", nargs="+", help="JSON/JSONL files of semigroup records ('-' for stdin)")
    return parser


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    cfg = CliConfig(
        subcommand=ns.subcommand,
        F=ns.F,
        generators=list(getattr(ns, "generators", []) or []),
        gaps=getattr(ns, "gaps", None),
        format=ns.format,
        parallel=af.default_workers() if ns.parallel is None else ns.parallel,
        order_insensitive=ns.order_insensitive,
        low_memory=ns.low_memory,
        output=ns.output,
        files=list(getattr(ns, "files", []) or []),
    )
    cfg.validate()
    return cfg


@contextmanager
def _open_output(path: str | None, stdout: TextIO):
    if path is None:
        yield stdout
        return
    try:
        fh = open(path, "w", newline="")
    except OSError as exc:
        raise OutputError(str(exc)) from exc
    with fh:
        yield fh


def run(argv: list[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        with _open_output(cfg.output, stdout) as out:
            return COMMANDS[cfg.subcommand](cfg, out)
    except SemicovError as exc:
        stderr.write(f"semicov: error: {exc}\n")
        return EXIT_INPUT
    except (OutputError, OSError) as exc:
        stderr.write(f"semicov: output error: {exc}\n")
        return EXIT_IO


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
