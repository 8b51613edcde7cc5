"""Command line front end: construct, aut, verify, search, enumerate.

Exit codes: 0 success / verification pass, 1 verification fail,
2 parse, resource or unsupported-input errors.  Data goes to stdout,
diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import constructions as C
from .engine import automorphisms, canonical_form
from .errors import (Graph6ParseError, GroupSpecError, GroupTableError, InputError,
                     ResourceLimitError, UnsupportedConstruction)
from .graph import from_graph6, to_dot, to_graph6
from .groups import parse_group_spec
from .perm import cycle_notation, orbits
from .search import (ENUMERATION_CAP, SEARCH_CAP, SearchConfig, enumerate_graphs,
                     search_min_edge_witness, search_min_vertex_witness)
from .verify import engine_cap, verify_witness

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

_USER_ERRORS = (Graph6ParseError, GroupSpecError, GroupTableError, InputError,
                ResourceLimitError, UnsupportedConstruction, FileNotFoundError,
                IsADirectoryError, json.JSONDecodeError)


@dataclass
class CliConfig:
    command: str
    relation: str = "vertex"
    g1: str = "I"
    g2: str = "I"
    fmt: str = "g6"
    out: str | None = None
    max_n: int = SEARCH_CAP
    enumeration_cap: int = ENUMERATION_CAP
    workers: int = 1
    subdivide: bool = False
    path: str | None = None
    as_json: bool = False

    def validate(self) -> None:
        if self.relation not in ("vertex", "edge"):
            raise InputError(f"unknown relation {self.relation!r}")
        if self.fmt not in ("g6", "dot", "json"):
            raise InputError(f"unknown format {self.fmt!r}")
        if self.workers < 1:
            raise InputError("--workers must be >= 1")
        if self.command == "search":
            cap = self.enumeration_cap + (1 if self.relation == "vertex" else 0)
            if not 1 <= self.max_n <= min(cap, SEARCH_CAP):
                raise ResourceLimitError(
                    f"--max-n {self.max_n} outside 1..{min(cap, SEARCH_CAP)}")
        if self.command == "enumerate" and self.max_n > self.enumeration_cap:
            raise ResourceLimitError(
                f"enumeration limited to {self.enumeration_cap} vertices")


def _build_witness(cfg: CliConfig) -> C.Witness:
    g1 = parse_group_spec(cfg.g1)
    g2 = parse_group_spec(cfg.g2)
    if cfg.relation == "vertex":
        return C.vertex_deletion_witness(g1, g2)
    w = C.edge_deletion_witness(g1, g2)
    return C.edge_witness_to_vertex_witness(w) if cfg.subdivide else w


def _render(w: C.Witness, fmt: str) -> str:
    if fmt == "g6":
        return to_graph6(w.graph).decode("ascii") + "\n"
    if fmt == "dot":
        return to_dot(w.graph, w.landmarks, w.target)
    return w.dumps() + "\n"


def cmd_construct(cfg: CliConfig) -> int:
    w = _build_witness(cfg)
    text = _render(w, cfg.fmt)
    sys.stdout.write(text)
    if cfg.out:
        ext = {"g6": "g6", "dot": "dot", "json": "json"}[cfg.fmt]
        if cfg.fmt != "json":
            Path(f"{cfg.out}.{ext}").write_text(text)
        Path(f"{cfg.out}.json").write_text(w.dumps() + "\n")
        print(f"wrote {cfg.out}.{ext} and {cfg.out}.json", file=sys.stderr)
    return EXIT_OK


def _read_graph(path: str):
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    lines = [ln for ln in data.splitlines() if ln.strip()]
    if not lines:
        raise Graph6ParseError("no graph in input", 0)
    return from_graph6(lines[0].strip())


def cmd_aut(cfg: CliConfig) -> int:
    g = _read_graph(cfg.path)
    pg = automorphisms(g)
    report = {
        "n": g.n,
        "edges": g.num_edges,
        "order": pg.order(),
        "generators": [cycle_notation(p) for p in pg.gens],
        "orbits": orbits(pg),
        "canonical_form": canonical_form(g),
    }
    if cfg.as_json:
        print(json.dumps(report))
    else:
        print(f"order {report['order']}")
        for gen in report["generators"]:
            print(f"generator {gen}")
        print("orbits " + " ".join("{" + ",".join(map(str, o)) + "}" for o in report["orbits"]))
        print(f"canonical {report['canonical_form']}")
    return EXIT_OK


def cmd_verify(cfg: CliConfig) -> int:
    obj = json.loads(Path(cfg.path).read_text())
    w = C.Witness.from_json(obj)
    report = verify_witness(w, cap=engine_cap())
    print(json.dumps(report.to_json()))
    if report.status == "pass":
        return EXIT_OK
    if report.status == "resource":
        return EXIT_ERROR
    for msg in report.messages:
        print(msg, file=sys.stderr)
    return EXIT_FAIL


def cmd_search(cfg: CliConfig) -> int:
    g1 = parse_group_spec(cfg.g1)
    g2 = parse_group_spec(cfg.g2)
    sc = SearchConfig(max_n=cfg.max_n, enumeration_cap=cfg.enumeration_cap, workers=cfg.workers)
    fn = search_min_vertex_witness if cfg.relation == "vertex" else search_min_edge_witness
    result = fn(g1, g2, cfg.max_n, sc)
    print(json.dumps(result.to_json()))
    if cfg.out and result.found is not None:
        Path(f"{cfg.out}.json").write_text(result.found.dumps() + "\n")
    return EXIT_OK


def cmd_enumerate(cfg: CliConfig) -> int:
    out = sys.stdout
    for g in enumerate_graphs(cfg.max_n, cap=cfg.enumeration_cap):
        out.write(to_graph6(g).decode("ascii") + "\n")
    return EXIT_OK


COMMANDS = {"construct": cmd_construct, "aut": cmd_aut, "verify": cmd_verify,
            "search": cmd_search, "enumerate": cmd_enumerate}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="autdel", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def groups(sp):
        sp.add_argument("--relation", choices=["vertex", "edge"], default="vertex")
        sp.add_argument("--g1", required=True, help="group spec, e.g. Z2, S3, Z2xZ2, table:FILE")
        sp.add_argument("--g2", required=True)

    sp = sub.add_parser("construct", help="build a witness graph")
    groups(sp)
    sp.add_argument("--format", dest="fmt", choices=["g6", "dot", "json"], default="g6")
    sp.add_argument("--out", help="write OUT.<fmt> and the OUT.json sidecar")
    sp.add_argument("--subdivide", action="store_true",
                    help="edge relation: subdivide the target edge into a vertex witness")

    sp = sub.add_parser("aut", help="automorphism group of a graph6 file ('-' for stdin)")
    sp.add_argument("path")
    sp.add_argument("--json", dest="as_json", action="store_true")

    sp = sub.add_parser("verify", help="verify a witness JSON sidecar")
    sp.add_argument("path")

    sp = sub.add_parser("search", help="minimal-order witness search")
    groups(sp)
    sp.add_argument("--max-n", type=int, default=SEARCH_CAP)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--enumeration-cap", type=int, default=ENUMERATION_CAP)
    sp.add_argument("--out", help="write the found witness to OUT.json")

    sp = sub.add_parser("enumerate", help="stream one graph6 line per isomorphism class")
    sp.add_argument("max_n", type=int, metavar="N")
    sp.add_argument("--enumeration-cap", type=int, default=ENUMERATION_CAP)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    fields = {k: v for k, v in vars(ns).items() if k in CliConfig.__dataclass_fields__}
    cfg = CliConfig(**fields)
    try:
        cfg.validate()
        return COMMANDS[cfg.command](cfg)
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
