"""Smallest-order witnesses for a list of group pairs."""
import argparse
import json
import time

from autdel.graph import to_graph6
from autdel.groups import parse_group_spec
from autdel.search import SearchConfig, search_min_edge_witness, search_min_vertex_witness

DEFAULT_PAIRS = "vertex:Z2:Z2:4,vertex:I:Z2:6,vertex:I:I:8,edge:Z2:I:6,vertex:Z2:Z3:11"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", default=DEFAULT_PAIRS, help="relation:g1:g2:max_n,...")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    for item in args.pairs.split(","):
        kind, s1, s2, max_n = item.split(":")
        g1, g2 = parse_group_spec(s1), parse_group_spec(s2)
        cfg = SearchConfig(max_n=int(max_n), workers=args.workers)
        fn = search_min_vertex_witness if kind == "vertex" else search_min_edge_witness
        t0 = time.perf_counter()
        r = fn(g1, g2, int(max_n), cfg)
        dt = time.perf_counter() - t0
        if args.json:
            print(json.dumps({"pair": item, "seconds": round(dt, 2), **r.to_json()}))
            continue
        if r.found is None:
            print(f"{item:<22} none up to {r.exhausted_up_to}  ({dt:.1f}s)")
        else:
            w = r.found
            print(f"{item:<22} order {w.graph.n}  {to_graph6(w.graph).decode()}  "
                  f"target {w.target}  ({dt:.1f}s)")


if __name__ == "__main__":
    main()
