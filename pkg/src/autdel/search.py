"""Isomorph-free generation of small graphs and minimal deletion-witness search.

Generation is canonical augmentation by vertex addition: a child ``P + v`` is
kept iff ``v`` lies in the automorphism orbit of the last vertex of the
child's canonical labelling.  Parents extend by one neighbourhood per orbit of
``Aut(P)`` on vertex subsets.

The witness search runs the deletion backwards: a vertex witness ``(G, v)``
of order ``N`` is ``H + v`` for some ``H`` on ``N - 1`` vertices with
``Aut(H) = gamma2``, so it scans every such ``H`` and every neighbourhood of
the new vertex up to ``Aut(H)``.  Edge witnesses add one non-edge to ``H``.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .constructions import Witness
from .engine import SearchResult as AutResult
from .engine import _initial_node, automorphism_search, canonical_search
from .errors import InputError, ResourceLimitError
from .graph import Graph, from_graph6, to_graph6
from .groups import FiniteGroup, is_isomorphic
from .perm import Perm, PermGroup, as_abstract_group
from .verify import verify_witness

log = logging.getLogger(__name__)

ENUMERATION_CAP = 10
SEARCH_CAP = 11
KNOWN_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668,
                10: 12005168}


@dataclass
class SearchConfig:
    max_n: int = SEARCH_CAP
    enumeration_cap: int = ENUMERATION_CAP
    workers: int = 1
    verify: bool = True


@dataclass
class SearchResult:
    found: Witness | None
    exhausted_up_to: int
    counts: dict[int, int] = field(default_factory=dict)  # order -> deleted graphs enumerated
    candidates: dict[int, int] = field(default_factory=dict)  # witness order -> graphs tested
    relation: str = "vertex"

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "found": None if self.found is None else self.found.to_json(),
            "order": None if self.found is None else self.found.graph.n,
            "exhausted_up_to": self.exhausted_up_to,
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "candidates": {str(k): v for k, v in sorted(self.candidates.items())},
        }


def _fast_graph(n: int, nbrs: list[tuple[int, ...]]) -> Graph:
    g = Graph.__new__(Graph)
    g.n = n
    g.nbrs = tuple(nbrs)
    return g


def _extend(g: Graph, mask: int) -> Graph:
    """``g`` plus a new last vertex adjacent to the vertices in ``mask``."""
    k = g.n
    nbrs = list(g.nbrs)
    new = []
    for v in range(k):
        if (mask >> v) & 1:
            nbrs[v] = nbrs[v] + (k,)
            new.append(v)
    nbrs.append(tuple(new))
    return _fast_graph(k + 1, nbrs)


def _map_mask(mask: int, p: Sequence[int]) -> int:
    out = 0
    v = 0
    while mask:
        if mask & 1:
            out |= 1 << p[v]
        mask >>= 1
        v += 1
    return out


def subset_orbit_reps(n: int, gens: Sequence[Perm]) -> list[int]:
    """Smallest bitmask in each orbit of the group on subsets of ``0..n-1``."""
    if not gens:
        return list(range(1 << n))
    parent = list(range(1 << n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in gens:
        for m in range(1 << n):
            a, b = find(m), find(_map_mask(m, p))
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [m for m in range(1 << n) if find(m) == m]


def _accept(child: Graph) -> bool:
    """Canonical-deletion test: is the new (last) vertex canonically last up to Aut?"""
    n = child.n
    v = n - 1
    nbrs = child.nbrs
    dv = len(nbrs[v])
    for a in nbrs:
        if len(a) > dv:
            return False
    root = _initial_node(child, None)
    last = max(root.cells)
    cell = root.cells[last]
    if root.cell_of[v] != last:
        return False
    if len(cell) == 1:
        return True
    res = canonical_search(child)
    target = res.canonical_labeling[-1]
    if target == v:
        return True
    orbit = {v}
    frontier = [v]
    while frontier:
        x = frontier.pop()
        for p in res.generators:
            y = p[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return target in orbit


def _children(parent: Graph, gens: Sequence[Perm]) -> Iterator[Graph]:
    for mask in subset_orbit_reps(parent.n, gens):
        child = _extend(parent, mask)
        if _accept(child):
            yield child


class Enumerator:
    """Caches complete levels (graph + automorphism generators) for reuse."""

    def __init__(self, cap: int = ENUMERATION_CAP):
        self.cap = cap
        self.levels: dict[int, list[tuple[Graph, list[Perm]]]] = {1: [(Graph.empty(1), [])]}

    def _check(self, n: int) -> None:
        if n < 1:
            raise InputError(f"order must be >= 1, got {n}")
        if n > self.cap:
            raise ResourceLimitError(f"enumeration limited to {self.cap} vertices, asked for {n}")

    def level(self, n: int) -> list[tuple[Graph, list[Perm]]]:
        self._check(n)
        if n not in self.levels:
            prev = self.level(n - 1)
            out = []
            for parent, gens in prev:
                for child in _children(parent, gens):
                    out.append((child, automorphism_search(child).generators))
            self.levels[n] = out
            log.info("order %d: %d graphs", n, len(out))
        return self.levels[n]

    def stream(self, n: int, parents: Sequence[tuple[Graph, list[Perm]]] | None = None
               ) -> Iterator[Graph]:
        """Graphs of order ``n`` without caching the level itself."""
        self._check(n)
        if n in self.levels:
            yield from (g for g, _ in self.levels[n])
            return
        if n == 1:
            yield Graph.empty(1)
            return
        for parent, gens in (self.level(n - 1) if parents is None else parents):
            yield from _children(parent, gens)


def enumerate_graphs(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Graph]:
    """One graph per isomorphism class on ``n`` vertices."""
    return Enumerator(cap).stream(n)


# --- witness search ----------------------------------------------------------

def _abstract_match(aut: AutResult, degree: int, gamma: FiniteGroup) -> bool:
    if aut.order != gamma.order:
        return False
    pg = PermGroup(degree, aut.generators, base_prefix=aut.base)
    table, _ = as_abstract_group(pg)
    return is_isomorphic(gamma, table) is not None


def _canonical_vertex_key(g: Graph, v: int) -> tuple[str, int, Graph]:
    res = canonical_search(g)
    pos = [0] * g.n
    for i, x in enumerate(res.canonical_labeling):
        pos[x] = i
    cg = g.relabel(pos)
    orbit = PermGroup(g.n, res.generators).elements()
    t = min(pos[p[v]] for p in orbit)
    return to_graph6(cg).decode("ascii"), t, cg


def _canonical_edge_key(g: Graph, e: tuple[int, int]) -> tuple[str, tuple[int, int], Graph]:
    res = canonical_search(g)
    pos = [0] * g.n
    for i, x in enumerate(res.canonical_labeling):
        pos[x] = i
    cg = g.relabel(pos)
    orbit = PermGroup(g.n, res.generators).elements()
    t = min(tuple(sorted((pos[p[e[0]]], pos[p[e[1]]]))) for p in orbit)
    return to_graph6(cg).decode("ascii"), t, cg


def _scan_vertex(hs: Sequence[Graph], gamma1: FiniteGroup, gamma2: FiniteGroup
                 ) -> tuple[int, int, list[tuple[str, int]]]:
    """Examine deleted graphs ``hs``; return (examined, tested, witness keys)."""
    examined = tested = 0
    found = []
    for h in hs:
        examined += 1
        aut = automorphism_search(h)
        if not _abstract_match(aut, h.n, gamma2):
            continue
        for mask in subset_orbit_reps(h.n, aut.generators):
            g = _extend(h, mask)
            tested += 1
            aut_g = automorphism_search(g)
            if aut_g.order != gamma1.order or not _abstract_match(aut_g, g.n, gamma1):
                continue
            key, t, _ = _canonical_vertex_key(g, g.n - 1)
            found.append((key, t))
    return examined, tested, found


def _edge_orbit_reps(h: Graph, gens: Sequence[Perm]) -> list[tuple[int, int]]:
    reps = []
    seen: set[tuple[int, int]] = set()
    elems = PermGroup(h.n, gens).elements() if gens else [tuple(range(h.n))]
    for e in h.non_edges():
        if e in seen:
            continue
        reps.append(e)
        for p in elems:
            a, b = p[e[0]], p[e[1]]
            seen.add((min(a, b), max(a, b)))
    return reps


def _scan_edge(hs: Sequence[Graph], gamma1: FiniteGroup, gamma2: FiniteGroup
               ) -> tuple[int, int, list[tuple[str, tuple[int, int]]]]:
    examined = tested = 0
    found = []
    for h in hs:
        examined += 1
        aut = automorphism_search(h)
        if not _abstract_match(aut, h.n, gamma2):
            continue
        for u, v in _edge_orbit_reps(h, aut.generators):
            nbrs = [list(a) for a in h.nbrs]
            nbrs[u].append(v)
            nbrs[v].append(u)
            g = Graph(h.n, nbrs)
            tested += 1
            aut_g = automorphism_search(g)
            if aut_g.order != gamma1.order or not _abstract_match(aut_g, g.n, gamma1):
                continue
            key, t, _ = _canonical_edge_key(g, (u, v))
            found.append((key, t))
    return examined, tested, found


def _worker_level(args):
    kind, parents, gamma1, gamma2 = args
    hs = [c for p, gens in parents for c in _children(p, gens)]
    scan = _scan_vertex if kind == "vertex" else _scan_edge
    return scan(hs, gamma1, gamma2)


def _scan_order(enum: Enumerator, k: int, kind: str, gamma1: FiniteGroup, gamma2: FiniteGroup,
                workers: int) -> tuple[int, int, list]:
    scan = _scan_vertex if kind == "vertex" else _scan_edge
    if k in enum.levels or k == 1:
        return scan(list(enum.stream(k)), gamma1, gamma2)
    parents = enum.level(k - 1)
    if workers > 1:
        chunks = [parents[i::workers * 4] for i in range(workers * 4)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_worker_level, [(kind, c, gamma1, gamma2) for c in chunks]))
    else:
        # one parent at a time keeps the uncached level out of memory
        parts = [scan(list(_children(p, gens)), gamma1, gamma2) for p, gens in parents]
    found: list = []
    for _, _, f in parts:
        found.extend(f)
    return sum(p[0] for p in parts), sum(p[1] for p in parts), found


def _search(kind: str, gamma1: FiniteGroup, gamma2: FiniteGroup, max_n: int,
            config: SearchConfig) -> SearchResult:
    if max_n > config.enumeration_cap + (1 if kind == "vertex" else 0):
        raise ResourceLimitError(f"max_n={max_n} beyond search cap")
    enum = Enumerator(config.enumeration_cap)
    result = SearchResult(None, 0, relation=kind)
    start = 3 if kind == "vertex" else 2
    result.exhausted_up_to = start - 1
    for order in range(start, max_n + 1):
        k = order - 1 if kind == "vertex" else order
        examined, tested, found = _scan_order(enum, k, kind, gamma1, gamma2, config.workers)
        result.counts[k] = examined
        result.candidates[order] = tested
        log.info("%s search order %d: %d graphs, %d extensions, %d witnesses",
                 kind, order, examined, tested, len(found))
        if found:
            key, t = min(found)
            g = from_graph6(key)
            target = t if kind == "vertex" else tuple(t)
            witness = Witness(g, target, gamma1, gamma2, {"target": t} if kind == "vertex" else {})
            if config.verify and not verify_witness(witness).passed:  # pragma: no cover
                raise AssertionError(f"search produced a witness that fails verification: {key}")
            result.found = witness
            return result
        result.exhausted_up_to = order
    return result


def search_min_vertex_witness(gamma1: FiniteGroup, gamma2: FiniteGroup, max_n: int = SEARCH_CAP,
                              config: SearchConfig | None = None) -> SearchResult:
    return _search("vertex", gamma1, gamma2, max_n, config or SearchConfig())


def search_min_edge_witness(gamma1: FiniteGroup, gamma2: FiniteGroup, max_n: int = SEARCH_CAP,
                            config: SearchConfig | None = None) -> SearchResult:
    return _search("edge", gamma1, gamma2, max_n, config or SearchConfig())
