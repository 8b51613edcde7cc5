"""Graph automorphisms by equitable refinement and individualization.

An ordered partition is held as ``cells`` (cell start position -> list of
vertices) plus ``cell_of`` (vertex -> start of its cell).  Positions are
label-invariant, so every quantity recorded in a trace is too.

The automorphism search follows the first path of the search tree to a
discrete leaf, then, level by level from the bottom, looks under each
sibling for a leaf equivalent to the first leaf.  The generators found form
a strong generating set relative to the first path's individualized
vertices.  The canonical form additionally explores the rest of the tree,
keeping the leaf with the largest (trace, relabelled graph) key.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ResourceLimitError
from .graph import Graph, to_graph6
from .perm import Perm, PermGroup, orbit_partition

BRUTE_FORCE_CAP = 10

ColoredPartition = list  # ordered list of vertex cells


@dataclass
class _Node:
    cells: dict[int, list[int]]
    cell_of: list[int]
    trace: tuple
    individualized: tuple[int, ...] = ()

    def is_discrete(self) -> bool:
        return len(self.cells) == len(self.cell_of)

    def target_cell(self) -> int | None:
        """Start of the first smallest non-singleton cell."""
        best = None
        best_size = None
        for s in sorted(self.cells):
            m = len(self.cells[s])
            if m > 1 and (best_size is None or m < best_size):
                best, best_size = s, m
        return best

    def ordered_cells(self) -> list[list[int]]:
        return [sorted(self.cells[s]) for s in sorted(self.cells)]

    def labeling(self) -> list[int]:
        """For a discrete node: position -> vertex."""
        return [self.cells[s][0] for s in sorted(self.cells)]


def _refine(nbrs: Sequence[Sequence[int]], cells: dict[int, list[int]], cell_of: list[int],
            splitters: Sequence[int]) -> list:
    """Refine in place to the coarsest equitable partition; returns the trace."""
    n = len(cell_of)
    trace: list = []
    queue = deque(splitters)
    inq = set(splitters)
    while queue and len(cells) < n:
        w = queue.popleft()
        inq.discard(w)
        cnt: dict[int, int] = {}
        for x in cells[w]:
            for y in nbrs[x]:
                cnt[y] = cnt.get(y, 0) + 1
        by_cell: dict[int, list[int]] = {}
        for y in cnt:
            s = cell_of[y]
            if s in by_cell:
                by_cell[s].append(y)
            else:
                by_cell[s] = [y]
        for s in sorted(by_cell):
            cell = cells[s]
            m = len(cell)
            if m == 1:
                continue
            hit = by_cell[s]
            groups: dict[int, list[int]] = {}
            if len(hit) < m:
                groups[0] = [y for y in cell if y not in cnt]
            for y in hit:
                c = cnt[y]
                if c in groups:
                    groups[c].append(y)
                else:
                    groups[c] = [y]
            if len(groups) == 1:
                continue
            keys = sorted(groups)
            starts = []
            pos = s
            for k in keys:
                frag = groups[k]
                cells[pos] = frag
                for y in frag:
                    cell_of[y] = pos
                starts.append(pos)
                pos += len(frag)
            trace.append((s, tuple((k, len(groups[k])) for k in keys)))
            if s in inq:
                for f in starts[1:]:
                    queue.append(f)
                    inq.add(f)
            else:
                largest = starts[0]
                for f in starts[1:]:
                    if len(cells[f]) > len(cells[largest]):
                        largest = f
                for f in starts:
                    if f != largest:
                        queue.append(f)
                        inq.add(f)
    return trace


def _initial_node(g: Graph, coloring: Sequence[Sequence[int]] | None) -> _Node:
    n = g.n
    if not coloring:
        coloring = [list(range(n))] if n else []
    cells: dict[int, list[int]] = {}
    cell_of = [-1] * n
    pos = 0
    for c in coloring:
        c = list(c)
        if not c:
            continue
        cells[pos] = c
        for v in c:
            cell_of[v] = pos
        pos += len(c)
    if pos != n or -1 in cell_of:
        raise ValueError("coloring is not a partition of the vertex set")
    trace = _refine(g.nbrs, cells, cell_of, sorted(cells))
    colour_shape = tuple(len(c) for c in coloring if c)
    return _Node(cells, cell_of, (colour_shape, tuple(trace)))


def _individualize(g: Graph, node: _Node, v: int) -> _Node:
    cells = dict(node.cells)
    cell_of = list(node.cell_of)
    s = cell_of[v]
    rest = [x for x in cells[s] if x != v]
    cells[s] = [v]
    cells[s + 1] = rest
    for x in rest:
        cell_of[x] = s + 1
    trace = _refine(g.nbrs, cells, cell_of, [s])
    return _Node(cells, cell_of, (s, tuple(trace)), node.individualized + (v,))


def equitable_refinement(g: Graph, p: ColoredPartition | None = None) -> ColoredPartition:
    """Coarsest equitable partition refining ``p`` (unit partition by default)."""
    return _initial_node(g, p).ordered_cells()


def is_equitable(g: Graph, p: ColoredPartition) -> bool:
    bits = g.bits
    masks = []
    for c in p:
        m = 0
        for v in c:
            m |= 1 << v
        masks.append(m)
    for c in p:
        for m in masks:
            if len({(bits[v] & m).bit_count() for v in c}) > 1:
                return False
    return True


@dataclass
class SearchResult:
    generators: list[Perm]
    base: list[int]
    orbit_sizes: list[int]
    first_leaf: list[int]
    canonical_labeling: list[int] | None = None  # position -> vertex
    nodes: int = 0

    @property
    def order(self) -> int:
        return math.prod(self.orbit_sizes)


class _Engine:
    def __init__(self, g: Graph, coloring: Sequence[Sequence[int]] | None = None):
        self.g = g
        self.coloring = coloring
        self.nodes = 0

    def _leaf_perm(self, first: list[int], other: list[int]) -> Perm:
        perm = [0] * self.g.n
        for a, b in zip(first, other):
            perm[a] = b
        return tuple(perm)

    def _find_equivalent(self, node: _Node, first_path: list[_Node], depth: int,
                         first_leaf: list[int]) -> Perm | None:
        """Search below ``node`` (at ``depth``) for a leaf equivalent to the first leaf."""
        self.nodes += 1
        if node.trace != first_path[depth].trace:
            return None
        if node.is_discrete():
            perm = self._leaf_perm(first_leaf, node.labeling())
            return perm if self.g.is_automorphism(perm) else None
        s = node.target_cell()
        for w in sorted(node.cells[s]):
            found = self._find_equivalent(_individualize(self.g, node, w), first_path,
                                          depth + 1, first_leaf)
            if found is not None:
                return found
        return None

    def automorphisms(self) -> tuple[SearchResult, list[_Node]]:
        g = self.g
        root = _initial_node(g, self.coloring)
        path = [root]
        node = root
        while not node.is_discrete():
            s = node.target_cell()
            node = _individualize(g, node, min(node.cells[s]))
            path.append(node)
        self.nodes += len(path)
        first_leaf = node.labeling()
        gens: list[Perm] = []
        base: list[int] = []
        orbit_sizes: list[int] = []
        level_gens: list[list[Perm]] = [[] for _ in path]
        for level in range(len(path) - 2, -1, -1):
            node = path[level]
            v = path[level + 1].individualized[-1]
            cell = sorted(node.cells[node.target_cell()])
            active = [p for lg in level_gens[level:] for p in lg]
            orbit = _orbit_of(v, active)
            failed: set[int] = set()
            for w in cell:
                if w in orbit or w in failed:
                    continue
                perm = self._find_equivalent(_individualize(g, node, w), path, level + 1, first_leaf)
                if perm is None:
                    failed |= _orbit_of(w, active)
                else:
                    level_gens[level].append(perm)
                    active.append(perm)
                    orbit = _orbit_of(v, active)
            base.append(v)
            orbit_sizes.append(len(orbit))
        for lg in reversed(level_gens):
            gens.extend(lg)
        base.reverse()
        orbit_sizes.reverse()
        result = SearchResult(gens, base, orbit_sizes, first_leaf)
        self.level_gens = level_gens
        return result, path

    def canonical(self) -> SearchResult:
        result, path = self.automorphisms()
        g = self.g
        n = g.n
        best: dict = {}

        def cert_of(lab: list[int]) -> tuple[int, ...]:
            pos = [0] * n
            for i, v in enumerate(lab):
                pos[v] = i
            rows = []
            for v in lab:
                row = 0
                for u in g.nbrs[v]:
                    row |= 1 << pos[u]
                rows.append(row)
            return tuple(rows)

        first_leaf = result.first_leaf
        best["traces"] = [nd.trace for nd in path]
        best["cert"] = cert_of(first_leaf)
        best["lab"] = first_leaf

        # state: 0 = equal to best so far, 1 = already greater
        def visit(node: _Node, depth: int, traces: list, state: int) -> bool:
            """Explore below ``node``; return True if the best leaf changed."""
            self.nodes += 1
            if state == 0:
                bt = best["traces"][depth] if depth < len(best["traces"]) else None
                if bt is not None and node.trace < bt:
                    return False
                if bt is None or node.trace > bt:
                    state = 1
            traces = traces + [node.trace]
            if node.is_discrete():
                lab = node.labeling()
                cert = cert_of(lab)
                if state == 1 or cert > best["cert"]:
                    best.update(traces=traces, cert=cert, lab=lab)
                    return True
                return False
            s = node.target_cell()
            changed = False
            for w in sorted(node.cells[s]):
                if visit(_individualize(g, node, w), depth + 1, traces, state):
                    changed = True
                    state = 0
            return changed

        level_gens = self.level_gens
        for level in range(len(path) - 2, -1, -1):
            node = path[level]
            active = [p for lg in level_gens[level:] for p in lg]
            cell = sorted(node.cells[node.target_cell()])
            v = path[level + 1].individualized[-1]
            done = _orbit_of(v, active)
            prefix = [nd.trace for nd in path[:level + 1]]
            for w in cell:
                if w in done:
                    continue
                done |= _orbit_of(w, active)
                state = 0 if best["traces"][:level + 1] == prefix else 1
                if state == 1 and best["traces"][:level + 1] > prefix:
                    # unreachable: the first path prefix is never worse than best
                    continue
                visit(_individualize(g, node, w), level + 1, prefix, state)
        result.canonical_labeling = best["lab"]
        result.nodes = self.nodes
        return result


def _orbit_of(v: int, gens: Sequence[Perm]) -> set[int]:
    orbit = {v}
    frontier = [v]
    while frontier:
        x = frontier.pop()
        for p in gens:
            y = p[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


def automorphisms(g: Graph, fixed_coloring: ColoredPartition | None = None) -> PermGroup:
    """Generators of the colour-preserving automorphism group of ``g``."""
    res, _ = _Engine(g, fixed_coloring).automorphisms()
    return PermGroup(g.n, res.generators, base_prefix=res.base)


def automorphism_search(g: Graph, fixed_coloring: ColoredPartition | None = None) -> SearchResult:
    res, _ = _Engine(g, fixed_coloring).automorphisms()
    return res


def canonical_search(g: Graph, fixed_coloring: ColoredPartition | None = None) -> SearchResult:
    return _Engine(g, fixed_coloring).canonical()


def canonical_labeling(g: Graph) -> tuple[list[int], SearchResult]:
    """Return ``pos`` with ``pos[v]`` = canonical index of ``v``."""
    res = canonical_search(g)
    pos = [0] * g.n
    for i, v in enumerate(res.canonical_labeling):
        pos[v] = i
    return pos, res


def canonical_graph(g: Graph) -> Graph:
    pos, _ = canonical_labeling(g)
    return g.relabel(pos)


def canonical_form(g: Graph) -> str:
    return to_graph6(canonical_graph(g)).decode("ascii")


def brute_force_automorphisms(g: Graph, cap: int = BRUTE_FORCE_CAP) -> PermGroup:
    """All automorphisms by exhaustive extension of partial vertex maps.

    Independent of the refinement engine: it only uses degrees and adjacency.
    """
    n = g.n
    if n > cap:
        raise ResourceLimitError(f"brute force limited to {cap} vertices, graph has {n}")
    bits = g.bits
    deg = [len(a) for a in g.nbrs]
    image = [-1] * n
    used = [False] * n
    found: list[Perm] = []

    def extend(v: int) -> None:
        if v == n:
            found.append(tuple(image))
            return
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            ok = True
            for u in range(v):
                if ((bits[v] >> u) & 1) != ((bits[w] >> image[u]) & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
        image[v] = -1

    extend(0)
    return PermGroup(n, found, elements=found)


def brute_force_automorphisms_naive(g: Graph, cap: int = 8) -> list[Perm]:
    """Literal scan of all ``n!`` permutations; for tiny cross-checks only."""
    if g.n > cap:
        raise ResourceLimitError(f"naive scan limited to {cap} vertices")
    return [p for p in itertools.permutations(range(g.n)) if g.is_automorphism(p)]
