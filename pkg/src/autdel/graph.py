"""Simple undirected graphs, surgery operations, graph6 and DOT I/O.

Graphs are immutable. Every surgery operation returns a new graph, and the
operations that renumber vertices also return the old-id -> new-id map.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import Graph6ParseError, InputError

VertexMap = dict  # old id -> new id, surviving vertices only

GRAPH6_HEADER = b">>graph6<<"


class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "nbrs", "__dict__")

    def __init__(self, n: int, nbrs: Sequence[Iterable[int]]):
        if len(nbrs) != n:
            raise InputError(f"expected {n} neighbour lists, got {len(nbrs)}")
        self.n = n
        self.nbrs: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(set(a))) for a in nbrs)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, adj)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [()] * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [[j for j in range(n) if j != i] for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @cached_property
    def bits(self) -> tuple[int, ...]:
        """Adjacency rows as integer bitsets."""
        out = []
        for a in self.nbrs:
            row = 0
            for j in a:
                row |= 1 << j
            out.append(row)
        return tuple(out)

    @cached_property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.nbrs) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and (self.bits[u] >> v) & 1 == 1

    def degree(self, v: int) -> int:
        return len(self.nbrs[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.nbrs[u] if u < v]

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if not self.has_edge(u, v)]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for v in range(self.n):
            nbrs[perm[v]] = [perm[u] for u in self.nbrs[v]]
        return Graph(self.n, nbrs)

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        bits = self.bits
        for v in range(self.n):
            row = 0
            for u in self.nbrs[v]:
                row |= 1 << perm[u]
            if row != bits[perm[v]]:
                return False
        return True

    def check(self) -> None:
        """Raise InputError unless the representation invariants hold."""
        for v, a in enumerate(self.nbrs):
            if list(a) != sorted(set(a)):
                raise InputError(f"neighbours of {v} not sorted/unique")
            for u in a:
                if u == v:
                    raise InputError(f"loop at {v}")
                if not 0 <= u < self.n:
                    raise InputError(f"vertex {u} out of range")
                if v not in self.nbrs[u]:
                    raise InputError(f"asymmetric adjacency {v}-{u}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.nbrs == other.nbrs

    def __hash__(self) -> int:
        return hash((self.n, self.nbrs))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range for graph on {g.n} vertices")


def _check_edge(g: Graph, u: int, v: int) -> None:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if not g.has_edge(u, v):
        raise InputError(f"{{{u}, {v}}} is not an edge")


def delete_vertex(g: Graph, v: int) -> tuple[Graph, VertexMap]:
    _check_vertex(g, v)
    vmap = {u: (u if u < v else u - 1) for u in range(g.n) if u != v}
    nbrs = [[vmap[w] for w in g.nbrs[u] if w != v] for u in range(g.n) if u != v]
    return Graph(g.n - 1, nbrs), vmap


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    _check_edge(g, u, v)
    nbrs = [list(a) for a in g.nbrs]
    nbrs[u].remove(v)
    nbrs[v].remove(u)
    return Graph(g.n, nbrs)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v or g.has_edge(u, v):
        raise InputError(f"cannot add edge {{{u}, {v}}}")
    nbrs = [list(a) for a in g.nbrs]
    nbrs[u].append(v)
    nbrs[v].append(u)
    return Graph(g.n, nbrs)


def disjoint_union(g1: Graph, g2: Graph) -> tuple[Graph, VertexMap]:
    shift = g1.n
    nbrs = list(g1.nbrs) + [[w + shift for w in a] for a in g2.nbrs]
    return Graph(g1.n + g2.n, nbrs), {u: u + shift for u in range(g2.n)}


def identify_vertices(g: Graph, a: int, b: int) -> tuple[Graph, VertexMap]:
    """Merge ``b`` into ``a``; the merged vertex keeps ``a``'s compacted id."""
    _check_vertex(g, a)
    _check_vertex(g, b)
    if a == b:
        raise InputError("cannot identify a vertex with itself")
    if g.has_edge(a, b):
        raise InputError(f"identifying adjacent vertices {a}, {b} would create a loop")
    vmap = {u: (u if u < b else u - 1) for u in range(g.n) if u != b}
    vmap[b] = vmap[a]
    nbrs: list[set[int]] = [set() for _ in range(g.n - 1)]
    for u in range(g.n):
        for w in g.nbrs[u]:
            nbrs[vmap[u]].add(vmap[w])
    return Graph(g.n - 1, nbrs), vmap


def subdivide_edge(g: Graph, u: int, v: int) -> tuple[Graph, int]:
    _check_edge(g, u, v)
    w = g.n
    nbrs = [list(a) for a in g.nbrs] + [[u, v]]
    nbrs[u].remove(v)
    nbrs[v].remove(u)
    nbrs[u].append(w)
    nbrs[v].append(w)
    return Graph(g.n + 1, nbrs), w


# --- graph6 ---------------------------------------------------------------

def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 68719476736:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise InputError(f"graph6 cannot encode n={n}")


def to_graph6(g: Graph) -> bytes:
    out = bytearray(_encode_n(g.n))
    bits = g.bits
    acc = 0
    nacc = 0
    for j in range(1, g.n):
        row = bits[j]
        for i in range(j):
            acc = (acc << 1) | ((row >> i) & 1)
            nacc += 1
            if nacc == 6:
                out.append(acc + 63)
                acc = nacc = 0
    if nacc:
        out.append((acc << (6 - nacc)) + 63)
    return bytes(out)


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    start = 0
    if data.startswith(GRAPH6_HEADER):
        start = len(GRAPH6_HEADER)
    end = len(data)
    while end > start and data[end - 1] in b"\r\n":
        end -= 1
    s = data[start:end]
    if not s:
        raise Graph6ParseError("empty graph6 string", start)
    for k, c in enumerate(s):
        if not 63 <= c <= 126:
            raise Graph6ParseError(f"invalid graph6 byte {c!r}", start + k)
    pos = 0
    if s[0] != 126:
        n = s[0] - 63
        pos = 1
    elif len(s) >= 2 and s[1] == 126:
        if len(s) < 8:
            raise Graph6ParseError("truncated 36-bit vertex count", start + len(s))
        n = 0
        for c in s[2:8]:
            n = (n << 6) | (c - 63)
        pos = 8
    else:
        if len(s) < 4:
            raise Graph6ParseError("truncated 18-bit vertex count", start + len(s))
        n = 0
        for c in s[1:4]:
            n = (n << 6) | (c - 63)
        pos = 4
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = s[pos:]
    if len(body) < nbytes:
        raise Graph6ParseError(f"truncated adjacency data: need {nbytes} bytes, have {len(body)}",
                               start + len(s))
    if len(body) > nbytes:
        raise Graph6ParseError("trailing bytes after adjacency data", start + pos + nbytes)
    adj: list[list[int]] = [[] for _ in range(n)]
    k = 0
    i, j = 0, 1
    for b_idx, c in enumerate(body):
        val = c - 63
        for shift in range(5, -1, -1):
            bit = (val >> shift) & 1
            if k >= nbits:
                if bit:
                    raise Graph6ParseError("non-zero padding bit", start + pos + b_idx)
                continue
            if bit:
                adj[i].append(j)
                adj[j].append(i)
            k += 1
            i += 1
            if i == j:
                i = 0
                j += 1
    return Graph(n, adj)


# --- DOT --------------------------------------------------------------------

def to_dot(g: Graph, landmarks: Mapping[str, int] | None = None,
           target: int | tuple[int, int] | None = None, name: str = "G") -> str:
    names: dict[int, list[str]] = {}
    for key, v in (landmarks or {}).items():
        names.setdefault(v, []).append(key)
    target_edge = None
    if isinstance(target, tuple):
        target_edge = (min(target), max(target))
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        attrs = []
        if v in names:
            attrs.append('label="%d\\n%s"' % (v, ",".join(sorted(names[v]))))
        if target is not None and target_edge is None and v == target:
            attrs.append('color=red, style=filled, fillcolor="#ffcccc", penwidth=2')
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for u, v in g.edges():
        attr = " [color=red, penwidth=3, style=dashed]" if (u, v) == target_edge else ""
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
