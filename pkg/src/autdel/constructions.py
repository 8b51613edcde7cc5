"""Witness graphs for vertex- and edge-deletion relations between finite groups.

Every builder is deterministic: vertices are allocated in a fixed order, so
equal inputs give identical graph6 output.  Attaching a tree "at" an existing
vertex identifies the tree's root with that vertex.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from .errors import InputError, UnsupportedConstruction
from .graph import Graph, from_graph6, subdivide_edge, to_graph6
from .groups import FiniteGroup, group_from_json, group_to_json, trivial

Landmarks = dict  # name -> vertex id
Target = Union[int, tuple[int, int]]


@dataclass
class Witness:
    graph: Graph
    target: Target
    gamma1: FiniteGroup
    gamma2: FiniteGroup
    landmarks: Landmarks = field(default_factory=dict)

    @property
    def is_edge(self) -> bool:
        return isinstance(self.target, tuple)

    def check(self) -> None:
        g = self.graph
        if self.is_edge:
            u, v = self.target
            if not g.has_edge(u, v):
                raise InputError(f"target edge {self.target} not in graph")
        elif not 0 <= self.target < g.n:
            raise InputError(f"target vertex {self.target} not in graph")
        for name, v in self.landmarks.items():
            if not 0 <= v < g.n:
                raise InputError(f"landmark {name} -> {v} out of range")

    def to_json(self) -> dict:
        target = {"edge": list(self.target)} if self.is_edge else {"vertex": self.target}
        return {
            "graph6": to_graph6(self.graph).decode("ascii"),
            "target": target,
            "gamma1": group_to_json(self.gamma1),
            "gamma2": group_to_json(self.gamma2),
            "landmarks": dict(self.landmarks),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict) -> "Witness":
        try:
            graph = from_graph6(obj["graph6"])
            t = obj["target"]
            if "edge" in t:
                u, v = t["edge"]
                target: Target = (int(u), int(v))
            else:
                target = int(t["vertex"])
            w = cls(graph, target, group_from_json(obj["gamma1"]), group_from_json(obj["gamma2"]),
                    {str(k): int(v) for k, v in obj.get("landmarks", {}).items()})
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed witness sidecar: {exc!r}") from exc
        w.check()
        return w


class _Builder:
    """Append-only graph assembly."""

    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []
        self.landmarks: Landmarks = {}

    def add_vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def add_edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def add_tree(self, k: int, at: dict[int, int] | None = None) -> list[int]:
        """Add a copy of T(k); ``at`` maps leaf index i to an existing vertex for u_i.

        Returns the ids of u_0..u_k.
        """
        at = at or {}
        u0 = at[0] if 0 in at else self.add_vertex()
        spine = [u0] + [self.add_vertex() for _ in range(k)]
        for a, b in zip(spine, spine[1:]):
            self.add_edge(a, b)
        leaves = [u0]
        for i in range(1, k + 1):
            prev = spine[i]
            for _ in range(2 * i):
                x = self.add_vertex()
                self.add_edge(prev, x)
                prev = x
            ui = at[i] if i in at else self.add_vertex()
            self.add_edge(prev, ui)
            leaves.append(ui)
        return leaves

    def add_graph(self, g: Graph) -> int:
        shift = self.n
        self.n += g.n
        self.edges.extend((u + shift, v + shift) for u, v in g.edges())
        return shift

    def build(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)


def tree_size(k: int) -> int:
    return k * k + 3 * k + 1


def rigid_tree(n: int) -> tuple[Graph, Landmarks]:
    """T(n): spine u0, z1..zn, and a path of length 2i+1 from z_i to leaf u_i."""
    if n < 2:
        raise InputError(f"T(n) needs n >= 2, got {n}")
    b = _Builder()
    leaves = b.add_tree(n)
    return b.build(), {f"u{i}": v for i, v in enumerate(leaves)}


def _add_cayley_gadget(b: _Builder, gamma: FiniteGroup, prefix: str = "") -> list[int]:
    """Add C'(gamma) to ``b``; returns element vertices in index order."""
    k = gamma.order
    elem = [b.add_vertex() for _ in range(k)]
    inv = [gamma.inverse(a) for a in range(k)]
    for a in range(k):
        for c in range(k):
            if a == c:
                continue
            label = gamma.mul(inv[a], c) + 1  # 1-based; identity is label 1
            x1 = b.add_vertex()
            x2 = b.add_vertex()
            b.add_edge(elem[a], x1)
            b.add_edge(x1, x2)
            b.add_edge(x2, elem[c])
            b.add_tree(label, at={0: x1})
    if k == 2:
        # element vertices would otherwise have degree 2 like the x2 vertices,
        # letting a reflection of the 6-cycle through the gadgets survive
        for a in range(k):
            b.add_edge(elem[a], b.add_vertex())
    for a in range(k):
        b.landmarks[f"{prefix}elem:{a}"] = elem[a]
    return elem


def cayley_gadget_size(gamma: FiniteGroup) -> int:
    k = gamma.order
    pendants = 2 if k == 2 else 0
    return k + k * sum(i * i + 3 * i + 2 for i in range(2, k + 1)) + pendants


def cayley_gadget_graph(gamma: FiniteGroup) -> tuple[Graph, Landmarks]:
    b = _Builder()
    _add_cayley_gadget(b, gamma)
    return b.build(), b.landmarks


def _i_to_i_witness() -> Witness:
    g, marks = rigid_tree(2)
    marks["target"] = marks["u2"]
    return Witness(g, marks["u2"], trivial(), trivial(), marks)


def reflexive_witness(gamma: FiniteGroup) -> Witness:
    """C'(gamma) plus a dominating vertex v carrying a pendant u; delete v."""
    if gamma.order == 1:
        return _i_to_i_witness()
    b = _Builder()
    _add_cayley_gadget(b, gamma)
    core = b.n
    v = b.add_vertex()
    u = b.add_vertex()
    for x in range(core):
        b.add_edge(v, x)
    b.add_edge(v, u)
    b.landmarks.update(v=v, u=u, target=v)
    return Witness(b.build(), v, gamma, gamma, b.landmarks)


def _add_trivial_to_gamma(b: _Builder, gamma: FiniteGroup, prefix: str = "") -> int:
    """Add the rigid graph whose marked vertex deletes to ``gamma``; returns that vertex."""
    k = gamma.order
    elem = _add_cayley_gadget(b, gamma, prefix)
    leaves = []
    for i, x in enumerate(elem, start=1):
        tree = b.add_tree(2 * k, at={0: x})
        leaves.append(tree[i])
    v = b.add_vertex()
    for leaf in leaves:
        b.add_edge(v, leaf)
    b.landmarks[f"{prefix}v"] = v
    return v


def trivial_to_gamma_witness(gamma: FiniteGroup) -> Witness:
    if gamma.order == 1:
        return _i_to_i_witness()
    b = _Builder()
    v = _add_trivial_to_gamma(b, gamma)
    b.landmarks["target"] = v
    return Witness(b.build(), v, trivial(), gamma, b.landmarks)


def gamma_to_trivial_witness(gamma: FiniteGroup) -> Witness:
    """Two copies of C'(gamma) bridged element-wise by copies of T(|gamma|)."""
    if gamma.order == 1:
        return _i_to_i_witness()
    k = gamma.order
    b = _Builder()
    e1 = _add_cayley_gadget(b, gamma, "copy1:")
    e2 = _add_cayley_gadget(b, gamma, "copy2:")
    for a in range(k):
        b.add_tree(k, at={0: e1[a], k: e2[a]})
    target = e1[0]
    b.landmarks["target"] = target
    return Witness(b.build(), target, gamma, trivial(), b.landmarks)


def _assemble(gamma1: FiniteGroup, g2: Graph, g2_marks: Landmarks) -> tuple[_Builder, list[int]]:
    """C'(gamma1) with a copy H_i of ``g2`` joined completely to element vertex i."""
    b = _Builder()
    elem = _add_cayley_gadget(b, gamma1)
    shifts = []
    for i, x in enumerate(elem, start=1):
        shift = b.add_graph(g2)
        for y in range(shift, shift + g2.n):
            b.add_edge(x, y)
        shifts.append(shift)
        b.landmarks[f"hub:{i}"] = x
        for name, v in g2_marks.items():
            if name != "target":
                b.landmarks[f"H{i}:{name}"] = v + shift
    return b, shifts


def vertex_deletion_witness(gamma1: FiniteGroup, gamma2: FiniteGroup) -> Witness:
    if gamma1.order == 1 and gamma2.order == 1:
        return _i_to_i_witness()
    if gamma1.order == 1:
        return trivial_to_gamma_witness(gamma2)
    if gamma2.order == 1:
        return gamma_to_trivial_witness(gamma1)
    inner = trivial_to_gamma_witness(gamma2)
    b, shifts = _assemble(gamma1, inner.graph, inner.landmarks)
    target = shifts[0] + inner.target
    b.landmarks["target"] = target
    return Witness(b.build(), target, gamma1, gamma2, b.landmarks)


def rigid_asymmetric_g2(gamma2: FiniteGroup) -> Witness:
    """Rigid graph with an edge whose deletion restores Aut = gamma2."""
    k = gamma2.order
    if k < 2:
        raise InputError("rigid_asymmetric_g2 needs a non-trivial group")
    b = _Builder()
    elem = _add_cayley_gadget(b, gamma2)
    trees = [b.add_tree(2 * k, at={0: x}) for x in elem]
    # leaves u_2k and u_2k-2: joining u_2k to u_2k-1 closes a cycle hanging
    # from z_2k-1 alone, which can be reflected
    u, v = trees[0][2 * k], trees[0][2 * k - 2]
    b.add_edge(u, v)
    e = (min(u, v), max(u, v))
    b.landmarks.update({"e:0": e[0], "e:1": e[1]})
    return Witness(b.build(), e, trivial(), gamma2, b.landmarks)


def edge_deletion_witness(gamma1: FiniteGroup, gamma2: FiniteGroup) -> Witness:
    if gamma2.order == 1:
        raise UnsupportedConstruction(
            "edge deletion to the trivial group has no construction here")
    inner = rigid_asymmetric_g2(gamma2)
    if gamma1.order == 1:
        return inner
    b, shifts = _assemble(gamma1, inner.graph, inner.landmarks)
    u, v = inner.target
    e = (shifts[0] + u, shifts[0] + v)
    return Witness(b.build(), e, gamma1, gamma2, b.landmarks)


def edge_witness_to_vertex_witness(w: Witness) -> Witness:
    """Subdivide the marked edge and delete the new vertex instead.

    For an assembled witness (with ``hub:i`` landmarks) the same edge is
    subdivided in every copy H_i and the new vertex joined to hub i, so that
    the copies stay isomorphic; the copy in H_1 becomes the target.
    """
    if not w.is_edge:
        raise InputError("edge_witness_to_vertex_witness needs an edge-target witness")
    marks = dict(w.landmarks)
    hubs = sorted((int(k.split(":")[1]), v) for k, v in marks.items() if k.startswith("hub:"))
    if not hubs:
        g, x = subdivide_edge(w.graph, *w.target)
        marks["target"] = x
        return Witness(g, x, w.gamma1, w.gamma2, marks)
    g = w.graph
    target = None
    for i, hub in hubs:
        a, c = marks[f"H{i}:e:0"], marks[f"H{i}:e:1"]
        g, x = subdivide_edge(g, a, c)
        nbrs = [list(r) for r in g.nbrs]
        nbrs[hub].append(x)
        nbrs[x].append(hub)
        g = Graph(g.n, nbrs)
        marks[f"H{i}:w"] = x
        if i == 1:
            target = x
    marks["target"] = target
    return Witness(g, target, w.gamma1, w.gamma2, marks)
