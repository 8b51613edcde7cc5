"""Permutations as image tuples and permutation groups with a stabilizer chain.

Products compose left to right: ``mul(p, q)`` applies ``p`` first, then ``q``.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .errors import ResourceLimitError
from .groups import FiniteGroup

Perm = tuple[int, ...]

ABSTRACT_GROUP_CAP = 10000


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(p: Perm, q: Perm) -> Perm:
    return tuple([q[x] for x in p])


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def is_identity(p: Sequence[int]) -> bool:
    return all(i == x for i, x in enumerate(p))


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def cycle_notation(p: Sequence[int]) -> str:
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


def orbit_partition(n: int, gens: Iterable[Sequence[int]]) -> list[list[int]]:
    """Orbits of the group generated by ``gens`` on ``0..n-1``, each sorted, ordered by minimum."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    cells: dict[int, list[int]] = {}
    for x in range(n):
        cells.setdefault(find(x), []).append(x)
    return [cells[r] for r in sorted(cells)]


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Perm] = []
        self.transversal: dict[int, Perm] = {}


class PermGroup:
    """Group generated by permutations of ``0..degree-1``.

    The stabilizer chain is built lazily by deterministic Schreier-Sims.
    ``base_prefix`` forces the first base points (used for stabilizers).
    """

    def __init__(self, degree: int, gens: Iterable[Sequence[int]] = (),
                 base_prefix: Sequence[int] = (), elements: Sequence[Perm] | None = None):
        self.degree = degree
        self.gens: list[Perm] = []
        seen = set()
        for g in gens:
            g = tuple(g)
            if not is_identity(g) and g not in seen:
                seen.add(g)
                self.gens.append(g)
        self.base_prefix = tuple(base_prefix)
        self._elements = list(elements) if elements is not None else None

    # --- chain ---------------------------------------------------------------

    @cached_property
    def _chain(self) -> list[_Level]:
        levels: list[_Level] = []
        ident = identity(self.degree)

        def new_level(point: int) -> None:
            lev = _Level(point)
            lev.transversal = {point: ident}
            levels.append(lev)

        for b in self.base_prefix:
            new_level(b)

        def moved_point(g: Perm) -> int:
            for x, y in enumerate(g):
                if x != y:
                    return x
            raise AssertionError("identity has no moved point")

        def sift(g: Perm, start: int) -> tuple[Perm, int]:
            for j in range(start, len(levels)):
                lev = levels[j]
                beta = g[lev.point]
                u = lev.transversal.get(beta)
                if u is None:
                    return g, j
                g = mul(g, inverse(u))
            return g, len(levels)

        def rebuild_orbit(lev: _Level) -> None:
            trans = {lev.point: ident}
            frontier = [lev.point]
            while frontier:
                nxt = []
                for x in frontier:
                    ux = trans[x]
                    for s in lev.gens:
                        y = s[x]
                        if y not in trans:
                            trans[y] = mul(ux, s)
                            nxt.append(y)
                frontier = nxt
            lev.transversal = trans

        def add_strong(g: Perm, upto: int) -> None:
            # g fixes the base points of levels < upto
            while upto >= len(levels):
                new_level(moved_point(g))
            for j in range(upto + 1):
                if all(g[levels[i].point] == levels[i].point for i in range(j)):
                    levels[j].gens.append(g)

        for g in self.gens:
            h, j = sift(g, 0)
            if not is_identity(h):
                add_strong(h, j)
        i = len(levels) - 1
        for lev in levels:
            rebuild_orbit(lev)
        while i >= 0:
            lev = levels[i]
            restart = None
            for beta in sorted(lev.transversal):
                u_beta = lev.transversal[beta]
                for s in lev.gens:
                    gamma = s[beta]
                    schreier = mul(mul(u_beta, s), inverse(lev.transversal[gamma]))
                    if is_identity(schreier):
                        continue
                    h, j = sift(schreier, i + 1)
                    if not is_identity(h):
                        add_strong(h, j)
                        for k in range(i + 1, min(j, len(levels) - 1) + 1):
                            rebuild_orbit(levels[k])
                        rebuild_orbit(levels[min(j, len(levels) - 1)])
                        restart = j if j < len(levels) else len(levels) - 1
                        break
                if restart is not None:
                    break
            if restart is not None:
                i = restart
            else:
                i -= 1
        return levels

    @property
    def base(self) -> list[int]:
        return [lev.point for lev in self._chain]

    def order(self) -> int:
        if self._elements is not None:
            return len(self._elements)
        out = 1
        for lev in self._chain:
            out *= len(lev.transversal)
        return out

    def contains(self, p: Sequence[int]) -> bool:
        if self._elements is not None:
            return tuple(p) in set(self._elements)
        g = tuple(p)
        for lev in self._chain:
            u = lev.transversal.get(g[lev.point])
            if u is None:
                return False
            g = mul(g, inverse(u))
        return is_identity(g)

    def elements(self) -> list[Perm]:
        if self._elements is not None:
            return list(self._elements)
        out = [identity(self.degree)]
        for lev in reversed(self._chain):
            reps = [lev.transversal[b] for b in sorted(lev.transversal)]
            out = [mul(x, u) for u in reps for x in out]
        return out

    def strong_generators(self) -> list[Perm]:
        chain = self._chain
        seen: list[Perm] = []
        for lev in chain:
            for g in lev.gens:
                if g not in seen:
                    seen.append(g)
        return seen

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, gens={len(self.gens)})"


def group_order(pg: PermGroup) -> int:
    return pg.order()


def orbits(pg: PermGroup) -> list[list[int]]:
    gens = pg.gens if pg._elements is None else pg._elements
    return orbit_partition(pg.degree, gens)


def stabilizer(pg: PermGroup, v: int) -> PermGroup:
    """Pointwise stabilizer of ``v``, via a chain with ``v`` as first base point."""
    gens = pg.gens if pg._elements is None else [g for g in pg._elements if not is_identity(g)]
    if pg._elements is not None:
        return PermGroup(pg.degree, [g for g in gens if g[v] == v],
                         elements=[g for g in pg._elements if g[v] == v])
    chained = PermGroup(pg.degree, gens, base_prefix=(v,))
    chain = chained._chain
    sub = chain[1].gens if len(chain) > 1 else []
    return PermGroup(pg.degree, [g for g in sub if g[v] == v])


def as_abstract_group(pg: PermGroup, cap: int = ABSTRACT_GROUP_CAP) -> tuple[FiniteGroup, list[Perm]]:
    """Cayley table of ``pg``; elements indexed in breadth-first discovery order from the identity.

    Returns the table and the element list (``elements[i]`` is the permutation for index ``i``).
    """
    order = pg.order()
    if order > cap:
        raise ResourceLimitError(f"automorphism group order {order} exceeds cap {cap}")
    gens = pg.gens if pg._elements is None else [g for g in pg._elements if not is_identity(g)]
    ident = identity(pg.degree)
    if pg._elements is None:
        base = pg.base
    else:
        moved = sorted({x for g in gens for x in range(pg.degree) if g[x] != x})
        base = moved
    elems = [ident]
    index = {tuple(ident[b] for b in base): 0}
    for x in elems:
        for s in gens:
            y = mul(x, s)
            key = tuple(y[b] for b in base)
            if key not in index:
                index[key] = len(elems)
                elems.append(y)
    if len(elems) != order:  # pragma: no cover - chain and closure disagree
        raise AssertionError(f"closure found {len(elems)} elements, chain says {order}")
    table = []
    for x in elems:
        row = []
        for yb in elems:
            row.append(index[tuple(yb[x[b]] for b in base)])
        table.append(tuple(row))
    return FiniteGroup(tuple(table)), elems
