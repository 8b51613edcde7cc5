"""Finite groups given by Cayley tables, a small spec language, and isomorphism testing.

Element 0 is always the identity.  ``table[a][b]`` is the index of ``a*b``.
"""
from __future__ import annotations

import itertools
import math
import random
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import GroupSpecError, GroupTableError, InputError, ResourceLimitError

SYMMETRIC_CAP = 5040
ISOMORPHISM_CAP = 512
FULL_ASSOCIATIVITY_LIMIT = 64


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(int(x) for x in row) for row in self.table))
        _validate(self.table)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(0)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"


def _validate(table: Sequence[Sequence[int]]) -> None:
    n = len(table)
    if n == 0:
        raise GroupTableError("non-empty", "table has no elements")
    full = set(range(n))
    for a, row in enumerate(table):
        if len(row) != n:
            raise GroupTableError("closure", f"row {a} has length {len(row)}, expected {n}")
        if set(row) != full:
            raise GroupTableError("latin square", f"row {a} is not a permutation of 0..{n - 1}")
    for b in range(n):
        if {table[a][b] for a in range(n)} != full:
            raise GroupTableError("latin square", f"column {b} is not a permutation of 0..{n - 1}")
    for x in range(n):
        if table[0][x] != x or table[x][0] != x:
            raise GroupTableError("identity", f"element 0 is not the identity (fails at {x})")
    if n <= FULL_ASSOCIATIVITY_LIMIT:
        triples: Sequence[tuple[int, int, int]] = itertools.product(range(n), repeat=3)
    else:
        rng = random.Random(n)
        triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(10 * n * n)]
    for a, b, c in triples:
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise GroupTableError("associativity", f"({a}*{b})*{c} != {a}*({b}*{c})")


# --- families ---------------------------------------------------------------

def trivial() -> FiniteGroup:
    return FiniteGroup(((0,),), name="I")


def cyclic(k: int) -> FiniteGroup:
    if k < 1:
        raise InputError(f"cyclic group needs k >= 1, got {k}")
    return FiniteGroup(tuple(tuple((a + b) % k for b in range(k)) for a in range(k)),
                       name="I" if k == 1 else f"Z{k}")


def dihedral(k: int) -> FiniteGroup:
    """Symmetries of a k-gon, order 2k. Element ``r**i * s**j`` has index ``i + k*j``."""
    if k < 1:
        raise InputError(f"dihedral group needs k >= 1, got {k}")

    def mul(x: int, y: int) -> int:
        a, b = x % k, x // k
        c, d = y % k, y // k
        return (a + (c if b == 0 else -c)) % k + k * ((b + d) % 2)

    n = 2 * k
    return FiniteGroup(tuple(tuple(mul(x, y) for y in range(n)) for x in range(n)), name=f"D{k}")


def symmetric(k: int, cap: int = SYMMETRIC_CAP) -> FiniteGroup:
    if k < 1:
        raise InputError(f"symmetric group needs k >= 1, got {k}")
    if math.factorial(k) > cap:
        raise ResourceLimitError(f"S{k} has order {math.factorial(k)} > cap {cap}")
    perms = list(itertools.permutations(range(k)))  # identity first
    index = {p: i for i, p in enumerate(perms)}
    # a*b means apply a, then b
    table = tuple(tuple(index[tuple(b[a[x]] for x in range(k))] for b in perms) for a in perms)
    return FiniteGroup(table, name=f"S{k}")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    m = b.order
    n = a.order * m
    table = tuple(
        tuple(a.table[x // m][y // m] * m + b.table[x % m][y % m] for y in range(n))
        for x in range(n)
    )
    name = f"{a.name}x{b.name}" if a.name and b.name else None
    return FiniteGroup(table, name=name)


# --- spec language ----------------------------------------------------------

_ATOM = re.compile(r"([ZCDS])(\d+)")


def load_table(path: str | Path) -> FiniteGroup:
    """Read a Cayley table file: ``n`` followed by ``n*n`` row-major indices."""
    tokens = Path(path).read_text().split()
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise GroupTableError("format", f"non-integer token in {path}") from exc
    if not values:
        raise GroupTableError("format", f"{path} is empty")
    n = values[0]
    if n < 1 or len(values) != 1 + n * n:
        raise GroupTableError("format", f"expected {n * n} entries after n={n}, got {len(values) - 1}")
    rows = tuple(tuple(values[1 + i * n:1 + (i + 1) * n]) for i in range(n))
    return FiniteGroup(rows, name=f"table:{path}")


def parse_group_spec(text: str) -> FiniteGroup:
    """Parse ``atom ("x" atom)*``; ``table:<path>`` may only be the last atom."""
    s = text.strip()
    if not s:
        raise GroupSpecError("empty group spec", 0)
    pos = 0
    result: FiniteGroup | None = None
    while True:
        if s.startswith("table:", pos):
            path = s[pos + len("table:"):]
            if not path:
                raise GroupSpecError("missing table path", pos + len("table:"))
            atom = load_table(path)
            pos = len(s)
        elif s.startswith("I", pos):
            atom = trivial()
            pos += 1
        else:
            m = _ATOM.match(s, pos)
            if not m:
                raise GroupSpecError(f"expected group atom, found {s[pos:pos + 1]!r}", pos)
            kind, k = m.group(1), int(m.group(2))
            if k < 1:
                raise GroupSpecError(f"family parameter must be >= 1, got {k}", m.start(2))
            atom = {"Z": cyclic, "C": cyclic, "D": dihedral, "S": symmetric}[kind](k)
            pos = m.end()
        result = atom if result is None else direct_product(result, atom)
        if pos == len(s):
            break
        if s[pos] != "x":
            raise GroupSpecError(f"expected 'x' or end of spec, found {s[pos]!r}", pos)
        pos += 1
        if pos == len(s):
            raise GroupSpecError("dangling 'x'", pos)
    assert result is not None
    return FiniteGroup(result.table, name=s)


# --- structure and isomorphism ----------------------------------------------

def element_order(g: FiniteGroup, x: int) -> int:
    k, y = 1, x
    while y != 0:
        y = g.table[y][x]
        k += 1
    return k


def element_orders(g: FiniteGroup) -> Counter:
    return Counter(element_order(g, x) for x in range(g.order))


def _closure(g: FiniteGroup, gens: Sequence[int]) -> list[int]:
    seen = {0}
    out = [0]
    for x in out:
        for s in gens:
            y = g.table[x][s]
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


def generating_set(g: FiniteGroup) -> list[int]:
    """Greedy small generating set: take high-order elements not yet generated."""
    orders = [element_order(g, x) for x in range(g.order)]
    candidates = sorted(range(1, g.order), key=lambda x: (-orders[x], x))
    gens: list[int] = []
    sub = {0}
    for x in candidates:
        if len(sub) == g.order:
            break
        if x not in sub:
            gens.append(x)
            sub = set(_closure(g, gens))
    return gens


def is_homomorphism(a: FiniteGroup, b: FiniteGroup, phi: Sequence[int]) -> bool:
    ta, tb = a.table, b.table
    return all(phi[ta[x][y]] == tb[phi[x]][phi[y]] for x in range(a.order) for y in range(a.order))


def is_isomorphic(a: FiniteGroup, b: FiniteGroup, cap: int = ISOMORPHISM_CAP) -> list[int] | None:
    """Return an isomorphism ``phi`` (``phi[x]`` = image of ``x``) or None."""
    if a.order != b.order:
        return None
    n = a.order
    if n > cap:
        raise ResourceLimitError(f"group order {n} exceeds isomorphism cap {cap}")
    orders_a = [element_order(a, x) for x in range(n)]
    orders_b = [element_order(b, x) for x in range(n)]
    if sorted(orders_a) != sorted(orders_b):
        return None
    gens = generating_set(a)
    by_order: dict[int, list[int]] = {}
    for y in range(n):
        by_order.setdefault(orders_b[y], []).append(y)
    ta, tb = a.table, b.table

    def extend(phi: dict[int, int], used: set[int], k: int) -> dict[int, int] | None:
        if k == len(gens):
            return phi
        g = gens[k]
        for h in by_order[orders_a[g]]:
            if h in used:
                continue
            new_phi = dict(phi)
            new_phi[g] = h
            new_used = set(used)
            new_used.add(h)
            active = gens[:k + 1]
            queue = list(new_phi)
            ok = True
            while queue and ok:
                x = queue.pop()
                px = new_phi[x]
                for s in active:
                    y = ta[x][s]
                    py = tb[px][new_phi[s]]
                    cur = new_phi.get(y)
                    if cur is None:
                        if py in new_used:
                            ok = False
                            break
                        new_phi[y] = py
                        new_used.add(py)
                        queue.append(y)
                    elif cur != py:
                        ok = False
                        break
            if ok:
                found = extend(new_phi, new_used, k + 1)
                if found is not None:
                    return found
        return None

    phi = extend({0: 0}, {0}, 0)
    if phi is None:
        return None
    result = [phi[x] for x in range(n)]
    if not is_homomorphism(a, b, result):  # pragma: no cover - guarded by construction
        return None
    return result


def group_to_json(g: FiniteGroup) -> str | dict:
    if g.name and not g.name.startswith("table:"):
        return g.name
    return {"order": g.order, "table": [list(r) for r in g.table]}


def group_from_json(obj: str | dict) -> FiniteGroup:
    if isinstance(obj, str):
        return parse_group_spec(obj)
    if isinstance(obj, dict) and "table" in obj:
        return FiniteGroup(tuple(tuple(r) for r in obj["table"]))
    raise InputError(f"cannot interpret group description {obj!r}")
