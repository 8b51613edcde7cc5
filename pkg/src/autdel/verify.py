"""Check that a witness realises its claimed deletion relation."""
from __future__ import annotations

import os
import time
from dataclasses import asdict, dataclass, field

from .constructions import Witness
from .engine import automorphisms
from .errors import ResourceLimitError
from .graph import Graph, delete_edge, delete_vertex
from .groups import FiniteGroup, ISOMORPHISM_CAP, is_isomorphic
from .perm import ABSTRACT_GROUP_CAP, PermGroup, as_abstract_group, stabilizer

ENV_CAP = "AUTODEL_ENGINE_CAP"


def engine_cap() -> int:
    """Abstract-group cap, overridable through the environment."""
    raw = os.environ.get(ENV_CAP)
    return int(raw) if raw else ABSTRACT_GROUP_CAP


@dataclass
class VerificationReport:
    status: str  # "pass", "fail" or "resource"
    aut_before_order: int | None = None
    aut_after_order: int | None = None
    claimed_orders: tuple[int, int] = (0, 0)
    iso_before: bool = False
    iso_after: bool = False
    map_before: list[int] | None = None
    map_after: list[int] | None = None
    elapsed_before: float = 0.0
    elapsed_after: float = 0.0
    messages: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = asdict(self)
        out["claimed_orders"] = list(self.claimed_orders)
        return out


def deleted_graph(w: Witness) -> Graph:
    if w.is_edge:
        return delete_edge(w.graph, *w.target)
    return delete_vertex(w.graph, w.target)[0]


def _compare(pg: PermGroup, gamma: FiniteGroup, cap: int) -> list[int] | None:
    abstract, _ = as_abstract_group(pg, cap=cap)
    return is_isomorphic(gamma, abstract, cap=max(cap, ISOMORPHISM_CAP))


def verify_witness(w: Witness, cap: int | None = None) -> VerificationReport:
    cap = engine_cap() if cap is None else cap
    report = VerificationReport("fail", claimed_orders=(w.gamma1.order, w.gamma2.order))
    if not w.is_edge and w.graph.n < 3:
        report.messages.append(f"vertex witness needs at least 3 vertices, has {w.graph.n}")
        return report
    t0 = time.perf_counter()
    before = automorphisms(w.graph)
    report.aut_before_order = before.order()
    report.elapsed_before = time.perf_counter() - t0
    t0 = time.perf_counter()
    after = automorphisms(deleted_graph(w))
    report.aut_after_order = after.order()
    report.elapsed_after = time.perf_counter() - t0

    ok = True
    for label, got, want in (("before", report.aut_before_order, w.gamma1.order),
                             ("after", report.aut_after_order, w.gamma2.order)):
        if got != want:
            report.messages.append(f"order mismatch {label} deletion: {got} != {want}")
            ok = False
    if not ok:
        return report
    try:
        report.map_before = _compare(before, w.gamma1, cap)
        report.map_after = _compare(after, w.gamma2, cap)
    except ResourceLimitError as exc:
        report.status = "resource"
        report.messages.append(str(exc))
        return report
    report.iso_before = report.map_before is not None
    report.iso_after = report.map_after is not None
    if not report.iso_before:
        report.messages.append("Aut(G) is not isomorphic to gamma1")
    if not report.iso_after:
        report.messages.append("Aut(G - target) is not isomorphic to gamma2")
    if report.iso_before and report.iso_after:
        report.status = "pass"
    return report


def check_stabilizer_subgroup(g: Graph, v: int, aut: PermGroup | None = None) -> bool:
    """Every generator of Stab(v), restricted to G - v, is an automorphism of G - v."""
    aut = automorphisms(g) if aut is None else aut
    h, vmap = delete_vertex(g, v)
    for p in stabilizer(aut, v).gens:
        if p[v] != v:
            return False
        restricted = [0] * h.n
        for x, y in vmap.items():
            restricted[y] = vmap[p[x]]
        if not h.is_automorphism(restricted):
            return False
    return True
