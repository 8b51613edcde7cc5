import itertools
import random

import pytest

from autdel.engine import (automorphisms, brute_force_automorphisms, canonical_form)
from autdel.errors import InputError, ResourceLimitError
from autdel.graph import Graph, delete_edge, delete_vertex, to_graph6
from autdel.groups import cyclic, trivial
from autdel.perm import PermGroup
from autdel.search import (KNOWN_COUNTS, SearchConfig, enumerate_graphs, search_min_edge_witness,
                           search_min_vertex_witness, subset_orbit_reps, _map_mask)
from autdel.verify import verify_witness

from oracles import burnside_graph_count

Z2, Z3, I = cyclic(2), cyclic(3), trivial()


def test_burnside_oracle_small():
    assert [burnside_graph_count(n) for n in range(1, 5)] == [1, 2, 4, 11]


@pytest.mark.parametrize("n", range(1, 9))
def test_counts_match_burnside(enumerator, n):
    assert len(enumerator.level(n)) == burnside_graph_count(n) == KNOWN_COUNTS[n]


def test_no_duplicate_forms(enumerator):
    for n in range(1, 8):
        forms = [canonical_form(g) for g, _ in enumerator.level(n)]
        assert len(set(forms)) == len(forms)


def test_classes_cover_all_labelled_graphs(enumerator):
    for n in range(1, 6):
        reps = {canonical_form(g) for g, _ in enumerator.level(n)}
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            g = Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])
            assert canonical_form(g) in reps


def test_cached_generators_are_automorphisms(enumerator):
    for g, gens in enumerator.level(6):
        assert all(g.is_automorphism(p) for p in gens)
        assert PermGroup(g.n, gens).order() == automorphisms(g).order()


def test_rigid_counts(enumerator):
    # asymmetric graphs on 1..8 vertices
    rigid = [sum(1 for g, gens in enumerator.level(n) if PermGroup(n, gens).order() == 1)
             for n in range(1, 9)]
    assert rigid == [1, 0, 0, 0, 0, 8, 152, 3696]


def test_subset_orbit_reps_against_closure():
    rng = random.Random(4)
    for _ in range(30):
        n = rng.randint(1, 7)
        gens = []
        for _ in range(rng.randint(0, 2)):
            p = list(range(n))
            rng.shuffle(p)
            gens.append(tuple(p))
        group = PermGroup(n, gens).elements() if gens else [tuple(range(n))]
        orbit_mins = {min(_map_mask(m, p) for p in group) for m in range(1 << n)}
        assert sorted(subset_orbit_reps(n, gens)) == sorted(orbit_mins)


def test_enumerate_graphs_stream():
    assert len(list(enumerate_graphs(4))) == 11
    with pytest.raises(ResourceLimitError):
        list(enumerate_graphs(11))
    with pytest.raises(InputError):
        list(enumerate_graphs(0))


# --- minimal witnesses ---------------------------------------------------------

def test_z2_z2_vertex_minimum():
    # K2 plus an isolated vertex, deleting the isolated vertex
    r = search_min_vertex_witness(Z2, Z2, 4)
    assert r.found.graph.n == 3
    assert to_graph6(r.found.graph) == b"BG"
    assert r.found.graph.degree(r.found.target) == 0


def test_edge_z2_z2_is_k2():
    r = search_min_edge_witness(Z2, Z2, 3)
    assert r.found.graph == Graph.from_edges(2, [(0, 1)])


def test_trivial_pairs_need_rigid_graphs():
    # no rigid graph has 2..5 vertices, so nothing is found up to 4
    r = search_min_vertex_witness(I, I, 4)
    assert r.found is None and r.exhausted_up_to == 4
    r = search_min_edge_witness(I, I, 4)
    assert r.found is None and r.exhausted_up_to == 4


def test_trivial_pair_minima():
    r = search_min_vertex_witness(I, I, 8)
    assert r.found.graph.n == 7 and r.exhausted_up_to == 6
    assert to_graph6(r.found.graph) == b"F?CzW"
    r = search_min_edge_witness(I, I, 8)
    assert r.found.graph.n == 6 and r.exhausted_up_to == 5


def test_i_to_z2_minimum():
    r = search_min_vertex_witness(I, Z2, 6)
    assert r.found.graph.n == 6
    g = r.found.graph
    assert brute_force_automorphisms(g).order() == 1


def test_edge_z2_to_i_minimum():
    r = search_min_edge_witness(Z2, I, 6)
    assert r.found.graph.n == 6
    assert verify_witness(r.found).passed


def _labelled_minima(max_n):
    """Smallest order realising each (|Aut G|, |Aut G - x|) over all labelled graphs."""
    best = {"vertex": {}, "edge": {}}
    for n in range(2, max_n + 1):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            g = Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])
            before = brute_force_automorphisms(g).order()
            if n >= 3:
                for v in range(n):
                    after = brute_force_automorphisms(delete_vertex(g, v)[0]).order()
                    best["vertex"].setdefault((before, after), n)
            for u, v in g.edges():
                after = brute_force_automorphisms(delete_edge(g, u, v)).order()
                best["edge"].setdefault((before, after), n)
    return best


def test_search_minimum_against_labelled_scan():
    # groups of order 1, 2 and 3 are determined by their order
    best = _labelled_minima(5)
    for a, b in itertools.product((1, 2, 3), repeat=2):
        for kind, fn in (("vertex", search_min_vertex_witness), ("edge", search_min_edge_witness)):
            r = fn(cyclic(a), cyclic(b), 5)
            got = None if r.found is None else r.found.graph.n
            assert got == best[kind].get((a, b)), (kind, a, b)


def test_search_cap():
    with pytest.raises(ResourceLimitError):
        search_min_vertex_witness(Z2, Z3, 12)
    with pytest.raises(ResourceLimitError):
        search_min_edge_witness(Z2, Z3, 11)
    with pytest.raises(ResourceLimitError):
        search_min_vertex_witness(Z2, Z3, 6, SearchConfig(enumeration_cap=4))


def test_search_result_json():
    obj = search_min_vertex_witness(Z2, Z2, 4).to_json()
    assert obj["order"] == 3 and obj["relation"] == "vertex"
    assert obj["found"]["target"] == {"vertex": obj["found"]["landmarks"]["target"]}


def test_parallel_matches_serial():
    serial = search_min_vertex_witness(I, Z2, 6)
    parallel = search_min_vertex_witness(I, Z2, 6, SearchConfig(workers=2))
    assert to_graph6(serial.found.graph) == to_graph6(parallel.found.graph)
    assert serial.counts == parallel.counts
