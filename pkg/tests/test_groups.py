import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autdel.errors import GroupSpecError, GroupTableError
from autdel.groups import (FiniteGroup, cyclic, dihedral, direct_product, element_order,
                           element_orders, generating_set, group_from_json, group_to_json,
                           is_homomorphism, is_isomorphic, load_table, parse_group_spec,
                           symmetric, trivial)

from conftest import small_group_pool

POOL = small_group_pool()


def test_orders():
    assert trivial().order == 1
    assert [cyclic(k).order for k in (1, 5, 12)] == [1, 5, 12]
    assert [dihedral(k).order for k in (2, 3, 6)] == [4, 6, 12]
    assert [symmetric(k).order for k in (1, 3, 4, 5)] == [1, 6, 24, 120]


def test_element_orders():
    assert element_orders(symmetric(3)) == {1: 1, 2: 3, 3: 2}
    assert element_orders(cyclic(6)) == {1: 1, 2: 1, 3: 2, 6: 2}
    assert element_orders(direct_product(cyclic(2), cyclic(2))) == {1: 1, 2: 3}
    assert element_order(cyclic(7), 3) == 7


def test_known_isomorphisms():
    assert is_isomorphic(symmetric(3), dihedral(3)) is not None
    assert is_isomorphic(cyclic(6), direct_product(cyclic(2), cyclic(3))) is not None
    assert is_isomorphic(cyclic(4), direct_product(cyclic(2), cyclic(2))) is None
    assert is_isomorphic(dihedral(2), direct_product(cyclic(2), cyclic(2))) is not None
    assert is_isomorphic(dihedral(4), direct_product(cyclic(2), cyclic(4))) is None
    assert is_isomorphic(symmetric(3), cyclic(6)) is None
    assert is_isomorphic(symmetric(4), direct_product(cyclic(2), dihedral(6))) is None


def test_chinese_remainder():
    for m, n in itertools.product(range(1, 31), repeat=2):
        if m * n > 30:
            continue
        iso = is_isomorphic(direct_product(cyclic(m), cyclic(n)), cyclic(m * n))
        assert (iso is not None) == (math.gcd(m, n) == 1), (m, n)


def test_isomorphism_returns_homomorphism():
    for a in POOL:
        phi = is_isomorphic(a, a)
        assert phi is not None and is_homomorphism(a, a, phi)
        assert sorted(phi) == list(range(a.order))


def test_symmetry_over_pool():
    for a, b in itertools.combinations(POOL, 2):
        ab = is_isomorphic(a, b)
        ba = is_isomorphic(b, a)
        assert (ab is None) == (ba is None), (a, b)
        if ab is not None:
            assert is_homomorphism(a, b, ab)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(POOL), st.randoms(use_true_random=False))
def test_relabelled_copy_is_isomorphic(g, rnd):
    # relabel non-identity elements and rebuild the table
    perm = [0] + rnd.sample(range(1, g.order), g.order - 1)
    inv = [0] * g.order
    for i, p in enumerate(perm):
        inv[p] = i
    table = tuple(tuple(perm[g.mul(inv[a], inv[b])] for b in range(g.order)) for a in range(g.order))
    h = FiniteGroup(table)
    phi = is_isomorphic(g, h)
    assert phi is not None and is_homomorphism(g, h, phi)


def test_generating_set_generates():
    for g in POOL:
        gens = generating_set(g)
        seen = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = g.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        assert len(seen) == g.order


def test_symmetric_cap():
    with pytest.raises(Exception):
        symmetric(8)


# --- tables ------------------------------------------------------------------

def test_table_validation():
    with pytest.raises(GroupTableError) as exc:
        FiniteGroup(((0, 1), (1, 1)))
    assert exc.value.axiom == "latin square"
    with pytest.raises(GroupTableError) as exc:
        FiniteGroup(((1, 0), (0, 1)))
    assert exc.value.axiom == "identity"
    # latin square with identity 0 that is not associative
    bad = ((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0))
    with pytest.raises(GroupTableError) as exc:
        FiniteGroup(bad)
    assert exc.value.axiom == "associativity"


def test_load_table(tmp_path):
    p = tmp_path / "z3.txt"
    p.write_text("3\n0 1 2\n1 2 0\n2 0 1\n")
    g = load_table(p)
    assert is_isomorphic(g, cyclic(3)) is not None
    (tmp_path / "short.txt").write_text("2\n0 1 1")
    with pytest.raises(GroupTableError):
        load_table(tmp_path / "short.txt")
    (tmp_path / "word.txt").write_text("2 a b c d")
    with pytest.raises(GroupTableError):
        load_table(tmp_path / "word.txt")


# --- spec language ---------------------------------------------------------

@pytest.mark.parametrize("spec, order", [("I", 1), ("Z2", 2), ("C5", 5), ("D4", 8), ("S3", 6),
                                         ("Z2xZ2", 4), ("Z2xS3xZ3", 36), (" Z4 ", 4)])
def test_parse_spec(spec, order):
    assert parse_group_spec(spec).order == order


def test_parse_spec_table(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("2 0 1 1 0")
    assert parse_group_spec(f"Z3xtable:{p}").order == 6


@pytest.mark.parametrize("spec, pos", [("", 0), ("Q8", 0), ("Z2x", 3), ("Z2*Z3", 2),
                                       ("Z0", 1), ("Z2xxZ3", 3), ("table:", 6)])
def test_parse_spec_errors(spec, pos):
    with pytest.raises(GroupSpecError) as exc:
        parse_group_spec(spec)
    assert exc.value.position == pos


def test_json_roundtrip(tmp_path):
    for g in POOL[:8]:
        assert group_from_json(group_to_json(g)).table == g.table
    p = tmp_path / "t.txt"
    p.write_text("2 0 1 1 0")
    g = load_table(p)
    assert isinstance(group_to_json(g), dict)
    assert group_from_json(group_to_json(g)).table == g.table
