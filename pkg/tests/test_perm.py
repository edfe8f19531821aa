import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from charfusion.catalog import CATALOG_SAMPLES, resolve
from charfusion.group import PermutationGroup
from charfusion.perm import Permutation, parse_permutation, parse_permutation_list


def perms(n):
    return st.permutations(range(n)).map(Permutation)


def test_involution_squares_to_identity():
    t = parse_permutation("(1 2)")
    assert (t * t).is_identity()


def test_three_cycle_square():
    c = parse_permutation("(1 2 3)")
    assert c * c == parse_permutation("(1 3 2)")


def test_product_applies_left_factor_first():
    a = parse_permutation("(1 2)", 3)
    b = parse_permutation("(2 3)", 3)
    # 1 -> 2 -> 3, 3 -> 2, 2 -> 1
    assert a * b == parse_permutation("(1 3 2)")
    assert str(a * b) == "(1 3 2)"


def test_parse_roundtrip_and_errors():
    p = parse_permutation("(1 4)(2 3 5)")
    assert parse_permutation(str(p), p.degree) == p
    with pytest.raises(ValueError):
        parse_permutation("(1 2")
    with pytest.raises(ValueError):
        parse_permutation("(1 1)")
    with pytest.raises(ValueError):
        Permutation.checked([0, 0, 1])


def test_parse_list_shares_degree():
    gens = parse_permutation_list("(1 2); (3 4 5)")
    assert [g.degree for g in gens] == [5, 5]


@given(perms(6), perms(6), perms(6))
def test_group_axioms(a, b, c):
    e = Permutation.identity(6)
    assert (a * b) * c == a * (b * c)
    assert a * e == a == e * a
    assert a * a.inverse() == e
    assert tuple(a * b) == oracles.mul(a, b)


@given(perms(6), perms(6))
def test_conjugation_matches_definition(a, g):
    assert a ^ g == g.inverse() * a * g
    assert tuple(a ^ g) == oracles.conj(a, g)
    assert (a ^ g).order() == a.order()


@given(perms(7), st.integers(-20, 20))
def test_power(a, k):
    expected = Permutation.identity(7)
    base = a if k >= 0 else a.inverse()
    for _ in range(abs(k)):
        expected = expected * base
    assert a ** k == expected


def test_orders_small_examples():
    s4 = PermutationGroup([parse_permutation("(1 2)", 4), parse_permutation("(1 2 3 4)")], 4)
    assert s4.order == 24
    assert PermutationGroup([], 1).order == 1
    assert PermutationGroup([parse_permutation("(1 2 3 4 5)")], 5).order == 5


def test_membership():
    s4 = resolve("S4")
    a4 = resolve("A4")
    assert parse_permutation("(1 3)", 4) in s4
    assert parse_permutation("(1 2)", 4) not in a4
    assert all(a4.contains(x) for x in oracles.closure(a4.generators, 4))
    assert s4.identity in s4


def test_element_enumeration():
    assert len(list(PermutationGroup.trivial(3).elements())) == 1
    assert len(list(resolve("S3").elements())) == 6
    d8 = resolve("D8")
    orders = oracles.census(d8.element_set)
    assert len(d8.element_set) == 8 and orders[4] == 2


@pytest.mark.parametrize("name", CATALOG_SAMPLES)
def test_bsgs_order_matches_closure(name):
    G = resolve(name)
    if G.order > 2000:
        pytest.skip("beyond the closure oracle size")
    elems = oracles.closure(G.generators, G.degree)
    assert len(elems) == G.order
    assert set(G.elements()) == elems


@given(st.lists(perms(6), min_size=1, max_size=3))
def test_random_groups_match_closure(gens):
    G = PermutationGroup(gens, 6)
    elems = oracles.closure(gens, 6)
    assert G.order == len(elems)
    for g in list(elems)[:10]:
        assert g in G
    for h in oracles.closure([Permutation.identity(6)], 6):
        assert h in G


@given(st.lists(perms(5), min_size=1, max_size=2), perms(5))
def test_membership_matches_closure(gens, x):
    G = PermutationGroup(gens, 5)
    assert (x in G) == (tuple(x) in oracles.closure(gens, 5))
