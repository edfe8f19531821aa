"""Values frozen from brute-force enumeration, checked against both the oracle and the library."""

import pytest

import oracles
from charfusion.catalog import resolve
from charfusion.characters import character_table, degree_n_characters, fusion_stable_characters
from charfusion.structure import (
    center,
    conjugacy_classes,
    derived_subgroup,
    order_census,
    p_rank,
    prime_divisors,
    sylow_subgroup,
)
from charfusion.subgroups import p_subgroup_classes

# name: (order, classes, |Z|, |G'|, p-ranks, element order census)
GROUP_INVARIANTS = {
    "S3": (6, 3, 1, 3, {2: 1, 3: 1}, {1: 1, 2: 3, 3: 2}),
    "S4": (24, 5, 1, 12, {2: 2, 3: 1}, {1: 1, 2: 9, 3: 8, 4: 6}),
    "A4": (12, 4, 1, 4, {2: 2, 3: 1}, {1: 1, 2: 3, 3: 8}),
    "A5": (60, 5, 1, 60, {2: 2, 3: 1, 5: 1}, {1: 1, 2: 15, 3: 20, 5: 24}),
    "D8": (8, 5, 2, 2, {2: 2}, {1: 1, 2: 5, 4: 2}),
    "Q8": (8, 5, 2, 2, {2: 1}, {1: 1, 2: 1, 4: 6}),
    "Q16": (16, 7, 2, 4, {2: 1}, {1: 1, 2: 1, 4: 10, 8: 4}),
    "SD16": (16, 7, 2, 4, {2: 2}, {1: 1, 2: 5, 4: 6, 8: 4}),
    "SL23": (24, 7, 2, 8, {2: 1, 3: 1}, {1: 1, 2: 1, 3: 8, 4: 6, 6: 8}),
    "D12": (12, 6, 2, 3, {2: 2, 3: 1}, {1: 1, 2: 7, 3: 2, 6: 2}),
    "Z7:Z3": (21, 5, 1, 7, {3: 1, 7: 1}, {1: 1, 3: 14, 7: 6}),
    "He3": (27, 11, 3, 3, {3: 2}, {1: 1, 3: 26}),
    "M27": (27, 11, 3, 3, {3: 2}, {1: 1, 3: 8, 9: 18}),
    "S3xS3": (36, 9, 1, 9, {2: 2, 3: 2}, {1: 1, 2: 15, 3: 8, 6: 12}),
    "Z4xZ4": (16, 16, 16, 1, {2: 2}, {1: 1, 2: 3, 4: 12}),
}

# (name, p): (classes of p-subgroups, fusion-stable counts for n = 1, 2, 3)
FUSION_COUNTS = {
    ("S4", 2): (7, (2, 3, 6)),
    ("S4", 3): (2, (1, 2, 2)),
    ("A4", 2): (3, (1, 1, 2)),
    ("A5", 2): (3, (1, 1, 2)),
    ("A5", 5): (2, (1, 3, 3)),
    ("SL23", 2): (4, (1, 2, 3)),
    ("D12", 2): (5, (4, 10, 20)),
    ("S3xS3", 3): (5, (1, 3, 3)),
    ("Z7:Z3", 3): (2, (3, 6, 10)),
    ("S3", 3): (2, (1, 2, 2)),
}


@pytest.mark.parametrize("name", sorted(GROUP_INVARIANTS))
def test_oracle_reproduces_group_invariants(name):
    G = resolve(name)
    E = G.element_set
    order, ncls, z, d, ranks, census = GROUP_INVARIANTS[name]
    assert len(E) == order
    assert len(oracles.classes(E)) == ncls
    assert len(oracles.center(E)) == z
    assert len(oracles.commutator_closure(E, G.degree)) == d
    assert {p: oracles.p_rank(E, p) for p in ranks} == ranks
    assert dict(oracles.census(E)) == census


@pytest.mark.parametrize("name", sorted(GROUP_INVARIANTS))
def test_library_reproduces_group_invariants(name):
    G = resolve(name)
    order, ncls, z, d, ranks, census = GROUP_INVARIANTS[name]
    assert G.order == order
    assert len(conjugacy_classes(G)) == ncls
    assert center(G).order == z
    assert derived_subgroup(G).order == d
    assert {p: p_rank(G, p) for p in prime_divisors(order)} == ranks
    assert dict(order_census(G)) == census


@pytest.mark.parametrize("key", sorted(FUSION_COUNTS))
def test_oracle_reproduces_fusion_counts(key):
    name, p = key
    G = resolve(name)
    E = G.element_set
    ncls, stable = FUSION_COUNTS[key]
    assert len(oracles.subgroup_classes(E, oracles.p_subgroups(E, G.degree, p))) == ncls
    S = sylow_subgroup(G, p)
    pairs = oracles.fused_pairs(sorted(E), S.element_set)
    T = character_table(S)
    got = tuple(sum(all(c(a) == c(b) for a, b in pairs) for c in degree_n_characters(T, n)) for n in (1, 2, 3))
    assert got == stable


@pytest.mark.parametrize("key", sorted(FUSION_COUNTS))
def test_library_reproduces_fusion_counts(key):
    name, p = key
    G = resolve(name)
    ncls, stable = FUSION_COUNTS[key]
    assert len(p_subgroup_classes(G, p).classes) == ncls
    assert tuple(len(fusion_stable_characters(G, p, n)) for n in (1, 2, 3)) == stable
