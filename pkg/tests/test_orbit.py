import pytest

import oracles
from charfusion.catalog import resolve
from charfusion.characters import character_table, fusion_stable_characters
from charfusion.errors import FusionViolation
from charfusion.orbit import limit_elements, orbit_category, pi1, sigma, verify_theorem_char
from charfusion.structure import prime_divisors
from charfusion.subgroups import p_subgroup_classes


def test_p_group_has_one_object():
    D8 = resolve("D8")
    cat = orbit_category(D8, 2)
    assert len(cat.objects) == 1
    assert cat.morphism_count(0, 0) == 1


def test_s4_morphism_counts():
    cat = orbit_category(resolve("S4"), 2)
    assert [rec.order for rec in cat.objects] == [8, 4]
    assert cat.to_json()["morphism_counts"] == [[1, 0], [3, 6]]


def test_sylow_only_collection():
    cat = orbit_category(resolve("S3"), 3, "sylow")
    assert len(cat.objects) == 1 and cat.morphism_count(0, 0) == 2
    with pytest.raises(ValueError):
        orbit_category(resolve("S3"), 3, "everything")


@pytest.mark.parametrize("name", ["S4", "A5", "SL23", "S3xS3"])
def test_morphisms_match_oracle(name):
    G = resolve(name)
    elems = G.element_set
    for p in prime_divisors(G.order):
        cat = orbit_category(G, p, "p_centric")
        n = len(cat.objects)
        for i in range(n):
            for j in range(n):
                P = cat.object_group(i).element_set
                Q = cat.object_group(j).element_set
                want = oracles.morphisms(elems, P, Q)
                got = {frozenset(g * q for q in Q) for g in cat.morphisms[(i, j)]}
                assert got == want


@pytest.mark.parametrize("name", ["S4", "A5", "SL23"])
def test_functoriality(name):
    # pulling back along a composite equals pulling back twice
    G = resolve(name)
    for p in prime_divisors(G.order):
        cat = orbit_category(G, p, "p_centric")
        n = len(cat.objects)
        top = character_table(cat.sylow)
        chi = top.regular()
        e = G.exponent
        svals = tuple(v.lift(e) for v in chi.values)
        s = cat.sylow_index
        for i in range(n):
            for j in range(n):
                for g in cat.morphisms[(i, j)]:
                    for h in cat.morphisms[(j, s)]:
                        via = cat.pullback(cat.pullback(svals, j, s, h), i, j, g)
                        direct = cat.pullback(svals, i, s, cat.compose(g, h, s))
                        assert via == direct


def test_limit_examples():
    S3 = resolve("S3")
    assert len(limit_elements(S3, 3, 1)) == 1
    S4 = resolve("S4")
    assert len(limit_elements(S4, 2, 1)) == len(fusion_stable_characters(S4, 2, 1)) == 2
    D8 = resolve("D8")
    assert len(limit_elements(D8, 2, 2)) == 11


def test_pi1_and_sigma_examples():
    S4 = resolve("S4")
    cat = orbit_category(S4, 2)
    T = character_table(cat.sylow)
    gamma = sigma(T.trivial(), cat)
    assert all(c.is_irreducible() and c.multiplicities[0] == 1 for c in gamma.components)
    assert pi1(gamma) == T.trivial()
    for gamma in limit_elements(S4, 2, 1, category=cat):
        chi = pi1(gamma)
        assert sigma(chi, cat) == gamma
        # the V4 component of either stable linear character is trivial
        assert gamma.components[1].multiplicities[0] == 1


def test_sigma_rejects_unstable():
    S3 = resolve("S3")
    cat = orbit_category(S3, 3)
    T = character_table(cat.sylow)
    with pytest.raises(FusionViolation):
        sigma(T.irreducible(T.linear_indices()[1]), cat)


@pytest.mark.parametrize("name", ["S3", "S4", "A4", "A5", "SL23", "D12", "Z7:Z3", "Q8"])
@pytest.mark.parametrize("n", [1, 2])
def test_theorem_char(name, n):
    G = resolve(name)
    for p in prime_divisors(G.order):
        rep = verify_theorem_char(G, p, n)
        assert rep.ok, rep.to_json()


def test_limit_elements_compatible_and_pi1_injective():
    G = resolve("S4")
    lim = limit_elements(G, 2, 2)
    assert all(g.is_compatible() for g in lim)
    assert len({pi1(g) for g in lim}) == len(lim)


def test_fault_injection_breaks_retraction():
    S4 = resolve("S4")
    cat = orbit_category(S4, 2).without_morphisms(1, 0)
    rep = verify_theorem_char(S4, 2, 1, category=cat)
    assert not rep.ok
    assert not rep.b_retraction
    assert rep.counterexample is not None


@pytest.mark.parametrize("name,p", [("SL23", 2), ("Q16", 2), ("SD16", 2)])
def test_skeleton_independence(name, p):
    G = resolve(name)
    base = orbit_category(G, p, "p_centric")
    classes = sorted(p_subgroup_classes(G, p).p_centric(), key=lambda c: -c.order)
    movable = [pos for pos, c in enumerate(classes) if pos and len(c.members) > 1]
    assert movable
    for pos in movable:
        alt = orbit_category(G, p, "p_centric", choices={pos: 1})
        assert alt.object_group(pos) != base.object_group(pos)
        for n in (1, 2):
            assert len(limit_elements(G, p, n, category=alt)) == len(limit_elements(G, p, n, category=base))


def test_limit_json():
    gamma = limit_elements(resolve("S4"), 2, 1)[0]
    data = gamma.to_json()
    assert set(data) == {"P0[8]", "P1[4]"}
