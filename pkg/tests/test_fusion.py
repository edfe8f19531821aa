import pytest

import oracles
from charfusion.catalog import resolve
from charfusion.errors import NotASubgroup
from charfusion.fusion import (
    ConjugationFamily,
    FusionCertificate,
    family_pair,
    goldschmidt_family,
    is_p_isolated,
    is_strongly_p_embedded,
    is_tame_intersection,
    principal_radical_family,
    sylow_subgroups,
    verify_element_fusion_family,
)
from charfusion.group import PermutationGroup
from charfusion.perm import parse_permutation
from charfusion.structure import conjugacy_classes, intersection, normalizer, p_part, prime_divisors, sylow_subgroup

FUSION_SAMPLES = ["S3", "S4", "A4", "A5", "D12", "SL23", "Q8", "S3xS3", "Z7:Z3", "S3wrZ2", "Z13:Z3"]


def sub(G, *texts):
    return PermutationGroup([parse_permutation(t, G.degree) for t in texts], G.degree)


def test_principal_family_examples():
    S4 = resolve("S4")
    fam = principal_radical_family(S4, 2)
    assert sorted(H.order for H in fam.subgroups()) == [4, 8]
    Z5 = resolve("cyclic(5)")
    fam = principal_radical_family(Z5, 5)
    assert len(fam) == 1 and fam.pairs[0].controller == Z5
    A4 = resolve("A4")
    fam = principal_radical_family(A4, 3)
    assert len(fam) == 1
    assert fam.pairs[0].group.order == 3 and fam.pairs[0].controller.order == 3


def test_sylow_subgroups_enumerated():
    S4 = resolve("S4")
    assert len(sylow_subgroups(S4, 2)) == 3
    assert len(sylow_subgroups(S4, 3)) == 4
    assert sylow_subgroups(S4, 2)[0] == sylow_subgroup(S4, 2)


def _oracle_tame(G, Q, R, p):
    elems = G.element_set
    H = Q.element_set & R.element_set
    N = oracles.normalizer(elems, H)
    target = p_part(len(N), p)
    return (len(oracles.normalizer(Q.element_set, H)) == target
            and len(oracles.normalizer(R.element_set, H)) == target)


def test_tame_examples():
    S4 = resolve("S4")
    D = sylow_subgroups(S4, 2)
    assert is_tame_intersection(S4, D[0], D[0], 2)
    for R in D[1:]:
        assert is_tame_intersection(S4, D[0], R, 2) == _oracle_tame(S4, D[0], R, 2)
        assert intersection(D[0], R).order == 4
    A4 = resolve("A4")
    T = sylow_subgroups(A4, 3)
    assert intersection(T[0], T[1]).order == 1
    assert is_tame_intersection(A4, T[0], T[1], 3)
    with pytest.raises(ValueError):
        is_tame_intersection(S4, sub(S4, "(1 2)"), D[0], 2)


@pytest.mark.parametrize("name", ["S4", "A5", "S3xS3", "SL23", "D12"])
def test_tame_against_oracle(name):
    G = resolve(name)
    for p in prime_divisors(G.order):
        sy = sylow_subgroups(G, p)
        for R in sy[:6]:
            assert is_tame_intersection(G, sy[0], R, p) == _oracle_tame(G, sy[0], R, p)


def test_strongly_embedded_examples():
    S3 = resolve("S3")
    assert not is_strongly_p_embedded(S3, sub(S3, "(1 2 3)"), 3)
    A4 = resolve("A4")
    assert is_strongly_p_embedded(A4, sub(A4, "(1 2 3)"), 3)
    assert not is_strongly_p_embedded(A4, sub(A4, "(1 2)(3 4)"), 3)
    assert is_p_isolated(A4, 3)
    assert is_p_isolated(S3, 2)
    assert not is_p_isolated(resolve("V4"), 2)


def _oracle_strongly_embedded(G, H, p):
    if H.order == G.order or H.order % p:
        return False
    hset = H.element_set
    for g in G.sorted_elements:
        if g in hset:
            continue
        meet = hset & frozenset(h ^ g for h in hset)
        if len(meet) % p == 0:
            return False
    return True


@pytest.mark.parametrize("name", ["S3", "A4", "S4", "D12", "A5"])
def test_strongly_embedded_oracle(name):
    G = resolve(name)
    for p in prime_divisors(G.order):
        S = sylow_subgroup(G, p)
        for H in (S, normalizer(G, S)):
            if H.order < G.order:
                assert is_strongly_p_embedded(G, H, p) == _oracle_strongly_embedded(G, H, p)


def test_goldschmidt_examples():
    Z7Z3 = resolve("Z7:Z3")
    fam = goldschmidt_family(Z7Z3, 7)
    assert [(pr.group.order, pr.controller.order) for pr in fam.pairs] == [(7, 21)]
    S3 = resolve("S3")
    fam = goldschmidt_family(S3, 3)
    assert [(pr.group.order, pr.controller.order) for pr in fam.pairs] == [(3, 6)]
    S4 = resolve("S4")
    orders = sorted(pr.group.order for pr in goldschmidt_family(S4, 2).pairs)
    assert 8 in orders


@pytest.mark.parametrize("name", FUSION_SAMPLES)
def test_goldschmidt_inside_principal(name):
    G = resolve(name)
    for p in prime_divisors(G.order):
        gold = {pr.group.element_set for pr in goldschmidt_family(G, p).pairs}
        principal = {pr.group.element_set for pr in principal_radical_family(G, p).pairs}
        assert gold <= principal


@pytest.mark.parametrize("name", FUSION_SAMPLES)
@pytest.mark.parametrize("builder", [principal_radical_family, goldschmidt_family])
def test_families_control_element_fusion(name, builder):
    G = resolve(name)
    for p in prime_divisors(G.order):
        rep = verify_element_fusion_family(G, p, builder(G, p))
        assert rep.ok and rep.replay_all()
        # every G-fused pair of class representatives has a certificate
        S = rep.family.sylow
        gcc = conjugacy_classes(G)
        reps = conjugacy_classes(S).representatives
        fused = {(a, b) for a in reps for b in reps if a != b and gcc.index(a) == gcc.index(b)}
        assert {(c.source, c.target) for c in rep.certificates} == fused


@pytest.mark.parametrize("name", ["S4", "A4", "SL23"])
def test_subgroup_mode(name):
    G = resolve(name)
    for p in prime_divisors(G.order):
        rep = verify_element_fusion_family(G, p, principal_radical_family(G, p), mode="subgroups")
        assert rep.ok and rep.replay_all()


def test_sylow_only_family_in_s3():
    S3 = resolve("S3")
    S = sylow_subgroup(S3, 3)
    fam = ConjugationFamily(S3, 3, S, [family_pair(S, S3, controller=S)], "sylow-self")
    bare = verify_element_fusion_family(S3, 3, fam, normalizer_step=False)
    assert not bare.ok
    a, b = bare.counterexample
    assert b == a * a
    # the closing N_G(S) step realises the fusion
    assert verify_element_fusion_family(S3, 3, fam).ok


def test_normal_sylow_controls_fusion():
    G = resolve("Z7:Z3")
    S = sylow_subgroup(G, 7)
    fam = ConjugationFamily(G, 7, S, [family_pair(S, G)])
    assert verify_element_fusion_family(G, 7, fam, normalizer_step=False).ok


def test_monotone_under_extra_pairs():
    S4 = resolve("S4")
    fam = principal_radical_family(S4, 2)
    S = fam.sylow
    z4 = next(x for x in S.sorted_elements if x.order() == 4)
    bigger = fam.with_pair(family_pair(S.subgroup([z4]), S4))
    assert verify_element_fusion_family(S4, 2, bigger).ok


def test_certificate_replay_detects_tampering():
    S4 = resolve("S4")
    rep = verify_element_fusion_family(S4, 2, principal_radical_family(S4, 2))
    cert = rep.certificates[0]
    assert cert.replay(rep.family)
    forged = FusionCertificate(cert.source, cert.source if cert.source != cert.target else S4.identity, cert.steps)
    assert not forged.replay(rep.family)


def test_family_validation():
    S4 = resolve("S4")
    S = sylow_subgroup(S4, 2)
    with pytest.raises(NotASubgroup):
        family_pair(S, S4, controller=sub(S4, "(1 2 3)"))
    outside = S.conjugate(next(g for g in S4.sorted_elements if S.conjugate(g) != S))
    with pytest.raises(NotASubgroup):
        ConjugationFamily(S4, 2, S, [family_pair(outside, S4)])
