"""Conjugation families and element-level fusion verification.

A family is a list of pairs ``(H, T)`` with ``H`` inside the fixed Sylow
subgroup ``S`` and ``T <= N_G(H)``.  Fusion through the family means: move
``a`` by ``x_1 in T_1`` while ``a`` lies in ``H_1``, then by ``x_2 in T_2``
while in ``H_2``, and so on, and finish with one ``y in N_G(S)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Literal

from . import config
from .errors import CapExceeded, NotASubgroup
from .group import PermutationGroup
from .perm import Permutation
from .structure import (
    centralizer,
    conjugacy_classes,
    intersection,
    normalizer,
    o_pprime_p,
    p_part,
    quotient_group,
    right_transversal,
    sylow_subgroup,
)
from .subgroups import SubgroupRecord, p_subgroup_classes, subgroups_of_p_group

__all__ = [
    "FamilyPair",
    "ConjugationFamily",
    "ChainStep",
    "FusionCertificate",
    "FusionReport",
    "principal_radical_family",
    "goldschmidt_family",
    "sylow_subgroups",
    "family_pair",
    "is_tame_intersection",
    "is_strongly_p_embedded",
    "is_p_isolated",
    "verify_element_fusion_family",
]


@dataclass
class FamilyPair:
    subgroup: SubgroupRecord
    controller: PermutationGroup

    def __post_init__(self):
        H = self.subgroup.subgroup
        if not self.controller.is_subgroup_of(self.subgroup.ambient):
            raise NotASubgroup("controller is not a subgroup of the ambient group")
        if not all(h ^ t in H for t in self.controller.generators for h in H.generators):
            raise NotASubgroup("controller does not normalise the subgroup")

    @property
    def group(self) -> PermutationGroup:
        return self.subgroup.subgroup

    def key(self) -> tuple[frozenset, frozenset]:
        return (self.group.element_set, self.controller.element_set)


@dataclass
class ConjugationFamily:
    ambient: PermutationGroup
    prime: int
    sylow: PermutationGroup
    pairs: list[FamilyPair]
    label: str = "family"

    def __post_init__(self):
        sset = self.sylow.element_set
        seen = set()
        for pair in self.pairs:
            if not pair.group.element_set <= sset:
                raise NotASubgroup("family subgroup is not contained in the fixed Sylow subgroup")
            k = pair.key()
            if k in seen:
                raise ValueError("duplicate pair in conjugation family")
            seen.add(k)

    def __len__(self) -> int:
        return len(self.pairs)

    def subgroups(self) -> list[PermutationGroup]:
        return [pair.group for pair in self.pairs]

    def with_pair(self, pair: FamilyPair) -> "ConjugationFamily":
        return ConjugationFamily(self.ambient, self.prime, self.sylow, self.pairs + [pair], self.label)


def _pair(H: PermutationGroup, G: PermutationGroup, N: PermutationGroup | None = None) -> FamilyPair:
    rec = SubgroupRecord(H, G)
    if N is not None:
        rec.__dict__["normalizer"] = N
    return FamilyPair(rec, rec.normalizer)


def family_pair(H: PermutationGroup, G: PermutationGroup, controller: PermutationGroup | None = None) -> FamilyPair:
    """The pair ``(H, controller)``, the controller defaulting to ``N_G(H)``."""
    rec = SubgroupRecord(H, G)
    return FamilyPair(rec, rec.normalizer if controller is None else controller)


def principal_radical_family(G: PermutationGroup, p: int) -> ConjugationFamily:
    """Pairs ``(H, N_G(H))`` for every principal ``p``-radical ``H`` inside the Sylow subgroup."""
    cls = p_subgroup_classes(G, p)
    pairs = []
    for c in cls.principal_p_radical():
        for i in range(len(c.members)):
            pairs.append(_pair(c.member_group(i), G, c.member_normalizer(i)))
    if cls.sylow.order > 1 and not any(pair.group.order == cls.sylow.order for pair in pairs):
        raise AssertionError("the Sylow subgroup is missing from the principal p-radical family")
    return ConjugationFamily(G, p, cls.sylow, pairs, "principal_p_radical")


# -- predicates ------------------------------------------------------------------


def sylow_subgroups(G: PermutationGroup, p: int, cap: int | None = None) -> list[PermutationGroup]:
    """All Sylow ``p``-subgroups, the fixed one first."""
    cap = config.SYLOW_COUNT_CAP if cap is None else cap
    S = sylow_subgroup(G, p)
    N = normalizer(G, S)
    count = G.order // N.order
    if count > cap:
        raise CapExceeded("number of Sylow subgroups", count, cap)
    return [S.conjugate(g) for g in right_transversal(G, N)]


def _require_sylow(G: PermutationGroup, Q: PermutationGroup, p: int) -> None:
    if not Q.is_subgroup_of(G) or Q.order != p_part(G.order, p) or not Q.is_p_group(p):
        raise ValueError("expected a Sylow subgroup")


def is_tame_intersection(G: PermutationGroup, Q: PermutationGroup, R: PermutationGroup, p: int) -> bool:
    """``H = Q & R`` with ``N_Q(H)`` and ``N_R(H)`` both Sylow in ``N_G(H)``."""
    _require_sylow(G, Q, p)
    _require_sylow(G, R, p)
    H = intersection(Q, R)
    N = normalizer(G, H)
    target = p_part(N.order, p)
    return (intersection(N, Q).order == target and intersection(N, R).order == target)


def is_strongly_p_embedded(G: PermutationGroup, H: PermutationGroup, p: int) -> bool:
    """``p`` divides ``|H|`` but no ``H & H^g`` with ``g`` outside ``H``."""
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not a subgroup of G")
    if H.order == G.order:
        raise ValueError("H must be a proper subgroup")
    if H.order % p:
        return False
    hset = H.element_set
    for g in right_transversal(G, H):
        if g in hset:
            continue
        gi = g.inverse()
        # |H & H^g| = #{h in H : g h g^-1 in H}
        meet = sum(1 for h in hset if (h ^ gi) in hset)
        if meet % p == 0:
            return False
    return True


def _local_join(G: PermutationGroup, p: int) -> PermutationGroup:
    """``<N_G(X) : 1 != X <= S>`` for the fixed Sylow subgroup ``S``."""
    S = sylow_subgroup(G, p)
    M = normalizer(G, S)
    if M.order == G.order:
        return M
    for X, gens in subgroups_of_p_group(S, p).items():
        if not gens:
            continue
        X = PermutationGroup(gens, G.degree)
        for g in normalizer(G, X).generators:
            if g not in M:
                M = M.join(g)
        if M.order == G.order:
            break
    return M


def is_p_isolated(G: PermutationGroup, p: int) -> bool:
    """Whether ``G`` has a strongly ``p``-embedded subgroup.

    ``G`` has one exactly when the subgroup ``M`` generated by the normalizers
    of non-trivial subgroups of a Sylow subgroup is proper; ``M`` is then
    itself strongly embedded, and that is checked from the definition.
    """
    def compute():
        if G.order % p:
            return False
        M = _local_join(G, p)
        if M.order == G.order:
            return False
        if not is_strongly_p_embedded(G, M, p):
            raise AssertionError("proper p-local join is not strongly p-embedded")
        return True
    return G.memo(("p_isolated", p), compute)


def goldschmidt_conditions(G: PermutationGroup, S: PermutationGroup, P: PermutationGroup, p: int) -> dict[str, bool]:
    """The four conditions for ``H = S & P`` as a dict (short-circuit free)."""
    H = intersection(S, P)
    N = normalizer(G, H)
    tame = is_tame_intersection(G, S, P, p)
    cent = centralizer(S, H.generators).is_subgroup_of(H)
    O = o_pprime_p(N, p)
    sylow_in_O = H.is_subgroup_of(O) and p_part(O.order, p) == H.order
    isolated = H.order == P.order or is_p_isolated(quotient_group(N, H), p)
    return {"tame": tame, "centralizer": cent, "o_pprime_p": sylow_in_O, "isolated": isolated}


def goldschmidt_family(G: PermutationGroup, p: int, cap: int | None = None) -> ConjugationFamily:
    """Pairs ``(H, N_G(H))`` with ``H = S & P`` satisfying all four Goldschmidt conditions."""
    def compute():
        S = sylow_subgroup(G, p)
        pairs = []
        seen: set[frozenset] = set()
        if S.order == 1:
            return ConjugationFamily(G, p, S, [], "goldschmidt")
        sset = S.element_set
        for P in sylow_subgroups(G, p, cap):
            key = sset & P.element_set
            if key in seen:
                continue
            conds = goldschmidt_conditions(G, S, P, p)
            if all(conds.values()):
                seen.add(key)
                H = intersection(S, P)
                pairs.append(_pair(H, G))
        return ConjugationFamily(G, p, S, pairs, "goldschmidt")
    return G.memo(("goldschmidt_family", p), compute)


# -- verification -----------------------------------------------------------------


@dataclass(frozen=True)
class ChainStep:
    """One conjugation: by ``conjugator`` from pair ``pair_index``, or a final normalizer step (index -1)."""

    pair_index: int
    conjugator: Permutation

    def to_json(self, family: ConjugationFamily) -> dict:
        if self.pair_index < 0:
            return {"normalizer_of_sylow": True, "conjugator": str(self.conjugator)}
        H = family.pairs[self.pair_index].group
        return {"subgroup": [str(g) for g in H.generators], "conjugator": str(self.conjugator)}


def _act(obj, g: Permutation):
    if isinstance(obj, frozenset):
        return frozenset(x ^ g for x in obj)
    return obj ^ g


def _inside(obj, hset: frozenset) -> bool:
    if isinstance(obj, frozenset):
        return obj <= hset
    return obj in hset


@dataclass
class FusionCertificate:
    source: object
    target: object
    steps: list[ChainStep]

    def replay(self, family: ConjugationFamily) -> bool:
        """Re-apply every step, checking containment and controller membership."""
        G = family.ambient
        nsyl = normalizer(G, family.sylow)
        cur = self.source
        for st in self.steps:
            if st.pair_index < 0:
                if st.conjugator not in nsyl:
                    return False
            else:
                pair = family.pairs[st.pair_index]
                if not _inside(cur, pair.group.element_set) or st.conjugator not in pair.controller:
                    return False
            cur = _act(cur, st.conjugator)
        return cur == self.target

    def to_json(self, family: ConjugationFamily) -> dict:
        def show(x):
            return sorted(str(g) for g in x) if isinstance(x, frozenset) else str(x)
        return {"source": show(self.source), "target": show(self.target),
                "steps": [s.to_json(family) for s in self.steps]}


@dataclass
class FusionReport:
    ok: bool
    family: ConjugationFamily
    mode: str
    certificates: list[FusionCertificate] = field(default_factory=list)
    counterexample: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok

    def replay_all(self) -> bool:
        return all(c.replay(self.family) for c in self.certificates)

    def to_json(self) -> dict:
        ce = None
        if self.counterexample is not None:
            ce = [sorted(str(g) for g in x) if isinstance(x, frozenset) else str(x) for x in self.counterexample]
        return {
            "family": self.family.label,
            "pairs": len(self.family),
            "mode": self.mode,
            "ok": self.ok,
            "certificates": [c.to_json(self.family) for c in self.certificates],
            "counterexample": ce,
        }


def _family_moves(family: ConjugationFamily):
    moves = []
    for idx, pair in enumerate(family.pairs):
        moves.append((idx, pair.group.element_set, pair.controller.generators))
    return moves


def _search(source, moves):
    """Breadth-first tree of family chains starting at ``source``."""
    parent = {source: None}
    queue = deque([source])
    while queue:
        cur = queue.popleft()
        for idx, hset, gens in moves:
            if not _inside(cur, hset):
                continue
            for t in gens:
                nxt = _act(cur, t)
                if nxt not in parent:
                    parent[nxt] = (cur, ChainStep(idx, t))
                    queue.append(nxt)
    return parent


def _path(parent, node) -> list[ChainStep]:
    steps = []
    while parent[node] is not None:
        node, st = parent[node]
        steps.append(st)
    steps.reverse()
    return steps


def _certify(source, target, moves, nsyl_elems) -> FusionCertificate | None:
    parent = _search(source, moves)
    for y in nsyl_elems:
        pre = _act(target, y.inverse())
        if pre in parent:
            steps = _path(parent, pre)
            if not y.is_identity():
                steps.append(ChainStep(-1, y))
            return FusionCertificate(source, target, steps)
    # generated equivalence relation: allow normalizer steps anywhere
    both = moves + [(-1, None, tuple(nsyl_elems))]
    parent = {source: None}
    queue = deque([source])
    while queue:
        cur = queue.popleft()
        if cur == target:
            return FusionCertificate(source, target, _path(parent, cur))
        for idx, hset, gens in both:
            if hset is not None and not _inside(cur, hset):
                continue
            for t in gens:
                nxt = _act(cur, t)
                if nxt not in parent:
                    parent[nxt] = (cur, ChainStep(idx, t))
                    queue.append(nxt)
    return None


def verify_element_fusion_family(G: PermutationGroup, p: int, family: ConjugationFamily,
                                 mode: Literal["elements", "subgroups"] = "elements",
                                 cap: int | None = None, normalizer_step: bool = True) -> FusionReport:
    """Check that ``family`` realises all ``G``-fusion inside its Sylow subgroup.

    In ``elements`` mode every ordered pair of distinct ``S``-class
    representatives that are ``G``-conjugate gets a certificate.  In
    ``subgroups`` mode the objects are the subgroups of ``S`` (as element
    sets) and every member of a ``G``-class inside ``S`` is reached from the
    first member.  The first failure is returned as a counterexample.
    With ``normalizer_step=False`` chains must consist of family moves only.
    """
    if family.ambient is not G and family.ambient != G:
        raise ValueError("family belongs to a different group")
    S = family.sylow
    nsyl_elems = normalizer(G, S).sorted_elements if normalizer_step else (G.identity,)
    moves = _family_moves(family)
    certs: list[FusionCertificate] = []

    if mode == "elements":
        gcc = conjugacy_classes(G)
        scc = conjugacy_classes(S)
        reps = scc.representatives
        for a in reps:
            partners = [b for b in reps if b != a and gcc.class_index[b] == gcc.class_index[a]]
            for b in partners:
                cert = _certify(a, b, moves, nsyl_elems)
                if cert is None:
                    return FusionReport(False, family, mode, certs, (a, b))
                certs.append(cert)
        return FusionReport(True, family, mode, certs)

    if mode != "subgroups":
        raise ValueError(f"unknown mode {mode!r}")
    cap = config.SUBGROUP_CAP if cap is None else cap
    cls = p_subgroup_classes(G, p, cap)
    if cls.sylow != S:
        raise ValueError("subgroup mode needs the family built on the default Sylow subgroup")
    for c in cls.classes:
        if len(c.members) < 2:
            continue
        first = c.members[0][0]
        for other, _ in c.members[1:]:
            cert = _certify(first, other, moves, nsyl_elems)
            if cert is None:
                return FusionReport(False, family, mode, certs, (first, other))
            certs.append(cert)
    return FusionReport(True, family, mode, certs)
