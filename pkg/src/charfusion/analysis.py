"""Hypothesis checks, rank-criterion verdicts and the lemma verifiers.

The verdict for a prime ``p`` comes from the ranks ``rk_p(N_G(P)/P)`` over
the principal ``p``-radical classes: maximum at most 2 gives a surjective
``alpha_p``, at most 1 a bijective one.  The verdict for ``G`` is the
conjunction over the primes dividing ``|G|``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from . import config
from .catalog import UnavailableGroup, abelian, central_product, direct_product, quaternion, resolve, u64, wreath_product
from .characters import Character, fusion_stable_characters
from .errors import CapExceeded, NotAPGroup, VerdictMismatch
from .group import PermutationGroup
from .perm import Permutation
from .structure import (
    center,
    centralizer,
    derived_subgroup,
    is_maximal_class,
    is_metacyclic,
    order_census,
    p_rank,
    prime_divisors,
    quotient_group,
    sylow_subgroup,
    two_step_centralizer,
)
from .subgroups import PSubgroupClass, p_subgroup_classes

__all__ = [
    "PrimeVerdict",
    "TheoremVerdict",
    "PsiCodomain",
    "LemmaReport",
    "ThomasMatch",
    "rank_hypothesis_report",
    "theorem_verdict",
    "hypothesis_class",
    "psi_codomain",
    "abelianization_order",
    "lemma_cent_check",
    "lemma_odd_check",
    "maximal_class_bound_check",
    "lemma_meta_check",
    "quaternion_case_check",
    "blackburn_index_check",
    "is_isomorphic",
    "thomas_membership",
    "LEMMA_CHECKS",
]


def _gens_json(H: PermutationGroup) -> list[str]:
    return [str(g) for g in H.generators]


def _log_p(n: int, p: int) -> int:
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


# -- rank criterion -------------------------------------------------------------


@dataclass
class PrimeVerdict:
    prime: int
    sylow_order: int
    classes: list[dict]
    max_rank_nq: int
    alpha_surjective: bool
    alpha_bijective: bool

    def to_json(self) -> dict:
        return {
            "p": self.prime,
            "sylow_order": self.sylow_order,
            "principal_p_radical_classes": self.classes,
            "max_rank_nq": self.max_rank_nq,
            "alpha_verdict": {"surjective": self.alpha_surjective, "bijective": self.alpha_bijective},
        }


def _rank_nq(c: PSubgroupClass, p: int) -> int:
    rec = c.record
    return p_rank(quotient_group(rec.normalizer, rec.subgroup), p)


def rank_hypothesis_report(G: PermutationGroup, p: int) -> PrimeVerdict:
    """``rk_p(N_G(P)/P)`` for each principal ``p``-radical class and the resulting verdict."""
    if G.order % p:
        raise ValueError(f"{p} does not divide |G| = {G.order}")
    cls = p_subgroup_classes(G, p)
    rows = []
    for c in cls.principal_p_radical():
        rows.append({
            "generators": _gens_json(c.subgroup),
            "order": c.order,
            "normalizer_index": c.record.normalizer_index,
            "rank_nq": _rank_nq(c, p),
        })
    top = max((r["rank_nq"] for r in rows), default=0)
    return PrimeVerdict(p, cls.sylow.order, rows, top, top <= 2, top <= 1)


HYPOTHESES = ("rank1", "odd-rank2", "rank2", "none")


def hypothesis_class(G: PermutationGroup) -> str:
    """Which of the three theorems' hypotheses ``G`` meets, by its largest ``p``-rank."""
    rk = max((p_rank(G, p) for p in prime_divisors(G.order)), default=0)
    if rk <= 1:
        return "rank1"
    if rk == 2:
        return "odd-rank2" if G.order % 2 else "rank2"
    return "none"


@dataclass
class TheoremVerdict:
    group: str
    order: int
    p_ranks: dict[int, int]
    per_prime: dict[int, PrimeVerdict]
    psi_surjective: bool
    psi_bijective: bool
    hypothesis_class: str

    def expected(self) -> str | None:
        """The conclusion the applicable theorem promises."""
        return {"rank1": "bijective", "odd-rank2": "bijective", "rank2": "surjective"}.get(self.hypothesis_class)

    def consistent(self) -> bool:
        want = self.expected()
        if want == "bijective":
            return self.psi_bijective
        if want == "surjective":
            return self.psi_surjective
        return True

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "p_ranks": {str(p): r for p, r in sorted(self.p_ranks.items())},
            "per_prime": {str(p): v.to_json() for p, v in sorted(self.per_prime.items())},
            "psi_surjective": self.psi_surjective,
            "psi_bijective": self.psi_bijective,
            "hypothesis_class": self.hypothesis_class,
        }


def theorem_verdict(G: PermutationGroup, label: str = "G") -> TheoremVerdict:
    """Per-prime rank verdicts, combined, and cross-checked against the applicable theorem.

    Raises VerdictMismatch if a theorem's hypothesis holds but the rank
    criterion gives less than its conclusion.
    """
    primes = prime_divisors(G.order)
    per = {p: rank_hypothesis_report(G, p) for p in primes}
    ranks = {p: p_rank(G, p) for p in primes}
    v = TheoremVerdict(
        group=label,
        order=G.order,
        p_ranks=ranks,
        per_prime=per,
        psi_surjective=all(x.alpha_surjective for x in per.values()),
        psi_bijective=all(x.alpha_bijective for x in per.values()),
        hypothesis_class=hypothesis_class(G),
    )
    if v.psi_bijective and not v.psi_surjective:
        raise VerdictMismatch("bijective verdict without surjectivity")
    if not v.consistent():
        detail = {p: x.max_rank_nq for p, x in per.items()}
        raise VerdictMismatch(
            f"{label}: hypothesis {v.hypothesis_class} promises {v.expected()} "
            f"but max rk_p(N/P) per prime is {detail}")
    return v


# -- the codomain of psi --------------------------------------------------------


@dataclass
class PsiCodomain:
    degree: int
    per_prime: dict[int, list[Character]] = field(repr=False)

    @property
    def counts(self) -> dict[int, int]:
        return {p: len(v) for p, v in self.per_prime.items()}

    @property
    def product_size(self) -> int:
        return prod(self.counts.values())

    def to_json(self, with_characters: bool = False) -> dict:
        out = {
            "n": self.degree,
            "counts": {str(p): c for p, c in sorted(self.counts.items())},
            "product_size": self.product_size,
        }
        if with_characters:
            out["characters"] = {str(p): [list(chi.multiplicities) for chi in v]
                                 for p, v in sorted(self.per_prime.items())}
        return out


def psi_codomain(G: PermutationGroup, n: int, cap: int | None = None) -> PsiCodomain:
    """The fusion-stable degree-``n`` characters of each Sylow subgroup."""
    if n < 1:
        raise ValueError("degree must be positive")
    per = {p: fusion_stable_characters(G, p, n, cap=cap) for p in prime_divisors(G.order)}
    return PsiCodomain(n, per)


def abelianization_order(G: PermutationGroup) -> int:
    """``|G/[G,G]|``, which equals the number of homomorphisms ``G -> U(1)``."""
    return G.order // derived_subgroup(G).order


# -- lemma checks ---------------------------------------------------------------


@dataclass
class LemmaReport:
    name: str
    prime: int | None
    applicable: bool
    ok: bool | None
    reason: str = ""
    rows: list[dict] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)

    @property
    def status(self) -> str:
        if not self.applicable:
            return "not applicable"
        return "pass" if self.ok else "fail"

    def to_json(self) -> dict:
        return {
            "lemma": self.name,
            "prime": self.prime,
            "status": self.status,
            "reason": self.reason,
            "rows": self.rows,
            "failures": self.failures,
        }


def _not_applicable(name: str, p: int | None, why: str) -> LemmaReport:
    return LemmaReport(name, p, False, None, why)


def _finish(name: str, p: int | None, rows: list[dict], bad: list[dict], reason: str = "") -> LemmaReport:
    return LemmaReport(name, p, True, not bad, reason, rows, bad)


def lemma_cent_check(G: PermutationGroup, p: int) -> LemmaReport:
    """``p^m`` never divides ``[N_G(P):P]`` for a ``p``-centric ``P``, ``p^m = [S:Z(S)]``.

    For abelian ``S`` (``m = 0``) the divisibility statement is empty and the
    check is that the only ``p``-centric subgroups are the Sylows.
    """
    name = "cent"
    if G.order % p:
        return _not_applicable(name, p, f"{p} does not divide |G|")
    cls = p_subgroup_classes(G, p)
    S = cls.sylow
    pm = S.order // center(S).order
    rows, bad = [], []
    for c in cls.p_centric():
        idx = c.record.normalizer_index
        row = {"generators": _gens_json(c.subgroup), "order": c.order, "normalizer_index": idx}
        rows.append(row)
        if pm == 1:
            if c.order != S.order:
                bad.append(row)
        elif idx % pm == 0:
            bad.append(row)
    how = "abelian Sylow: only Sylows are p-centric" if pm == 1 else f"p^m = {pm}"
    return _finish(name, p, rows, bad, how)


def lemma_odd_check(G: PermutationGroup, p: int) -> LemmaReport:
    """In a group of odd order, a principal ``p``-radical ``P`` of rank at most 2 is Sylow."""
    name = "odd"
    if G.order % 2 == 0:
        return _not_applicable(name, p, "|G| is even")
    if G.order % p:
        return _not_applicable(name, p, f"{p} does not divide |G|")
    cls = p_subgroup_classes(G, p)
    rows, bad = [], []
    for c in cls.principal_p_radical():
        rk = p_rank(c.subgroup, p)
        if rk > 2:
            continue
        row = {"generators": _gens_json(c.subgroup), "order": c.order, "rank": rk}
        rows.append(row)
        if c.order != cls.sylow.order:
            bad.append(row)
    return _finish(name, p, rows, bad)


def maximal_class_bound_check(G3: PermutationGroup) -> LemmaReport:
    """In a 3-group of maximal class and order at least ``3^5``, ``[N(P):P] <= 9`` for 3-centric ``P``.

    The group itself is the ambient group.
    """
    name = "maxclass"
    if G3.order == 1 or not G3.is_p_group(3):
        return _not_applicable(name, 3, "not a 3-group")
    if G3.order < 3 ** 5:
        return _not_applicable(name, 3, "order below 3^5")
    if not is_maximal_class(G3, 3):
        return _not_applicable(name, 3, "not of maximal class")
    C1 = two_step_centralizer(G3)
    cls = p_subgroup_classes(G3, 3)
    c1set = C1.element_set
    rows, bad = [], []
    for c in cls.p_centric():
        idx = c.record.normalizer_index
        inside = all(g in c1set for g in c.subgroup.generators)
        row = {"generators": _gens_json(c.subgroup), "order": c.order,
               "normalizer_index": idx, "inside_c1": inside}
        rows.append(row)
        if idx > 9:
            bad.append(row)
    return _finish(name, 3, rows, bad, f"|C1| = {C1.order}, C1 abelian: {C1.is_abelian}")


def lemma_meta_check(G: PermutationGroup, p: int) -> LemmaReport:
    """For odd ``p`` and a metacyclic Sylow of order above ``p^3``, the only principal ``p``-radical class is the Sylow."""
    name = "meta"
    if p == 2:
        return _not_applicable(name, p, "p = 2")
    if G.order % p:
        return _not_applicable(name, p, f"{p} does not divide |G|")
    S = sylow_subgroup(G, p)
    if S.order <= p ** 3:
        return _not_applicable(name, p, "|S| <= p^3")
    if not is_metacyclic(S):
        return _not_applicable(name, p, "Sylow subgroup not metacyclic")
    cls = p_subgroup_classes(G, p)
    rows, bad = [], []
    for c in cls.principal_p_radical():
        row = {"generators": _gens_json(c.subgroup), "order": c.order}
        rows.append(row)
        if c.order != S.order:
            bad.append(row)
    return _finish(name, p, rows, bad)


def _is_generalized_quaternion(S: PermutationGroup) -> bool:
    # a non-cyclic 2-group with a unique involution
    census = order_census(S)
    return S.order >= 8 and S.is_p_group(2) and census.get(2, 0) == 1 and census.get(S.order, 0) == 0


def quaternion_case_check(G: PermutationGroup) -> LemmaReport:
    """With a generalized quaternion Sylow 2-subgroup, 4 never divides ``[N_G(P):P]`` for 2-centric ``P``."""
    name = "quaternion"
    if G.order % 2:
        return _not_applicable(name, 2, "|G| is odd")
    S = sylow_subgroup(G, 2)
    if not _is_generalized_quaternion(S):
        return _not_applicable(name, 2, "Sylow 2-subgroup not generalized quaternion")
    cls = p_subgroup_classes(G, 2)
    rows, bad = [], []
    for c in cls.p_centric():
        idx = c.record.normalizer_index
        row = {"generators": _gens_json(c.subgroup), "order": c.order, "normalizer_index": idx}
        rows.append(row)
        if idx % 4 == 0:
            bad.append(row)
    return _finish(name, 2, rows, bad)


def blackburn_index_check(G: PermutationGroup, p: int) -> LemmaReport:
    """``[S:Z(S)] <= p^3``, which by the centric lemma bounds every ``[N(P):P]`` by ``p^2``."""
    name = "blackburn"
    if G.order % p:
        return _not_applicable(name, p, f"{p} does not divide |G|")
    S = sylow_subgroup(G, p)
    Z = center(S)
    idx = S.order // Z.order
    row = {"sylow_order": S.order, "center_order": Z.order, "index": idx}
    return _finish(name, p, [row], [] if idx <= p ** 3 else [row])


# name -> (callable, takes a prime)
LEMMA_CHECKS = {
    "cent": (lemma_cent_check, True),
    "odd": (lemma_odd_check, True),
    "maxclass": (maximal_class_bound_check, False),
    "meta": (lemma_meta_check, True),
    "quaternion": (quaternion_case_check, False),
    "blackburn": (blackburn_index_check, True),
}


# -- isomorphism and the Thomas list --------------------------------------------


def _orders(G: PermutationGroup) -> dict[Permutation, int]:
    return G.memo("element_orders", lambda: {g: g.order() for g in G.sorted_elements})


def _signature(G: PermutationGroup, g: Permutation) -> tuple[int, int]:
    # isomorphism-invariant data of an element: order and centralizer order
    return _orders(G)[g], centralizer(G, [g]).order


def _invariants(G: PermutationGroup) -> tuple:
    def compute():
        return (
            G.order,
            tuple(sorted(order_census(G).items())),
            center(G).order,
            derived_subgroup(G).order,
        )
    return G.memo("iso_invariants", compute)


def _greedy_generators(G: PermutationGroup) -> list[Permutation]:
    orders = _orders(G)
    gens: list[Permutation] = []
    H = PermutationGroup.trivial(G.degree)
    for g in sorted(G.sorted_elements, key=lambda x: (-orders[x], x)):
        if H.order == G.order:
            break
        if g not in H:
            gens.append(g)
            H = H.join(g)
    return gens


def _extend(gens: list[Permutation], images: list[Permutation], identity, target_identity) -> dict | None:
    """The homomorphism on ``<gens>`` sending ``gens[i] -> images[i]``, if consistent and injective."""
    phi = {identity: target_identity}
    queue = [identity]
    for x in queue:
        fx = phi[x]
        for a, b in zip(gens, images):
            y = x * a
            fy = fx * b
            seen = phi.get(y)
            if seen is None:
                phi[y] = fy
                queue.append(y)
            elif seen != fy:
                return None
    if len(set(phi.values())) != len(phi):
        return None
    return phi


def is_isomorphic(A: PermutationGroup, B: PermutationGroup, cap: int | None = None) -> bool:
    """Brute-force isomorphism test: invariant pruning, then a generator-image backtrack."""
    cap = config.ISOMORPHISM_ORDER_CAP if cap is None else cap
    if max(A.order, B.order) > cap:
        raise CapExceeded("isomorphism test order", max(A.order, B.order), cap)
    if _invariants(A) != _invariants(B):
        return False
    gens = _greedy_generators(A)
    by_sig: dict[tuple, list[Permutation]] = {}
    for b in B.sorted_elements:
        by_sig.setdefault(_signature(B, b), []).append(b)
    cands = []
    for a in gens:
        pool = by_sig.get(_signature(A, a), [])
        if a in pool:
            # try the literal element first: cheap success for identical constructions
            pool = [a] + [b for b in pool if b != a]
        cands.append(pool)
    if any(not c for c in cands):
        return False
    idA, idB = A.identity, B.identity

    def search(k: int, chosen: list[Permutation]) -> bool:
        if k == len(gens):
            return True
        for b in cands[k]:
            phi = _extend(gens[: k + 1], chosen + [b], idA, idB)
            if phi is not None and search(k + 1, chosen + [b]):
                return True
        return False

    return search(0, [])


@dataclass(frozen=True)
class ThomasMatch:
    item: int
    name: str

    def to_json(self) -> dict:
        return {"item": self.item, "name": self.name}


def _thomas_candidates(order: int) -> list[tuple[int, str, PermutationGroup]]:
    Q8 = quaternion()
    out = []
    if order == 32:
        out.append((1, "Q8*D8", resolve("Q8*D8")))
    if order == 64:
        out.append((2, "Q8xQ8", direct_product(Q8, Q8)))
    if order == 128:
        out.append((3, "Q8wrZ2", wreath_product(Q8, 2)))
    for c_name in config.THOMAS_ITEM4_C:
        C = resolve(c_name)
        if Q8.order * C.order // 2 == order:
            out.append((4, f"Q8*{c_name}", central_product(Q8, C)))
    r = _log_p(order, 2) // 2
    if r >= 1 and 4 ** r == order:
        out.append((5, f"Z{2 ** r}xZ{2 ** r}", abelian(2 ** r, 2 ** r)))
    if order == 64:
        try:
            out.append((6, "U64", u64()))
        except UnavailableGroup:
            pass
    return out


def thomas_membership(P: PermutationGroup, cap: int | None = None) -> list[ThomasMatch]:
    """The items of the 2-group list that ``P`` is isomorphic to (empty if none)."""
    if P.order == 1 or not P.is_p_group(2):
        raise NotAPGroup("thomas_membership expects a nontrivial 2-group")
    cap = config.ISOMORPHISM_ORDER_CAP if cap is None else cap
    if P.order > cap:
        raise CapExceeded("isomorphism test order", P.order, cap)
    return [ThomasMatch(item, name) for item, name, H in _thomas_candidates(P.order)
            if is_isomorphic(P, H, cap)]
