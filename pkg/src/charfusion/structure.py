"""Structural computations on permutation groups.

Subgroups defined by an element predicate (centralizers, normalizers,
intersections) are found by :func:`subgroup_search`, which walks the group in
lexicographic order, grows the answer ``K`` one generator at a time, and
discards whole cosets ``Kg`` and ``gK`` of every rejected element.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import config
from .errors import CapExceeded, NotAPGroup, NotASubgroup, NotNormal
from .group import PermutationGroup
from .perm import Permutation

__all__ = [
    "ConjugacyClasses",
    "conjugacy_classes",
    "subgroup_search",
    "centralizer",
    "normalizer",
    "intersection",
    "center",
    "commutator",
    "normal_closure",
    "derived_subgroup",
    "lower_central_series",
    "nilpotency_class",
    "sylow_subgroup",
    "QuotientMap",
    "quotient",
    "quotient_group",
    "core",
    "p_core",
    "o_pprime",
    "o_pprime_p",
    "p_rank",
    "p_part",
    "is_normal",
    "is_p_centric",
    "is_p_radical",
    "is_principal_p_radical",
    "is_metacyclic",
    "is_maximal_class",
    "two_step_centralizer",
    "is_elementary_abelian",
    "right_transversal",
    "subgroup_conjugator",
    "order_census",
    "prime_divisors",
]


def _check_cap(G: PermutationGroup, cap: int | None = None) -> None:
    cap = config.ENUMERATION_CAP if cap is None else cap
    if G.order > cap:
        raise CapExceeded("group order", G.order, cap)


def prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def order_census(G: PermutationGroup) -> Counter:
    """Multiset of element orders."""
    return Counter(g.order() for g in G.element_set)


# -- conjugacy classes -------------------------------------------------------


@dataclass
class ConjugacyClasses:
    """Classes of ``group`` ordered by their lex-minimal representatives.

    ``transversals[i][x]`` is an element ``t`` with ``representatives[i] ^ t == x``.
    The identity class is always class 0.
    """

    group: PermutationGroup
    representatives: list[Permutation]
    sizes: list[int]
    class_index: dict[Permutation, int] = field(repr=False)
    transversals: list[dict[Permutation, Permutation]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.representatives)

    def index(self, g: Permutation) -> int:
        return self.class_index[g]

    def members(self, i: int) -> Iterable[Permutation]:
        return self.transversals[i].keys()

    def conjugator(self, a: Permutation, b: Permutation) -> Permutation | None:
        """Some ``g`` in the group with ``a ^ g == b``, or None."""
        i = self.class_index[a]
        if self.class_index[b] != i:
            return None
        t = self.transversals[i]
        return t[a].inverse() * t[b]

    @property
    def orders(self) -> list[int]:
        return [r.order() for r in self.representatives]


def conjugacy_classes(G: PermutationGroup, cap: int | None = None) -> ConjugacyClasses:
    _check_cap(G, cap)

    def compute() -> ConjugacyClasses:
        gens = G.generators
        index: dict[Permutation, int] = {}
        reps, sizes, transversals = [], [], []
        for g in G.sorted_elements:
            if g in index:
                continue
            k = len(reps)
            trans = {g: G.identity}
            queue = [g]
            index[g] = k
            for y in queue:
                ty = trans[y]
                for s in gens:
                    z = y ^ s
                    if z not in trans:
                        trans[z] = ty * s
                        index[z] = k
                        queue.append(z)
            reps.append(g)
            sizes.append(len(trans))
            transversals.append(trans)
        return ConjugacyClasses(G, reps, sizes, index, transversals)

    return G.memo("conjugacy_classes", compute)


# -- predicate subgroups -----------------------------------------------------


def subgroup_search(G: PermutationGroup, predicate: Callable[[Permutation], bool],
                    start: PermutationGroup | None = None) -> PermutationGroup:
    """Largest subgroup of ``G`` whose elements all satisfy ``predicate``.

    ``predicate`` must cut out a subgroup, and ``start`` (if given) must lie
    inside it.  Rejection of ``g`` rules out ``Kg`` and ``gK`` for the current
    partial answer ``K``.
    """
    _check_cap(G)
    K = start if start is not None else PermutationGroup.trivial(G.degree)
    kset = K.element_set
    rejected: set[Permutation] = set()
    for g in G.sorted_elements:
        if g in kset or g in rejected:
            continue
        if predicate(g):
            K = K.join(g)
            kset = K.element_set
            if K.order == G.order:
                break
        else:
            for k in kset:
                rejected.add(k * g)
                rejected.add(g * k)
    return K


def _require_subset(G: PermutationGroup, elems: Iterable[Permutation], what: str) -> None:
    for s in elems:
        if not G.contains(s):
            raise NotASubgroup(f"{what} {s} is not an element of the ambient group")


def centralizer(G: PermutationGroup, S: Iterable[Permutation] | PermutationGroup) -> PermutationGroup:
    """``{g in G : gs = sg for all s in S}``."""
    gens = list(S.generators) if isinstance(S, PermutationGroup) else list(S)
    _require_subset(G, gens, "element")
    if not gens:
        return G
    return subgroup_search(G, lambda g: all(g * s == s * g for s in gens))


def normalizer(G: PermutationGroup, H: PermutationGroup) -> PermutationGroup:
    """``{g in G : g^-1 H g = H}``."""
    _require_subset(G, H.generators, "subgroup generator")
    hset = H.element_set
    gens = H.generators
    if all(h ^ g in hset for h in gens for g in G.generators):
        return G
    return subgroup_search(G, lambda g: all(h ^ g in hset for h in gens), start=H)


def intersection(A: PermutationGroup, B: PermutationGroup) -> PermutationGroup:
    if A.order > B.order:
        A, B = B, A
    if A.is_subgroup_of(B):
        return A
    bset = B.element_set
    return subgroup_search(A, lambda g: g in bset)


def is_normal(G: PermutationGroup, N: PermutationGroup) -> bool:
    return N.is_subgroup_of(G) and all(n ^ g in N for n in N.generators for g in G.generators)


def center(G: PermutationGroup) -> PermutationGroup:
    return G.memo("center", lambda: centralizer(G, G.generators))


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """``[a, b] = a^-1 b^-1 a b``."""
    return a.inverse() * b.inverse() * a * b


def normal_closure(G: PermutationGroup, S: Iterable[Permutation]) -> PermutationGroup:
    N = PermutationGroup(list(S), G.degree)
    changed = True
    while changed:
        changed = False
        for n in N.generators:
            for g in G.generators:
                c = n ^ g
                if not N.contains(c):
                    N = N.join(c)
                    changed = True
    return N


def commutator_subgroup(A: PermutationGroup, B: PermutationGroup, G: PermutationGroup) -> PermutationGroup:
    """``[A, B]`` for ``A``, ``B`` normal in ``G = <A, B>`` (or ``B = G``)."""
    return normal_closure(G, [commutator(a, b) for a in A.generators for b in B.generators])


def derived_subgroup(G: PermutationGroup) -> PermutationGroup:
    return G.memo("derived", lambda: commutator_subgroup(G, G, G))


def lower_central_series(G: PermutationGroup) -> list[PermutationGroup]:
    """``[G, [G,G], [[G,G],G], ...]`` up to the first repeated term."""
    def compute():
        series = [G]
        while True:
            nxt = commutator_subgroup(series[-1], G, G)
            if nxt.order == series[-1].order:
                return series
            series.append(nxt)
    return G.memo("lower_central_series", compute)


def nilpotency_class(G: PermutationGroup) -> int | None:
    """Class of a nilpotent group, None if the series stalls above 1."""
    series = lower_central_series(G)
    if series[-1].order != 1:
        return None
    return len(series) - 1


# -- Sylow subgroups and quotients -------------------------------------------


def sylow_subgroup(G: PermutationGroup, p: int) -> PermutationGroup:
    """A Sylow ``p``-subgroup, trivial when ``p`` does not divide ``|G|``.

    Grown from the lex-least element of order ``p`` by repeatedly adjoining
    the lex-least element of ``N_G(P)`` that has order ``p`` modulo ``P``.
    """
    def compute():
        target = p_part(G.order, p)
        if target == 1:
            return PermutationGroup.trivial(G.degree)
        if target == G.order:
            return G
        P = PermutationGroup.trivial(G.degree)
        while P.order < target:
            N = normalizer(G, P)
            pset = P.element_set
            for x in N.sorted_elements:
                if x not in pset and (x ** p) in pset:
                    P = P.join(x)
                    break
            else:
                raise AssertionError("no p-element in N_G(P)/P although p divides its order")
        return P
    return G.memo(("sylow", p), compute)


def right_transversal(G: PermutationGroup, H: PermutationGroup) -> list[Permutation]:
    """Lex-minimal representatives of the right cosets ``Hg``."""
    hset = H.element_set
    covered: set[Permutation] = set()
    reps = []
    for g in G.sorted_elements:
        if g in covered:
            continue
        reps.append(g)
        covered.update(h * g for h in hset)
    return reps


@dataclass
class QuotientMap:
    """The regular action of ``G/N`` on the right cosets of ``N``.

    Coset 0 is ``N`` itself; ``reps[i]`` is the lex-least element of coset
    ``i``.
    """

    source: PermutationGroup
    kernel: PermutationGroup
    group: PermutationGroup
    reps: list[Permutation]
    coset_of: dict[Permutation, int] = field(repr=False)

    def image(self, g: Permutation) -> Permutation:
        coset_of = self.coset_of
        return Permutation(coset_of[r * g] for r in self.reps)

    def lift(self, x: Permutation) -> Permutation:
        return self.reps[x[0]]

    def preimage(self, K: PermutationGroup) -> PermutationGroup:
        gens = list(self.kernel.generators) + [self.lift(x) for x in K.generators]
        return PermutationGroup(gens, self.source.degree)


def quotient(G: PermutationGroup, N: PermutationGroup) -> QuotientMap:
    if not is_normal(G, N):
        raise NotNormal("quotient requires a normal subgroup")
    nset = N.element_set
    coset_of: dict[Permutation, int] = {}
    reps: list[Permutation] = []
    for g in G.sorted_elements:
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for n in nset:
            coset_of[n * g] = idx
    m = len(reps)
    gens = [Permutation(coset_of[r * s] for r in reps) for s in G.generators]
    return QuotientMap(G, N, PermutationGroup(gens, m), reps, coset_of)


def quotient_group(G: PermutationGroup, N: PermutationGroup) -> PermutationGroup:
    return quotient(G, N).group


# -- cores ---------------------------------------------------------------------


def core(G: PermutationGroup, H: PermutationGroup) -> PermutationGroup:
    """Largest normal subgroup of ``G`` contained in ``H``."""
    K = H
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            if all(k ^ g in K for k in K.generators):
                continue
            K = intersection(K, K.conjugate(g))
            changed = True
    return K


def p_core(G: PermutationGroup, p: int) -> PermutationGroup:
    """``O_p(G)``, the intersection of the Sylow ``p``-subgroups."""
    return G.memo(("O_p", p), lambda: core(G, sylow_subgroup(G, p)))


def o_pprime(G: PermutationGroup, p: int) -> PermutationGroup:
    """``O_{p'}(G)``, the largest normal subgroup of order prime to ``p``."""
    def compute():
        if G.order % p:
            return G
        cc = conjugacy_classes(G)
        gens: list[Permutation] = []
        for x in cc.representatives:
            if x.order() % p == 0 or x.is_identity():
                continue
            if gens and PermutationGroup(gens, G.degree).contains(x):
                continue
            closure = normal_closure(G, [x])
            if closure.order % p:
                gens.extend(closure.generators)
        return PermutationGroup(gens, G.degree)
    return G.memo(("O_p'", p), compute)


def o_pprime_p(G: PermutationGroup, p: int) -> PermutationGroup:
    """``O_{p',p}(G)``: preimage of ``O_p(G/O_{p'}(G))``."""
    def compute():
        q = quotient(G, o_pprime(G, p))
        return q.preimage(p_core(q.group, p))
    return G.memo(("O_p'p", p), compute)


# -- p-rank and classification predicates --------------------------------------


def p_rank(G: PermutationGroup, p: int) -> int:
    """Largest ``r`` with ``(Z/p)^r`` embedded in ``G``.

    Exhaustive over elementary abelian subgroups of one Sylow subgroup,
    which meets every conjugacy class of them.
    """
    def compute():
        P = sylow_subgroup(G, p)
        if P.order == 1:
            return 0
        ident = P.identity
        order_p = [x for x in P.sorted_elements if not x.is_identity() and (x ** p) == ident]
        seen: set[frozenset] = set()
        best = 0
        limit = 0
        while p ** (limit + 1) <= P.order:
            limit += 1

        def extend(E: frozenset, gens: list[Permutation], r: int) -> None:
            nonlocal best
            best = max(best, r)
            if best == limit:
                return
            for x in order_p:
                if x in E or any(x * g != g * x for g in gens):
                    continue
                powers = [ident]
                for _ in range(p - 1):
                    powers.append(powers[-1] * x)
                bigger = frozenset(e * y for e in E for y in powers)
                if bigger in seen:
                    continue
                seen.add(bigger)
                extend(bigger, gens + [x], r + 1)
                if best == limit:
                    return

        extend(frozenset([ident]), [], 0)
        return best
    return G.memo(("p_rank", p), compute)


def _require_p_group(P: PermutationGroup, p: int) -> None:
    if not P.is_p_group(p):
        raise NotAPGroup(f"subgroup of order {P.order} is not a {p}-group")


def is_p_centric(G: PermutationGroup, P: PermutationGroup, p: int) -> bool:
    """``Z(P)`` is a Sylow ``p``-subgroup of ``C_G(P)``."""
    _require_p_group(P, p)
    C = centralizer(G, P.generators)
    return (C.order // center(P).order) % p != 0


def is_p_radical(G: PermutationGroup, P: PermutationGroup, p: int) -> bool:
    """``O_p(N_G(P)/P) = 1``."""
    _require_p_group(P, p)
    N = normalizer(G, P)
    return p_core(quotient_group(N, P), p).order == 1


def is_principal_p_radical(G: PermutationGroup, P: PermutationGroup, p: int) -> bool:
    """``P`` is ``p``-centric and ``O_p(N_G(P)/P C_G(P)) = 1``."""
    if not is_p_centric(G, P, p):
        return False
    N = normalizer(G, P)
    C = centralizer(G, P.generators)
    PC = P.join(*C.generators)
    return p_core(quotient_group(N, PC), p).order == 1


def is_elementary_abelian(P: PermutationGroup, p: int) -> bool:
    _require_p_group(P, p)
    return P.is_abelian and all((g ** p).is_identity() for g in P.generators)


def is_maximal_class(P: PermutationGroup, p: int) -> bool:
    """Nilpotency class ``n - 1`` for ``|P| = p^n``; for ``n <= 2`` class ``max(1, n-1)``."""
    _require_p_group(P, p)
    n = 0
    m = P.order
    while m > 1:
        m //= p
        n += 1
    cls = nilpotency_class(P)
    if n <= 2:
        return cls == max(1, n - 1)
    return cls == n - 1


def two_step_centralizer(P: PermutationGroup) -> PermutationGroup:
    """``C_1`` with ``C_1/C_4 = C_{P/C_4}(C_2/C_4)``, indexing the lower central series from ``C_1 = P``.

    Only meaningful for groups of maximal class of order at least ``p^4``.
    """
    series = lower_central_series(P)
    if len(series) < 4:
        raise ValueError("lower central series too short")
    # series[0] = P, series[1] = C_2, series[2] = C_3, series[3] = C_4
    q = quotient(P, series[3])
    Q = q.group
    C = centralizer(Q, [q.image(x) for x in series[1].generators])
    return q.preimage(C)


def is_metacyclic(P: PermutationGroup) -> bool:
    """Some cyclic normal subgroup has cyclic quotient (exhaustive search)."""
    elems = P.sorted_elements
    cyclic: dict[frozenset, Permutation] = {}
    for x in elems:
        powers = [P.identity]
        y = x
        while not y.is_identity():
            powers.append(y)
            y = y * x
        key = frozenset(powers)
        cyclic.setdefault(key, x)
    for cyc, x in sorted(cyclic.items(), key=lambda kv: (-len(kv[0]), kv[1])):
        if not all(x ^ g in cyc for g in P.generators):
            continue
        m = P.order // len(cyc)
        if m == 1:
            return True
        for y in elems:
            z, k = y, 1
            while z not in cyc:
                z = z * y
                k += 1
            if k == m:
                return True
    return False


def subgroup_conjugator(G: PermutationGroup, A: PermutationGroup, B: PermutationGroup) -> Permutation | None:
    """Some ``g`` with ``A ^ g == B``, or None.

    Invariants (order, element-order census) prune first; otherwise every
    right coset representative of ``N_G(A)`` is tried.
    """
    if A.order != B.order:
        return None
    if order_census(A) != order_census(B):
        return None
    bset = B.element_set
    for g in right_transversal(G, normalizer(G, A)):
        if all(a ^ g in bset for a in A.generators):
            return g
    return None
