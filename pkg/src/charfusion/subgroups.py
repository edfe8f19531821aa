"""p-subgroups up to conjugacy, with cached classification flags."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import cached_property

from . import config
from .errors import CapExceeded
from .group import PermutationGroup
from .perm import Permutation
from .structure import (
    center,
    centralizer,
    normalizer,
    p_core,
    p_part,
    quotient_group,
    right_transversal,
    sylow_subgroup,
)

__all__ = [
    "SubgroupRecord",
    "PSubgroupClass",
    "PSubgroupClassification",
    "p_subgroup_classes",
    "subgroups_of_p_group",
]

FLAGS = ("p_centric", "p_radical", "principal_p_radical")


class SubgroupRecord:
    """A subgroup of ``ambient`` with lazily cached normalizer, centralizer and flags.

    Flags are tri-state: :meth:`flag_state` returns None until computed, and
    each flag is computed at most once under the record's lock.
    """

    def __init__(self, subgroup: PermutationGroup, ambient: PermutationGroup):
        self.subgroup = subgroup
        self.ambient = ambient
        self._flags: dict[tuple[str, int], bool] = {}
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        return f"<SubgroupRecord order={self.subgroup.order} in order {self.ambient.order}>"

    @cached_property
    def normalizer(self) -> PermutationGroup:
        return normalizer(self.ambient, self.subgroup)

    @cached_property
    def centralizer(self) -> PermutationGroup:
        return centralizer(self.ambient, self.subgroup.generators)

    @property
    def order(self) -> int:
        return self.subgroup.order

    @property
    def normalizer_index(self) -> int:
        return self.normalizer.order // self.subgroup.order

    def flag_state(self, name: str, p: int) -> bool | None:
        return self._flags.get((name, p))

    def flag(self, name: str, p: int) -> bool:
        if name not in FLAGS:
            raise KeyError(name)
        with self._lock:
            key = (name, p)
            if key not in self._flags:
                self._flags[key] = getattr(self, "_compute_" + name)(p)
            return self._flags[key]

    def is_p_centric(self, p: int) -> bool:
        return self.flag("p_centric", p)

    def is_p_radical(self, p: int) -> bool:
        return self.flag("p_radical", p)

    def is_principal_p_radical(self, p: int) -> bool:
        return self.flag("principal_p_radical", p)

    def _compute_p_centric(self, p: int) -> bool:
        return (self.centralizer.order // center(self.subgroup).order) % p != 0

    def _compute_p_radical(self, p: int) -> bool:
        return p_core(quotient_group(self.normalizer, self.subgroup), p).order == 1

    def _compute_principal_p_radical(self, p: int) -> bool:
        if not self.is_p_centric(p):
            return False
        pc = self.subgroup.join(*self.centralizer.generators)
        return p_core(quotient_group(self.normalizer, pc), p).order == 1


def subgroups_of_p_group(P: PermutationGroup, p: int,
                         cap: int | None = None) -> dict[frozenset, tuple[Permutation, ...]]:
    """Every subgroup of the ``p``-group ``P``, mapped to a generating tuple.

    Built layer by layer: each subgroup of order ``p^(k+1)`` is ``<Q, x>``
    for a subgroup ``Q`` of index ``p`` normalised by ``x``.  Insertion order
    is deterministic (by order, then discovery).
    """
    cap = config.SUBGROUP_CAP if cap is None else cap
    ident = P.identity
    elems = P.sorted_elements
    pth = {x: x ** p for x in elems}
    trivial = frozenset([ident])
    found: dict[frozenset, tuple[Permutation, ...]] = {trivial: ()}
    layer = [trivial]
    while layer:
        nxt: list[frozenset] = []
        for Q in layer:
            gens = found[Q]
            covered: set[Permutation] = set(Q)
            for x in elems:
                if x in covered or pth[x] not in Q:
                    continue
                if not all(q ^ x in Q for q in gens):
                    continue
                powers = [ident]
                for _ in range(p - 1):
                    powers.append(powers[-1] * x)
                R = frozenset(q * y for q in Q for y in powers)
                covered |= R
                if R not in found:
                    found[R] = gens + (x,)
                    nxt.append(R)
                    if len(found) > cap:
                        raise CapExceeded("number of p-subgroups", len(found), cap)
        layer = nxt
    return found


@dataclass
class PSubgroupClass:
    """One ``G``-class of ``p``-subgroups.

    ``members`` lists every class member inside the fixed Sylow subgroup as
    ``(element set, g)`` with ``representative ^ g == member``.
    """

    record: SubgroupRecord
    size: int
    members: list[tuple[frozenset, Permutation]] = field(repr=False)

    @property
    def subgroup(self) -> PermutationGroup:
        return self.record.subgroup

    @property
    def order(self) -> int:
        return self.record.subgroup.order

    def member_group(self, i: int) -> PermutationGroup:
        _, g = self.members[i]
        return self.record.subgroup.conjugate(g)

    def member_normalizer(self, i: int) -> PermutationGroup:
        _, g = self.members[i]
        return self.record.normalizer.conjugate(g)


@dataclass
class PSubgroupClassification:
    ambient: PermutationGroup
    prime: int
    sylow: PermutationGroup
    classes: list[PSubgroupClass]

    @property
    def class_reps(self) -> list[SubgroupRecord]:
        return [c.record for c in self.classes]

    @property
    def counts(self) -> list[int]:
        return [c.size for c in self.classes]

    def sylow_class(self) -> PSubgroupClass:
        return max(self.classes, key=lambda c: c.order)

    def with_flag(self, name: str) -> list[PSubgroupClass]:
        return [c for c in self.classes if c.record.flag(name, self.prime)]

    def principal_p_radical(self) -> list[PSubgroupClass]:
        return self.with_flag("principal_p_radical")

    def p_centric(self) -> list[PSubgroupClass]:
        return self.with_flag("p_centric")


def p_subgroup_classes(G: PermutationGroup, p: int, cap: int | None = None) -> PSubgroupClassification:
    """Representatives, inside one Sylow subgroup, of every class of ``p``-subgroups.

    The trivial subgroup is included.  When ``p`` does not divide ``|G|`` the
    classification is empty.
    """
    def compute():
        S = sylow_subgroup(G, p)
        if p_part(G.order, p) == 1:
            return PSubgroupClassification(G, p, S, [])
        subs = subgroups_of_p_group(S, p, cap)
        sset = S.element_set
        assigned: set[frozenset] = set()
        classes: list[PSubgroupClass] = []
        for Q, gens in subs.items():
            if Q in assigned:
                continue
            rep = PermutationGroup(gens, G.degree)
            record = SubgroupRecord(rep, G)
            transversal = right_transversal(G, record.normalizer)
            members = []
            for g in transversal:
                conj = frozenset(q ^ g for q in Q)
                if conj <= sset and conj not in assigned:
                    assigned.add(conj)
                    members.append((conj, g))
            classes.append(PSubgroupClass(record, len(transversal), members))
        return PSubgroupClassification(G, p, S, classes)
    return G.memo(("p_subgroup_classes", p), compute)
