"""The orbit category over a collection of p-subgroups and the limit of Char_n.

Objects are one representative per conjugacy class of the collection,
chosen inside the fixed Sylow subgroup ``S`` (and ``S`` itself for its own
class).  ``Mor(P, Q)`` is the set of cosets ``gQ`` with ``P^g <= Q``; such a
morphism pulls a class function ``f`` on ``Q`` back to ``h -> f(h^g)`` on
``P``.  A limit element is a family of degree-``n`` characters, one per
object, compatible with every pull-back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import config
from .characters import (
    Character,
    ClassFunction,
    character_table,
    degree_n_characters,
    fusion_partition,
    fusion_stable_characters,
)
from .cyclotomic import Cyclotomic
from .errors import CapExceeded, FusionViolation, TableInconsistency
from .group import PermutationGroup
from .perm import Permutation
from .structure import conjugacy_classes, sylow_subgroup
from .subgroups import SubgroupRecord, p_subgroup_classes

__all__ = [
    "OrbitCategory",
    "LimitElement",
    "TheoremCharReport",
    "orbit_category",
    "limit_elements",
    "pi1",
    "sigma",
    "verify_theorem_char",
]

COLLECTIONS = ("principal_p_radical", "p_centric", "p_radical", "sylow")


def _lifted(values: Sequence[Cyclotomic], conductor: int) -> tuple[Cyclotomic, ...]:
    # hashing is only canonical inside one conductor
    return tuple(v.lift(conductor) for v in values)


@dataclass
class OrbitCategory:
    ambient: PermutationGroup
    prime: int
    objects: list[SubgroupRecord]
    morphisms: dict[tuple[int, int], list[Permutation]] = field(repr=False)
    sylow_index: int = 0
    labels: list[str] = field(default_factory=list)
    _witnesses: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def sylow(self) -> PermutationGroup:
        return self.objects[self.sylow_index].subgroup

    def object_group(self, i: int) -> PermutationGroup:
        return self.objects[i].subgroup

    def morphism_count(self, i: int, j: int) -> int:
        return len(self.morphisms[(i, j)])

    def witnesses(self, i: int) -> list[Permutation]:
        """Coset representatives ``gS`` with ``P_i^g <= S``, computed from the group itself."""
        if i not in self._witnesses:
            self._witnesses[i] = _morphisms(self.ambient, self.object_group(i), self.sylow)
        return self._witnesses[i]

    def coset_rep(self, g: Permutation, j: int) -> Permutation:
        """Lex-least element of the left coset ``g Q_j``."""
        return min(g * q for q in self.object_group(j).element_set)

    def compose(self, g: Permutation, h: Permutation, k: int) -> Permutation:
        """``gQ : P -> Q`` followed by ``hR : Q -> R`` is ``ghR``."""
        return self.coset_rep(g * h, k)

    def verify(self) -> None:
        """Identities, coset counts and closure under composition."""
        G = self.ambient
        n = len(self.objects)
        for j in range(n):
            if self.coset_rep(G.identity, j) not in self.morphisms[(j, j)]:
                raise AssertionError(f"identity missing at object {j}")
        for i in range(n):
            P = self.object_group(i)
            for j in range(n):
                Q = self.object_group(j)
                qset = Q.element_set
                count = sum(1 for g in G.sorted_elements if all(x ^ g in qset for x in P.generators))
                if count != len(self.morphisms[(i, j)]) * Q.order:
                    raise AssertionError(f"morphism count mismatch for ({i}, {j})")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    target = set(self.morphisms[(i, k)])
                    for g in self.morphisms[(i, j)]:
                        for h in self.morphisms[(j, k)]:
                            if self.compose(g, h, k) not in target:
                                raise AssertionError(f"composite ({i},{j},{k}) not in the morphism set")

    def pullback(self, values: Sequence[Cyclotomic], i: int, j: int, g: Permutation) -> tuple[Cyclotomic, ...]:
        """Class-function values on ``P_i`` of ``h -> f(h^g)`` for ``f`` on ``P_j``."""
        pc = conjugacy_classes(self.object_group(i))
        qc = conjugacy_classes(self.object_group(j))
        return tuple(values[qc.class_index[h ^ g]] for h in pc.representatives)

    def without_morphisms(self, i: int, j: int, keep: int = 0) -> "OrbitCategory":
        """A corrupted copy with ``Mor(P_i, P_j)`` cut down to its first ``keep`` cosets (for fault tests)."""
        mors = dict(self.morphisms)
        mors[(i, j)] = list(mors[(i, j)][:keep])
        return OrbitCategory(self.ambient, self.prime, self.objects, mors, self.sylow_index, self.labels)

    def to_json(self) -> dict:
        n = len(self.objects)
        return {
            "objects": [{"label": self.labels[i], "order": self.object_group(i).order,
                         "generators": [str(g) for g in self.object_group(i).generators]} for i in range(n)],
            "morphism_counts": [[len(self.morphisms[(i, j)]) for j in range(n)] for i in range(n)],
        }


def _morphisms(G: PermutationGroup, P: PermutationGroup, Q: PermutationGroup) -> list[Permutation]:
    qset = Q.element_set
    reps: list[Permutation] = []
    covered: set[Permutation] = set()
    for g in G.sorted_elements:
        if g in covered:
            continue
        if all(x ^ g in qset for x in P.generators):
            reps.append(g)
            covered.update(g * q for q in qset)
    return reps


def orbit_category(G: PermutationGroup, p: int, collection: str = "principal_p_radical",
                   choices: dict[int, int] | None = None, verify: bool = True) -> OrbitCategory:
    """Skeleton of the orbit category over ``collection``.

    ``choices`` maps an object position to the index of another class
    member inside ``S`` to use as representative (the Sylow object excepted).
    """
    if collection not in COLLECTIONS:
        raise ValueError(f"unknown collection {collection!r}; expected one of {COLLECTIONS}")
    cls = p_subgroup_classes(G, p)
    S = sylow_subgroup(G, p)
    if S.order == 1:
        raise ValueError(f"{p} does not divide the group order")
    if collection == "sylow":
        chosen = [cls.sylow_class()]
    elif collection == "principal_p_radical":
        chosen = cls.principal_p_radical()
    else:
        chosen = cls.with_flag(collection)
    # Sylow first, then by decreasing order
    chosen = sorted(chosen, key=lambda c: -c.order)
    choices = choices or {}
    objects = []
    labels = []
    for pos, c in enumerate(chosen):
        if c.order == S.order:
            objects.append(SubgroupRecord(S, G))
        else:
            m = choices.get(pos, 0)
            rec = SubgroupRecord(c.member_group(m), G)
            rec.__dict__["normalizer"] = c.member_normalizer(m)
            objects.append(rec)
        labels.append(f"P{pos}[{c.order}]")
    n = len(objects)
    mors = {}
    for i in range(n):
        for j in range(n):
            mors[(i, j)] = _morphisms(G, objects[i].subgroup, objects[j].subgroup)
    cat = OrbitCategory(G, p, objects, mors, 0, labels)
    if verify:
        cat.verify()
    return cat


@dataclass(frozen=True)
class LimitElement:
    category: OrbitCategory = field(compare=False, hash=False, repr=False)
    components: tuple[Character, ...]

    @property
    def degree(self) -> int:
        return self.components[0].degree

    def key(self) -> tuple:
        return tuple(c.multiplicities for c in self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LimitElement):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def is_compatible(self) -> bool:
        return _compatible(self.category, list(self.components))

    def to_json(self) -> dict:
        return {label: [v.to_json() for v in chi.values]
                for label, chi in zip(self.category.labels, self.components)}


def _compatible(cat: OrbitCategory, comps: Sequence[Character | None], only: int | None = None) -> bool:
    e = cat.ambient.exponent
    for (i, j), gs in cat.morphisms.items():
        if comps[i] is None or comps[j] is None:
            continue
        if only is not None and only not in (i, j):
            continue
        want = _lifted(comps[i].values, e)
        qvals = _lifted(comps[j].values, e)
        for g in gs:
            if cat.pullback(qvals, i, j, g) != want:
                return False
    return True


def limit_elements(G: PermutationGroup, p: int, n: int, category: OrbitCategory | None = None,
                   cap: int | None = None) -> list[LimitElement]:
    """Every compatible family of degree-``n`` characters, by exhaustive search.

    Objects are filled in order with backtracking on partial compatibility;
    every surviving tuple is re-checked against every morphism.  Results are
    sorted by component multiplicities.
    """
    cap = config.LIMIT_TUPLE_CAP if cap is None else cap
    cat = orbit_category(G, p) if category is None else category
    cands = [list(degree_n_characters(character_table(rec.subgroup), n)) for rec in cat.objects]
    m = len(cands)
    comps: list[Character | None] = [None] * m
    out: list[LimitElement] = []
    visited = 0

    def walk(i: int) -> None:
        nonlocal visited
        if i == m:
            out.append(LimitElement(cat, tuple(comps)))  # type: ignore[arg-type]
            return
        for chi in cands[i]:
            visited += 1
            if visited > cap:
                raise CapExceeded("limit search nodes", visited, cap)
            comps[i] = chi
            if _compatible(cat, comps, only=i):
                walk(i + 1)
            comps[i] = None

    walk(0)
    for gamma in out:
        if not _compatible(cat, gamma.components):
            raise AssertionError("limit element failed the full compatibility pass")
    out.sort(key=LimitElement.key)
    return out


def pi1(gamma: LimitElement) -> Character:
    """The component at the Sylow object."""
    return gamma.components[gamma.category.sylow_index]


def sigma(chi: Character, category: OrbitCategory) -> LimitElement:
    """The compatible family ``chi_P(h) = chi(h^g)`` for ``P^g <= S``.

    Every witness ``g`` is tried and must give the same values.
    """
    cat = category
    S = cat.sylow
    if chi.group is not S:
        raise ValueError("character must live on the category's Sylow object")
    G = cat.ambient
    vals = chi.values
    for block in fusion_partition(G, S):
        for k in block[1:]:
            if vals[k] != vals[block[0]]:
                reps = chi.classes.representatives
                raise FusionViolation(reps[block[0]], reps[k])
    e = G.exponent
    svals = _lifted(vals, e)
    comps = []
    for i, rec in enumerate(cat.objects):
        witnesses = cat.witnesses(i)
        if not witnesses:
            raise AssertionError(f"object {i} does not embed in the Sylow subgroup")
        pulled = {cat.pullback(svals, i, cat.sylow_index, g) for g in witnesses}
        if len(pulled) != 1:
            raise AssertionError(f"component at object {i} depends on the witness")
        (values,) = pulled
        if i == cat.sylow_index and values == svals:
            comps.append(chi)
            continue
        T = character_table(rec.subgroup)
        comp = T.decompose(ClassFunction(rec.subgroup, values, T.classes))
        if comp is None:
            raise TableInconsistency(f"component at object {i} is not a character")
        comps.append(comp)
    gamma = LimitElement(cat, tuple(comps))
    if not gamma.is_compatible():
        raise AssertionError("sigma produced an incompatible family")
    return gamma


@dataclass
class TheoremCharReport:
    group_order: int
    prime: int
    degree: int
    stable_count: int
    limit_count: int
    a_section: bool
    b_retraction: bool
    c_counts: bool
    d_image: bool
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return self.a_section and self.b_retraction and self.c_counts and self.d_image

    def to_json(self) -> dict:
        return {
            "order": self.group_order,
            "p": self.prime,
            "n": self.degree,
            "stable_count": self.stable_count,
            "limit_count": self.limit_count,
            "pi1_sigma_identity": self.a_section,
            "sigma_pi1_identity": self.b_retraction,
            "counts_equal": self.c_counts,
            "image_equals_stable": self.d_image,
            "ok": self.ok,
            "counterexample": self.counterexample,
        }


def verify_theorem_char(G: PermutationGroup, p: int, n: int,
                        category: OrbitCategory | None = None) -> TheoremCharReport:
    """Check that ``pi1`` is a bijection from the limit onto the fusion-stable characters."""
    cat = orbit_category(G, p) if category is None else category
    stable = fusion_stable_characters(G, p, n, sylow=cat.sylow)
    limits = limit_elements(G, p, n, category=cat)
    counter: dict | None = None

    def note(kind: str, payload: dict) -> None:
        nonlocal counter
        if counter is None:
            counter = {"assertion": kind, **payload}

    a = True
    for chi in stable:
        try:
            back = pi1(sigma(chi, cat))
        except (AssertionError, FusionViolation, TableInconsistency) as exc:
            a = False
            note("a", {"character": list(chi.multiplicities), "error": str(exc)})
            break
        if back != chi:
            a = False
            note("a", {"character": list(chi.multiplicities), "got": list(back.multiplicities)})
            break

    b = True
    for gamma in limits:
        try:
            again = sigma(pi1(gamma), cat)
        except (AssertionError, FusionViolation, TableInconsistency) as exc:
            b = False
            note("b", {"limit_element": [list(c.multiplicities) for c in gamma.components], "error": str(exc)})
            break
        if again != gamma:
            b = False
            note("b", {"limit_element": [list(c.multiplicities) for c in gamma.components],
                       "got": [list(c.multiplicities) for c in again.components]})
            break

    c = len(limits) == len(stable)
    if not c:
        note("c", {"limit_count": len(limits), "stable_count": len(stable)})

    image = [pi1(g).multiplicities for g in limits]
    stable_keys = {chi.multiplicities for chi in stable}
    d = len(set(image)) == len(image) and set(image) == stable_keys
    if not d:
        extra = sorted(set(image) - stable_keys)
        missing = sorted(stable_keys - set(image))
        note("d", {"not_stable": [list(x) for x in extra[:1]], "not_hit": [list(x) for x in missing[:1]],
                   "injective": len(set(image)) == len(image)})
    return TheoremCharReport(G.order, p, n, len(stable), len(limits), a, b, c, d, counter)
