"""Permutation groups backed by a base and strong generating set."""

from __future__ import annotations

from functools import cached_property
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

from . import config
from .errors import CapExceeded
from .perm import Permutation

__all__ = ["PermutationGroup", "group_from_generators", "contains", "elements"]


class _Level:
    __slots__ = ("point", "gens", "transversal", "inverses", "order", "verified")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Permutation] = []
        # transversal[b] = u with point^u == b; entries are never replaced
        self.transversal: dict[int, Permutation] = {}
        self.inverses: dict[int, Permutation] = {}
        self.order: list[int] = []
        # (orbit point, generator index) pairs whose Schreier generator sifted
        self.verified: set[tuple[int, int]] = set()

    def extend_orbit(self, identity: Permutation) -> None:
        if not self.order:
            self.transversal[self.point] = identity
            self.inverses[self.point] = identity
            self.order.append(self.point)
        i = 0
        while i < len(self.order):
            beta = self.order[i]
            u = self.transversal[beta]
            for x in self.gens:
                gamma = x[beta]
                if gamma not in self.transversal:
                    v = u * x
                    self.transversal[gamma] = v
                    self.inverses[gamma] = v.inverse()
                    self.order.append(gamma)
            i += 1


def _first_moved(p: Permutation) -> int:
    for i, x in enumerate(p):
        if i != x:
            return i
    raise ValueError("identity moves no point")


class PermutationGroup:
    """A finite group of permutations of {0, ..., degree-1}.

    The BSGS is built once, deterministically, by Schreier-Sims with every
    Schreier generator sifted (no randomised step).  Instances are treated as
    immutable; cached properties only memoise pure functions of the
    generators.
    """

    def __init__(self, generators: Iterable[Sequence[int]] = (), degree: int | None = None):
        gens = [g if isinstance(g, Permutation) else Permutation.checked(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree is required for an empty generator list")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise ValueError(f"degree mismatch: generator of degree {len(g)} in a group of degree {degree}")
        self.degree = degree
        kept: list[Permutation] = []
        seen = set()
        for g in gens:
            if not g.is_identity() and g not in seen:
                seen.add(g)
                kept.append(g)
        self.generators: tuple[Permutation, ...] = tuple(kept)
        self.identity = Permutation.identity(degree)
        self._levels: list[_Level] = []
        self._memo: dict = {}
        self._schreier_sims()

    def memo(self, key, compute):
        """Memoise a derived object (classes, tables, ...) on this group."""
        try:
            return self._memo[key]
        except KeyError:
            value = self._memo[key] = compute()
            return value

    # -- construction -----------------------------------------------------

    def _strip(self, g: Permutation, start: int) -> tuple[Permutation, int]:
        levels = self._levels
        for j in range(start, len(levels)):
            lvl = levels[j]
            beta = g[lvl.point]
            inv = lvl.inverses.get(beta)
            if inv is None:
                return g, j
            g = g * inv
        return g, len(levels)

    def _schreier_sims(self) -> None:
        levels = self._levels
        ident = self.identity
        base: list[int] = []
        for g in self.generators:
            if all(g[b] == b for b in base):
                base.append(_first_moved(g))
        for k, b in enumerate(base):
            lvl = _Level(b)
            lvl.gens = [g for g in self.generators if all(g[c] == c for c in base[:k])]
            lvl.extend_orbit(ident)
            levels.append(lvl)

        i = len(levels) - 1
        while i >= 0:
            lvl = levels[i]
            dropped = False
            for beta in list(lvl.order):
                u = lvl.transversal[beta]
                for xi, x in enumerate(lvl.gens):
                    if (beta, xi) in lvl.verified:
                        continue
                    h = u * x * lvl.inverses[x[beta]]
                    if not h.is_identity():
                        y, j = self._strip(h, i + 1)
                        if j < len(levels) or not y.is_identity():
                            if j == len(levels):
                                levels.append(_Level(_first_moved(y)))
                                levels[-1].extend_orbit(ident)
                            for l in range(i + 1, j + 1):
                                levels[l].gens.append(y)
                                levels[l].extend_orbit(ident)
                            i = j
                            dropped = True
                            break
                    lvl.verified.add((beta, xi))
                if dropped:
                    break
            if not dropped:
                i -= 1

    # -- basic data -------------------------------------------------------

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lvl.point for lvl in self._levels)

    @property
    def strong_generators(self) -> tuple[Permutation, ...]:
        out: list[Permutation] = []
        seen = set()
        for lvl in self._levels:
            for g in lvl.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return tuple(out)

    @property
    def orbit_lengths(self) -> tuple[int, ...]:
        return tuple(len(lvl.order) for lvl in self._levels)

    @cached_property
    def order(self) -> int:
        return prod(self.orbit_lengths)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"<PermutationGroup degree={self.degree} order={self.order} gens=[{gens}]>"

    # -- membership and enumeration --------------------------------------

    def contains(self, p: Sequence[int]) -> bool:
        if len(p) != self.degree:
            raise ValueError(f"degree mismatch: {len(p)} vs {self.degree}")
        cached = self.__dict__.get("element_set")
        if cached is not None:
            return p in cached
        if not isinstance(p, Permutation):
            p = Permutation(p)
        residue, j = self._strip(p, 0)
        return j == len(self._levels) and residue.is_identity()

    def __contains__(self, p) -> bool:
        return self.contains(p)

    def elements(self, cap: int | None = None) -> Iterator[Permutation]:
        """Yield every element exactly once; refuse loudly beyond ``cap``."""
        cap = config.ENUMERATION_CAP if cap is None else cap
        if self.order > cap:
            raise CapExceeded("group order for element enumeration", self.order, cap)
        return iter(self._products())

    def _products(self) -> list[Permutation]:
        elems = [self.identity]
        for lvl in reversed(self._levels):
            reps = [lvl.transversal[b] for b in lvl.order]
            elems = [h * u for h in elems for u in reps]
        return elems

    @cached_property
    def element_set(self) -> frozenset[Permutation]:
        return frozenset(self.elements())

    @cached_property
    def sorted_elements(self) -> tuple[Permutation, ...]:
        return tuple(sorted(self.element_set))

    # -- simple predicates -------------------------------------------------

    def is_trivial(self) -> bool:
        return not self._levels

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order == other.order
                and self.is_subgroup_of(other))

    def __hash__(self) -> int:
        return hash((self.degree, self.order))

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    @cached_property
    def exponent(self) -> int:
        e = 1
        for g in self.element_set:
            o = g.order()
            e = e * o // gcd(e, o)
        return e

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    # -- constructors --------------------------------------------------------

    @classmethod
    def trivial(cls, degree: int) -> "PermutationGroup":
        return cls([], degree)

    def subgroup(self, generators: Iterable[Permutation]) -> "PermutationGroup":
        return PermutationGroup(list(generators), self.degree)

    def join(self, *more: Permutation) -> "PermutationGroup":
        return PermutationGroup(list(self.generators) + list(more), self.degree)

    def conjugate(self, g: Permutation) -> "PermutationGroup":
        """The subgroup ``g**-1 * self * g``."""
        return PermutationGroup([x ^ g for x in self.generators], self.degree)

    @classmethod
    def from_element_set(cls, elems: Iterable[Permutation], degree: int) -> "PermutationGroup":
        """A group generated greedily from the lex-ordered element set."""
        gens: list[Permutation] = []
        current: frozenset = frozenset([Permutation.identity(degree)])
        for x in sorted(elems):
            if x not in current:
                gens.append(x)
                current = PermutationGroup(gens, degree).element_set
        return cls(gens, degree)


def group_from_generators(gens: Sequence[Permutation], degree: int | None = None) -> PermutationGroup:
    return PermutationGroup(gens, degree)


def contains(G: PermutationGroup, p: Permutation) -> bool:
    return G.contains(p)


def elements(G: PermutationGroup, cap: int | None = None) -> Iterator[Permutation]:
    return G.elements(cap)
