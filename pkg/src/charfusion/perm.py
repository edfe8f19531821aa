"""Permutations on {0, ..., n-1} with cycle-notation I/O on {1, ..., n}.

Composition convention, used everywhere in the package: ``p * q`` applies
``p`` first and then ``q``, so ``(p * q)[x] == q[p[x]]``.  Conjugation is
written ``a ^ g`` and means ``g**-1 * a * g``; it maps the points of ``a``
along ``g``.  With these conventions ``(a ^ g) ^ h == a ^ (g * h)``.
"""

from __future__ import annotations

import re
from math import gcd
from typing import Iterable, Sequence

__all__ = ["Permutation", "compose", "parse_permutation", "parse_permutation_list"]


class Permutation(tuple):
    """An immutable permutation stored as its 0-based image tuple.

    Equality, hashing and ordering are those of the image tuple, so the
    lexicographic order on image tuples is the tie-breaking order used for
    every "minimal representative" in the package.  The identity is the
    smallest permutation of each degree.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        return tuple.__new__(cls, images)

    @classmethod
    def checked(cls, images: Sequence[int]) -> "Permutation":
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        return cls(images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 1-based cycles, e.g. ``[(1, 2, 3), (4, 5)]``."""
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            cycle = [int(x) - 1 for x in cycle]
            for x in cycle:
                if not 0 <= x < degree:
                    raise ValueError(f"point {x + 1} outside 1..{degree}")
                if x in seen:
                    raise ValueError(f"point {x + 1} repeated in cycles")
                seen.add(x)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(self) != len(other):
            raise ValueError(f"degree mismatch: {len(self)} vs {len(other)}")
        return Permutation(map(other.__getitem__, self))

    __rmul__ = None

    def __add__(self, other):
        raise TypeError("permutations do not support concatenation")

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Permutation(inv)

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(len(self))
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __xor__(self, g: "Permutation") -> "Permutation":
        # g^-1 * self * g: maps self's cycle (x y ...) to (x^g y^g ...)
        if not isinstance(g, Permutation):
            return NotImplemented
        if len(self) != len(g):
            raise ValueError(f"degree mismatch: {len(self)} vs {len(g)}")
        conj = [0] * len(self)
        for x, y in enumerate(self):
            conj[g[x]] = g[y]
        return Permutation(conj)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its least point."""
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start] or self[start] == start:
                continue
            cycle = [start]
            seen[start] = True
            x = self[start]
            while x != start:
                seen[x] = True
                cycle.append(x)
                x = self[x]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        result = 1
        for c in self.cycles():
            result = result * len(c) // gcd(result, len(c))
        return result

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self) if i != x]

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r}, degree={len(self)})"

    def __reduce__(self):
        return (Permutation, (tuple(self),))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p * q``: apply ``p`` first, then ``q``."""
    return p * q


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse 1-based disjoint-cycle notation such as ``"(1 2 3)(4 5)"``.

    Separators inside a cycle may be spaces or commas.  Cycles need not be
    disjoint; they are multiplied left to right.  ``degree`` defaults to the
    largest point mentioned.
    """
    stripped = re.sub(r"\s+", " ", text).strip()
    rest = _CYCLE_RE.sub("", stripped).strip()
    if rest:
        raise ValueError(f"could not parse permutation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        points = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
        if points:
            cycles.append(points)
    largest = max((max(c) for c in cycles), default=1)
    if degree is None:
        degree = largest
    elif largest > degree:
        raise ValueError(f"point {largest} exceeds degree {degree}")
    result = Permutation.identity(degree)
    for c in cycles:
        if len(set(c)) != len(c) or min(c) < 1:
            raise ValueError(f"bad cycle {c} in {text!r}")
        result = result * Permutation.from_cycles([c], degree)
    return result


def parse_permutation_list(text: str, degree: int | None = None) -> list[Permutation]:
    """Parse ``;``- or ``,``-separated permutations sharing one degree."""
    parts = [part for part in re.split(r"[;]|(?<=\))\s*,", text) if part.strip()]
    if degree is None:
        degree = 1
        for part in parts:
            nums = [int(n) for n in re.findall(r"\d+", part)]
            degree = max([degree] + nums)
    return [parse_permutation(part, degree) for part in parts]
