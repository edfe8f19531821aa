"""Finite presentations and Todd-Coxeter coset enumeration (HLT + lookahead).

Words are sequences of non-zero integers: ``i`` is generator ``i`` (1-based)
and ``-i`` its inverse.  Text form: ``"gens: 3; rel: 1 1 1, 2 2, 1 2 -1 -2"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from . import config
from .errors import CosetEnumerationError
from .group import PermutationGroup
from .perm import Permutation

__all__ = [
    "Presentation",
    "free_reduce",
    "parse_presentation",
    "parse_words",
    "coset_enumeration",
    "coset_table",
    "commutator_word",
    "word_power",
    "generator_images",
]

Word = tuple[int, ...]


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if x == 0:
            raise ValueError("0 is not a generator index")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def word_power(word: Sequence[int], k: int) -> Word:
    if k < 0:
        word = tuple(-x for x in reversed(word))
        k = -k
    return tuple(word) * k


def commutator_word(u: Sequence[int], v: Sequence[int]) -> Word:
    """``[u, v] = u^-1 v^-1 u v``."""
    return free_reduce(word_power(u, -1) + word_power(v, -1) + tuple(u) + tuple(v))


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        if self.generator_count < 1:
            raise ValueError("a presentation needs at least one generator")
        reduced = []
        for r in self.relators:
            w = free_reduce(r)
            if not w:
                raise ValueError(f"relator {r} is empty after free reduction")
            for x in w:
                if abs(x) > self.generator_count:
                    raise ValueError(f"generator {abs(x)} out of range in relator {r}")
            reduced.append(w)
        object.__setattr__(self, "relators", tuple(reduced))

    def __str__(self) -> str:
        rels = ", ".join(" ".join(str(x) for x in r) for r in self.relators)
        return f"gens: {self.generator_count}; rel: {rels}"


def parse_words(text: str) -> list[Word]:
    words = []
    for chunk in text.split(","):
        toks = chunk.split()
        if toks:
            words.append(tuple(int(t) for t in toks))
    return words


def parse_presentation(text: str) -> Presentation:
    """Whitespace-insensitive reader for ``gens: k; rel: w1, w2, ...``."""
    m = re.fullmatch(r"\s*gens\s*:\s*(\d+)\s*(?:;\s*rels?\s*:\s*(.*?))?\s*;?\s*", text, re.S)
    if not m:
        raise ValueError(f"could not parse presentation {text!r}")
    k = int(m.group(1))
    rels = parse_words(m.group(2) or "")
    return Presentation(k, tuple(rels))


class _TableFull(Exception):
    pass


class _CosetTable:
    """Coset table with columns 2i (generator i) and 2i+1 (its inverse)."""

    def __init__(self, ngens: int, cap: int):
        self.ncols = 2 * ngens
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.cap = cap

    @staticmethod
    def col(x: int) -> int:
        return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    def rep(self, c: int) -> int:
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(self, c: int, x: int) -> int:
        if self.live >= self.cap:
            raise _TableFull
        new = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(new)
        self.live += 1
        self.table[c][x] = new
        self.table[new][x ^ 1] = c
        return new

    def merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        self.live -= 1
        queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        table = self.table
        queue: list[int] = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.ncols):
                d = table[g][x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                mu, nu = self.rep(g), self.rep(d)
                if table[mu][x] is not None:
                    self.merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] is not None:
                    self.merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan(self, c: int, word: Sequence[int], fill: bool) -> None:
        table = self.table
        cols = [self.col(x) for x in word]
        f, b = c, c
        i, j = 0, len(cols) - 1
        while True:
            while i <= j and table[f][cols[i]] is not None:
                f = table[f][cols[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][cols[j] ^ 1] is not None:
                b = table[b][cols[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][cols[i]] = b
                table[b][cols[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, cols[i])

    def lookahead(self, relators: Sequence[Word]) -> None:
        c = 0
        while c < len(self.table):
            for r in relators:
                if not self.is_live(c):
                    break
                self.scan(c, r, fill=False)
            c += 1


def coset_table(pres: Presentation, subgroup_words: Sequence[Sequence[int]] = (),
                cap: int | None = None) -> list[list[int]]:
    """Complete coset table, rows renumbered 0..index-1 with row 0 = H.

    Column ``2i`` holds the action of generator ``i+1`` and ``2i+1`` that of
    its inverse.
    """
    cap = config.COSET_TABLE_CAP if cap is None else cap
    ct = _CosetTable(pres.generator_count, cap)
    rels = pres.relators
    subgroup_words = [free_reduce(w) for w in subgroup_words]

    def process(c: int) -> None:
        for r in rels:
            if not ct.is_live(c):
                return
            ct.scan(c, r, fill=True)
        if ct.is_live(c):
            for x in range(ct.ncols):
                if ct.table[c][x] is None:
                    ct.define(c, x)

    def guarded(step) -> None:
        while True:
            try:
                step()
                return
            except _TableFull:
                before = ct.live
                ct.lookahead(rels)
                if ct.live >= ct.cap or ct.live == before:
                    raise CosetEnumerationError(ct.live, ct.cap) from None

    for w in subgroup_words:
        if w:
            guarded(lambda w=w: ct.scan(0, w, fill=True))
    c = 0
    while c < len(ct.table):
        if ct.is_live(c):
            guarded(lambda c=c: process(c))
        c += 1

    live = [c for c in range(len(ct.table)) if ct.is_live(c)]
    index = {c: i for i, c in enumerate(live)}
    return [[index[ct.rep(ct.table[c][x])] for x in range(ct.ncols)] for c in live]


def coset_enumeration(pres: Presentation, subgroup_words: Sequence[Sequence[int]] = (),
                      cap: int | None = None) -> PermutationGroup:
    """Permutation action of the presented group on the cosets of ``H``.

    With ``H`` trivial (no words) this is the regular representation, and
    the returned group's order equals the number of cosets.  For other ``H``
    the action is faithful exactly when ``H`` is core-free.
    """
    rows = coset_table(pres, subgroup_words, cap)
    n = len(rows)
    gens = [Permutation(rows[c][2 * i] for c in range(n)) for i in range(pres.generator_count)]
    return PermutationGroup(gens, n)


def generator_images(pres: Presentation, subgroup_words: Sequence[Sequence[int]] = (),
                     cap: int | None = None) -> list[Permutation]:
    """Images of the presentation generators in the coset action, identity included."""
    rows = coset_table(pres, subgroup_words, cap)
    n = len(rows)
    return [Permutation(rows[c][2 * i] for c in range(n)) for i in range(pres.generator_count)]
