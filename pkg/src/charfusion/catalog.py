"""Named groups as permutation groups, and the group-spec grammar.

Spec strings::

    perm: (1 2 3)(4 5); (1 4)          generators in 1-based cycle notation
    catalog:Name(params)               a catalog constructor or alias
    pres: gens: 2; rel: 1 1, 2 2 2, 1 2 1 2 2 ...
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .group import PermutationGroup
from .perm import Permutation, parse_permutation_list
from .presentation import (
    Presentation,
    commutator_word,
    coset_enumeration,
    free_reduce,
    parse_presentation,
    word_power,
)
from .structure import center, quotient_group

__all__ = [
    "GroupSpec",
    "UnavailableGroup",
    "CATALOG",
    "ALIASES",
    "CATALOG_SAMPLES",
    "PRESENTATION_TWINS",
    "catalog",
    "parse_group_spec",
    "resolve",
    "catalog_listing",
]


class UnavailableGroup(LookupError):
    """A catalog entry whose defining data is not configured."""


# -- building blocks ------------------------------------------------------------


def _cycle(n: int, start: int, length: int) -> list[int]:
    img = list(range(n))
    for i in range(length):
        img[start + i] = start + (i + 1) % length
    return img


def _regular(elements: list, mul: Callable, gens: list) -> PermutationGroup:
    """Right regular representation ``x -> x * g`` of a group given by a multiplication rule."""
    index = {x: i for i, x in enumerate(elements)}
    perms = [Permutation(index[mul(x, g)] for x in elements) for g in gens]
    return PermutationGroup(perms, len(elements))


def _metacyclic_rule(M: int, K: int, t: int, r: int) -> PermutationGroup:
    """``<x, y | x^M, y^K = x^t, y^-1 x y = x^r>`` on normal forms ``y^j x^i``."""
    if pow(r, K, M) != 1 or (t * r - t) % M:
        raise ValueError("inconsistent metacyclic parameters")
    elements = [(j, i) for j in range(K) for i in range(M)]

    def mul(a, b):
        j, i = a
        l, k = b
        e = (i * pow(r, l, M) + k) % M
        s = j + l
        if s >= K:
            s -= K
            e = (e + t) % M
        return (s, e)

    return _regular(elements, mul, [(0, 1 % M), (1 % K, 0)])


def cyclic(m: int) -> PermutationGroup:
    if m < 1:
        raise ValueError("cyclic order must be positive")
    if m == 1:
        return PermutationGroup.trivial(1)
    return PermutationGroup([Permutation(_cycle(m, 0, m))], m)


def direct_product(*groups: PermutationGroup) -> PermutationGroup:
    """Disjoint-union action of the factors."""
    if not groups:
        raise ValueError("direct product needs at least one factor")
    n = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            img = list(range(n))
            for i, x in enumerate(g):
                img[offset + i] = offset + x
            gens.append(Permutation(img))
        offset += G.degree
    return PermutationGroup(gens, n)


def abelian(*orders: int) -> PermutationGroup:
    return direct_product(*(cyclic(m) for m in orders))


def elementary_abelian(p: int, r: int) -> PermutationGroup:
    return abelian(*([p] * r))


def dihedral(order: int) -> PermutationGroup:
    """Dihedral group of the given order (``order = 2m``)."""
    if order % 2 or order < 4:
        raise ValueError("dihedral order must be even and at least 4")
    m = order // 2
    if m == 2:
        return elementary_abelian(2, 2)
    rot = Permutation(_cycle(m, 0, m))
    ref = Permutation([(-i) % m for i in range(m)])
    return PermutationGroup([rot, ref], m)


def _two_power(n: int) -> int:
    k = n.bit_length() - 1
    if n != 1 << k:
        raise ValueError(f"{n} is not a power of 2")
    return k


def generalized_quaternion(order: int) -> PermutationGroup:
    k = _two_power(order)
    if k < 3:
        raise ValueError("generalized quaternion order must be at least 8")
    M = order // 2
    return _metacyclic_rule(M, 2, M // 2, M - 1)


def semidihedral(order: int) -> PermutationGroup:
    k = _two_power(order)
    if k < 4:
        raise ValueError("semidihedral order must be at least 16")
    M = order // 2
    return _metacyclic_rule(M, 2, 0, M // 2 - 1)


def symmetric(m: int) -> PermutationGroup:
    if m < 2:
        return PermutationGroup.trivial(max(m, 1))
    if m == 2:
        return cyclic(2)
    return PermutationGroup([Permutation.from_cycles([(1, 2)], m), Permutation.from_cycles([tuple(range(1, m + 1))], m)])


def alternating(m: int) -> PermutationGroup:
    if m < 3:
        return PermutationGroup.trivial(max(m, 1))
    gens = [Permutation.from_cycles([(1, 2, i)], m) for i in range(3, m + 1)]
    return PermutationGroup(gens, m)


def wreath_product(A: PermutationGroup, k: int) -> PermutationGroup:
    """``A wr Z/k`` acting on ``k`` blocks of ``A``'s points."""
    n = A.degree
    total = n * k
    gens = []
    for g in A.generators:
        img = list(range(total))
        for i, x in enumerate(g):
            img[i] = x
        gens.append(Permutation(img))
    shift = Permutation([(i + n) % total for i in range(total)])
    return PermutationGroup(gens + [shift], total)


def _central_involution(G: PermutationGroup) -> Permutation:
    Z = center(G)
    for z in Z.sorted_elements:
        if z.order() == 2:
            return z
    raise ValueError("group has no central involution")


def central_product(A: PermutationGroup, B: PermutationGroup) -> PermutationGroup:
    """``A * B`` amalgamating the lex-least central involutions of the factors."""
    D = direct_product(A, B)
    za, zb = _central_involution(A), _central_involution(B)
    img = list(za) + [A.degree + x for x in zb]
    return quotient_group(D, PermutationGroup([Permutation(img)], D.degree))


def quaternion() -> PermutationGroup:
    return generalized_quaternion(8)


def extraspecial(p: int, exponent: int) -> PermutationGroup:
    """Extraspecial group of order ``p^3`` (``p`` odd) of exponent ``p`` or ``p^2``."""
    if p == 2:
        raise ValueError("for p = 2 use dihedral(8) or generalized_quaternion(8)")
    if exponent == p:
        elements = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]

        def mul(x, y):
            return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

        return _regular(elements, mul, [(1, 0, 0), (0, 1, 0)])
    if exponent == p * p:
        return _metacyclic_rule(p * p, p, 0, 1 + p)
    raise ValueError("exponent must be p or p^2")


def heisenberg(p: int) -> PermutationGroup:
    return extraspecial(p, p)


def sl23() -> PermutationGroup:
    """SL(2, 3) on the eight non-zero vectors of F_3^2."""
    vecs = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}

    def act(m):
        (a, b), (c, d) = m
        return Permutation(index[((a * x + b * y) % 3, (c * x + d * y) % 3)] for x, y in vecs)

    return PermutationGroup([act(((1, 1), (0, 1))), act(((1, 0), (1, 1)))], 8)


def affine(n: int, r: int) -> PermutationGroup:
    """``Z/n x| <r>`` as the maps ``z -> z + 1`` and ``z -> r z`` on ``Z/n``."""
    from math import gcd
    if gcd(r, n) != 1:
        raise ValueError("multiplier must be a unit")
    t = Permutation([(z + 1) % n for z in range(n)])
    m = Permutation([(r * z) % n for z in range(n)])
    return PermutationGroup([t, m], n)


def _multiplicative_order(r: int, n: int) -> int:
    k, x = 1, r % n
    while x != 1 % n:
        x = (x * r) % n
        k += 1
    return k


def metacyclic(p: int, m: int, k: int, r: int) -> PermutationGroup:
    """``Z/p^m x| Z/p^k`` with the generator acting as multiplication by ``r``."""
    n = p ** m
    if _multiplicative_order(r, n) != p ** k:
        raise ValueError(f"{r} must have multiplicative order {p}^{k} modulo {n}")
    return affine(n, r)


def _is_square_mod(e: int, p: int) -> bool:
    return any((x * x - e) % p == 0 for x in range(1, p))


def _word(*parts) -> tuple[int, ...]:
    out: list[int] = []
    for part in parts:
        out.extend(part)
    return free_reduce(out)


def _from_presentation(pres: Presentation, subgroup_words, order: int) -> PermutationGroup:
    """Faithful coset action, falling back to the regular action if the subgroup has a core."""
    G = coset_enumeration(pres, subgroup_words)
    if G.order != order:
        G = coset_enumeration(pres)
    if G.order != order:
        raise AssertionError(f"presentation defines a group of order {G.order}, expected {order}")
    return G


def blackburn_case4_presentation(p: int, n: int) -> Presentation:
    a, b, c = (1,), (2,), (3,)
    q = p ** (n - 3)
    rels = [
        word_power(a, p), word_power(b, p), word_power(c, p ** (n - 2)),
        commutator_word(a, c), commutator_word(b, c),
        _word(commutator_word(a, b), word_power(c, -q)),
    ]
    return Presentation(3, tuple(rels))


def blackburn_case5_presentation(p: int, n: int, e: int) -> Presentation:
    a, b, c = (1,), (2,), (3,)
    q = p ** (n - 3)
    rels = [
        word_power(a, p), word_power(b, p), word_power(c, p ** (n - 2)),
        commutator_word(b, c),
        _word(commutator_word(a, word_power(b, -1)), word_power(c, -e * q)),
        _word(commutator_word(a, c), word_power(b, -1)),
    ]
    return Presentation(3, tuple(rels))


@lru_cache(maxsize=None)
def blackburn_case4(p: int, n: int) -> PermutationGroup:
    if p < 3 or n < 5:
        raise ValueError("case 4 needs an odd prime and n >= 5")
    return _from_presentation(blackburn_case4_presentation(p, n), [(1,)], p ** n)


@lru_cache(maxsize=None)
def blackburn_case5(p: int, n: int, e: int) -> PermutationGroup:
    if p < 3 or n < 5:
        raise ValueError("case 5 needs an odd prime and n >= 5")
    if e % p == 0 or _is_square_mod(e, p):
        raise ValueError(f"e = {e} must be a quadratic nonresidue mod {p}")
    return _from_presentation(blackburn_case5_presentation(p, n, e), [(1,)], p ** n)


def maximal_class_3group_presentation() -> Presentation:
    """``(Z/9)^2 x| Z/3``: ``s`` acts on ``<u, v>`` as multiplication by a cube root of unity."""
    u, v, s = (1,), (2,), (3,)
    rels = [
        word_power(u, 9), word_power(v, 9), commutator_word(u, v), word_power(s, 3),
        _word((-3,), u, s, (-2,)),          # u^s = v
        _word((-3,), v, s, v, u),           # v^s = u^-1 v^-1
    ]
    return Presentation(3, tuple(rels))


@lru_cache(maxsize=None)
def maximal_class_3group() -> PermutationGroup:
    return _from_presentation(maximal_class_3group_presentation(), [(3,)], 3 ** 5)


U64_ENV = "CHARFUSION_U64_PRESENTATION"


def u64() -> PermutationGroup:
    """Configured via a JSON file ``{"presentation": "gens: ...; rel: ..."}`` named by ``$CHARFUSION_U64_PRESENTATION``."""
    path = os.environ.get(U64_ENV)
    if not path:
        raise UnavailableGroup(f"U64 is unavailable: set {U64_ENV} to a file with a verified presentation")
    with open(path) as fh:
        data = json.load(fh)
    G = _from_presentation(parse_presentation(data["presentation"]), [], 64)
    return G


def thomas_item4(c_name: str) -> PermutationGroup:
    return central_product(quaternion(), resolve(c_name))


# -- registry -------------------------------------------------------------------

CATALOG: dict[str, Callable[..., PermutationGroup]] = {
    "cyclic": cyclic,
    "abelian": abelian,
    "elementary_abelian": elementary_abelian,
    "dihedral": dihedral,
    "generalized_quaternion": generalized_quaternion,
    "semidihedral": semidihedral,
    "symmetric": symmetric,
    "alternating": alternating,
    "direct_product": direct_product,
    "wreath_product": wreath_product,
    "central_product": central_product,
    "extraspecial": extraspecial,
    "heisenberg": heisenberg,
    "sl23": sl23,
    "affine": affine,
    "metacyclic": metacyclic,
    "blackburn_case4": blackburn_case4,
    "blackburn_case5": blackburn_case5,
    "maximal_class_3group": maximal_class_3group,
    "u64": u64,
}

ALIASES: dict[str, str] = {
    "Z2": "cyclic(2)",
    "Z3": "cyclic(3)",
    "Z4": "cyclic(4)",
    "Z6": "cyclic(6)",
    "V4": "elementary_abelian(2,2)",
    "S3": "symmetric(3)",
    "S4": "symmetric(4)",
    "S5": "symmetric(5)",
    "A4": "alternating(4)",
    "A5": "alternating(5)",
    "D8": "dihedral(8)",
    "D12": "dihedral(12)",
    "Q8": "generalized_quaternion(8)",
    "Q16": "generalized_quaternion(16)",
    "SD16": "semidihedral(16)",
    "SL23": "sl23()",
    "Z4xZ4": "abelian(4,4)",
    "Z8xZ8": "abelian(8,8)",
    "Q8xQ8": "direct_product(Q8,Q8)",
    "Q8*D8": "central_product(Q8,D8)",
    "Q8wrZ2": "wreath_product(Q8,2)",
    "Q8*Z4": "central_product(Q8,cyclic(4))",
    "Z3wrZ3": "wreath_product(Z3,3)",
    "S3wrZ2": "wreath_product(S3,2)",
    "S3xS3": "direct_product(S3,S3)",
    "A4xA4": "direct_product(A4,A4)",
    "He3": "extraspecial(3,3)",
    "M27": "extraspecial(3,9)",
    "Z7:Z3": "affine(7,2)",
    "Z13:Z3": "affine(13,3)",
    "Z25:Z5": "metacyclic(5,2,1,6)",
    "Z125:Z5": "metacyclic(5,3,1,26)",
    "Z7:Z3xZ3": "direct_product(affine(7,2),cyclic(3))",
    "B4": "blackburn_case4(3,5)",
    "B5": "blackburn_case5(3,5,2)",
    "MC243": "maximal_class_3group()",
    "U64": "u64()",
}

# The standard instances used by the self-checks.
CATALOG_SAMPLES: list[str] = [
    "Z6", "V4", "S3", "S4", "S5", "A4", "A5", "D8", "D12", "Q8", "Q16", "SD16", "SL23",
    "Z4xZ4", "Q8*D8", "Q8xQ8", "Q8wrZ2", "Z3wrZ3", "S3wrZ2", "S3xS3", "A4xA4",
    "He3", "M27", "Z7:Z3", "Z13:Z3", "Z25:Z5", "Z7:Z3xZ3", "B4", "B5", "MC243",
]

# Presentations whose coset enumeration should reproduce a catalog group's order.
PRESENTATION_TWINS: list[tuple[str, str]] = [
    ("S3", "gens: 2; rel: 1 1, 2 2 2, 1 2 1 2"),
    ("S4", "gens: 2; rel: 1 1, 2 2 2, 1 2 1 2 1 2 1 2"),
    ("A5", "gens: 2; rel: 1 1, 2 2 2, 1 2 1 2 1 2 1 2 1 2"),
    ("Q8", "gens: 2; rel: 1 1 1 1, 1 1 -2 -2, -2 1 2 1"),
    ("SL23", "gens: 3; rel: 1 1 -2 -2 -2, 2 2 2 -3 -3 -3, 3 3 3 -3 -2 -1"),
    ("Z7:Z3", "gens: 2; rel: 1 1 1 1 1 1 1, 2 2 2, -2 1 2 -1 -1"),
    ("D8", "gens: 2; rel: 1 1 1 1, 2 2, 1 2 1 2"),
]


# -- spec parsing ---------------------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    source: str          # "perm", "catalog" or "pres"
    body: str
    label: str

    def build(self) -> PermutationGroup:
        if self.source == "perm":
            gens = parse_permutation_list(self.body)
            if not gens:
                raise ValueError("no generators given")
            return PermutationGroup(gens, len(gens[0]))
        if self.source == "pres":
            return coset_enumeration(parse_presentation(self.body))
        return resolve(self.body)


def parse_group_spec(text: str) -> GroupSpec:
    text = text.strip()
    m = re.fullmatch(r"(perm|catalog|pres)\s*:\s*(.*)", text, re.S)
    if not m:
        raise ValueError(f"group spec must start with perm:, catalog: or pres: (got {text!r})")
    source, body = m.group(1), m.group(2).strip()
    label = body if source == "catalog" else f"{source}:{body}"
    return GroupSpec(source, body, label)


def _split_args(text: str) -> list[str]:
    args, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            args.append("".join(cur).strip())
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    if "".join(cur).strip():
        args.append("".join(cur).strip())
    return args


def _parse_arg(arg: str):
    if re.fullmatch(r"-?\d+", arg):
        return int(arg)
    return resolve(arg)


_resolve_cache: dict[str, PermutationGroup] = {}


def resolve(term: str) -> PermutationGroup:
    """Build a catalog term such as ``S4``, ``dihedral(8)`` or ``direct_product(Q8,Q8)``."""
    term = term.strip()
    if term in _resolve_cache:
        return _resolve_cache[term]
    if term in ALIASES:
        G = resolve(ALIASES[term])
    else:
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?", term, re.S)
        if not m or m.group(1) not in CATALOG:
            raise KeyError(f"unknown catalog group {term!r}")
        args = [_parse_arg(a) for a in _split_args(m.group(2) or "")]
        G = CATALOG[m.group(1)](*args)
    _resolve_cache[term] = G
    return G


def catalog(name: str, *params) -> PermutationGroup:
    """``catalog("dihedral", 8)`` or ``catalog("S4")``."""
    if not params:
        return resolve(name)
    if name not in CATALOG:
        raise KeyError(f"unknown catalog group {name!r}")
    return CATALOG[name](*params)


def catalog_listing() -> list[dict]:
    """Deterministic listing of constructors and aliases."""
    out = [{"kind": "constructor", "name": name} for name in sorted(CATALOG)]
    out += [{"kind": "alias", "name": k, "term": v} for k, v in sorted(ALIASES.items())]
    return out
