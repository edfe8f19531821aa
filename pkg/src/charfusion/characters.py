"""Character tables (Dixon-Schneider), characters of degree n and fusion.

Tables are computed modulo a prime ``l`` with ``l = 1 (mod exp G)`` and
``l > 2 sqrt|G|``: common eigenvectors of the class matrices give the central
characters mod ``l``, and the exact values are recovered from eigenvalue
multiplicities, which are small integers and therefore determined by their
residues.  Every finished table is checked for exact row and column
orthogonality before it is returned.
"""

from __future__ import annotations

from functools import cached_property
from math import isqrt
from typing import Iterator, Sequence

from . import config
from .cyclotomic import Cyclotomic, reduce_integer_vector
from .errors import CapExceeded, NotASubgroup, TableInconsistency
from .group import PermutationGroup
from .perm import Permutation
from .structure import ConjugacyClasses, conjugacy_classes, p_part, prime_divisors, sylow_subgroup

__all__ = [
    "ClassFunction",
    "Character",
    "CharacterTable",
    "character_table",
    "count_degree_n_characters",
    "degree_n_characters",
    "restrict",
    "are_G_conjugate",
    "fusion_partition",
    "respects_fusion",
    "extend_to_class_function",
    "fusion_stable_characters",
]


# -- arithmetic mod l --------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime ``l = 1 (mod exponent)`` with ``l > 2 * isqrt(order)``."""
    bound = 2 * isqrt(order)
    l = exponent + 1
    while l <= bound or not _is_prime(l):
        l += exponent
    return l


def _primitive_root(l: int) -> int:
    factors = prime_divisors(l - 1)
    for g in range(2, l):
        if all(pow(g, (l - 1) // q, l) != 1 for q in factors):
            return g
    return 1  # l == 2


def _rref(rows: list[list[int]], l: int) -> tuple[list[list[int]], list[int]]:
    """Row echelon basis of the span of ``rows`` over F_l, and its pivot columns."""
    m = [r[:] for r in rows]
    pivots: list[int] = []
    ncols = len(m[0]) if m else 0
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] % l), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, l)
        m[rank] = [(x * inv) % l for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] % l:
                f = m[i][c]
                row = m[rank]
                m[i] = [(a - f * b) % l for a, b in zip(m[i], row)]
        pivots.append(c)
        rank += 1
        if rank == len(m):
            break
    return m[:rank], pivots


def _left_kernel(R: list[list[int]], l: int) -> list[list[int]]:
    """Basis of ``{v : v R = 0}`` over F_l."""
    d = len(R)
    # v R = 0  <=>  R^T v^T = 0
    T = [[R[i][j] % l for i in range(d)] for j in range(d)]
    E, piv = _rref(T, l)
    free = [c for c in range(d) if c not in piv]
    out = []
    for f in free:
        v = [0] * d
        v[f] = 1
        for row, c in zip(E, piv):
            v[c] = (-row[f]) % l
        out.append(v)
    return out


# -- class functions ---------------------------------------------------------

class ClassFunction:
    """A function on ``group`` constant on conjugacy classes, valued in Q(zeta)."""

    def __init__(self, group: PermutationGroup, values: Sequence[Cyclotomic],
                 classes: ConjugacyClasses | None = None):
        self.group = group
        self.classes = classes if classes is not None else conjugacy_classes(group)
        vals = tuple(values)
        if len(vals) != len(self.classes):
            raise ValueError(f"{len(vals)} values for {len(self.classes)} classes")
        self._values = vals

    @property
    def values(self) -> tuple[Cyclotomic, ...]:
        return self._values

    def __call__(self, g: Permutation) -> Cyclotomic:
        return self.values[self.classes.index(g)]

    @property
    def degree(self) -> Cyclotomic:
        return self.values[0]

    def inner(self, other: "ClassFunction") -> Cyclotomic:
        """``<f, g> = |G|^-1 sum_x f(x) conj(g(x))``."""
        if other.group is not self.group and other.group != self.group:
            raise ValueError("class functions on different groups")
        total = Cyclotomic.zero()
        for h, a, b in zip(self.classes.sizes, self.values, other.values):
            total = total + (a * b.conjugate()) * h
        return total / self.group.order

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)], self.classes)

    def __mul__(self, other) -> "ClassFunction":
        if isinstance(other, ClassFunction):
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)], self.classes)
        return ClassFunction(self.group, [a * other for a in self.values], self.classes)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group == other.group and self.values == other.values

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return "ClassFunction(" + ", ".join(str(v) for v in self.values) + ")"


class Character(ClassFunction):
    """A character given by multiplicities of the irreducibles of ``table``."""

    def __init__(self, table: "CharacterTable", multiplicities: Sequence[int]):
        mult = tuple(int(m) for m in multiplicities)
        if len(mult) != len(table.degrees) or any(m < 0 for m in mult):
            raise ValueError("multiplicities must be one non-negative integer per irreducible")
        self.table = table
        self.group = table.group
        self.classes = table.classes
        self.multiplicities = mult
        self.degree_int = sum(m * d for m, d in zip(mult, table.degrees))

    @cached_property
    def _cached_values(self) -> tuple[Cyclotomic, ...]:
        e = self.table.conductor
        acc = [[0] * e for _ in self.classes.representatives]
        for m, irr in zip(self.multiplicities, self.table._exponent_form):
            if not m:
                continue
            for k, terms in enumerate(irr):
                row = acc[k]
                for a, c in terms:
                    row[a] += m * c
        return tuple(Cyclotomic.from_exponents(e, enumerate(row)) for row in acc)

    @property
    def values(self) -> tuple[Cyclotomic, ...]:
        return self._cached_values

    @property
    def degree(self) -> int:  # type: ignore[override]
        return self.degree_int

    def is_irreducible(self) -> bool:
        return sum(self.multiplicities) == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, Character) and other.table is self.table:
            return self.multiplicities == other.multiplicities
        return ClassFunction.__eq__(self, other)

    def __hash__(self) -> int:
        return hash((id(self.table), self.multiplicities))

    def __repr__(self) -> str:
        return f"Character(degree={self.degree_int}, multiplicities={self.multiplicities})"


class CharacterTable:
    """Irreducible characters of ``group``; rows ordered with the trivial character first."""

    def __init__(self, group: PermutationGroup, classes: ConjugacyClasses, conductor: int,
                 exponent_form: list[list[tuple[tuple[int, int], ...]]]):
        self.group = group
        self.classes = classes
        self.conductor = conductor
        # exponent_form[i][k]: pairs (a, c) meaning chi_i(g_k) = sum c * zeta^a
        self._exponent_form = exponent_form
        self.irreducibles: list[tuple[Cyclotomic, ...]] = [
            tuple(Cyclotomic.from_exponents(conductor, terms) for terms in row) for row in exponent_form
        ]
        self.degrees: list[int] = [sum(c for _, c in row[0]) for row in exponent_form]

    def __len__(self) -> int:
        return len(self.degrees)

    def __repr__(self) -> str:
        return f"<CharacterTable order={self.group.order} degrees={self.degrees}>"

    def irreducible(self, i: int) -> Character:
        mult = [0] * len(self)
        mult[i] = 1
        return Character(self, mult)

    def character(self, multiplicities: Sequence[int]) -> Character:
        return Character(self, multiplicities)

    def trivial(self) -> Character:
        return self.irreducible(0)

    def regular(self) -> Character:
        return Character(self, self.degrees)

    def linear_indices(self) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == 1]

    def multiplicities(self, f: ClassFunction) -> list[Cyclotomic]:
        """Inner products of ``f`` with every irreducible."""
        return [f.inner(self.irreducible(i)) for i in range(len(self))]

    @cached_property
    def _float_dual(self) -> list[list[complex]]:
        # h_k * conj(chi_i(g_k)) / |G|, for guessing multiplicities
        n = self.group.order
        return [[h * v.to_complex().conjugate() / n for h, v in zip(self.classes.sizes, row)]
                for row in self.irreducibles]

    def _guess(self, f: ClassFunction) -> Character | None:
        fv = [v.to_complex() for v in f.values]
        mult = []
        for row in self._float_dual:
            x = sum(a * b for a, b in zip(fv, row))
            m = round(x.real)
            if m < 0 or abs(x - m) > 1e-6:
                return None
            mult.append(m)
        return Character(self, mult)

    def decompose(self, f: ClassFunction) -> Character | None:
        """``f`` as a character of this table, or None if it is not one."""
        # a floating-point guess, accepted only after an exact comparison of values
        guess = self._guess(f)
        if guess is not None and guess.values == tuple(f.values):
            return guess
        mult = []
        for v in self.multiplicities(f):
            if not v.is_integer() or v.to_fraction() < 0:
                return None
            mult.append(int(v.to_fraction()))
        chi = Character(self, mult)
        return chi if chi.values == tuple(f.values) else None

    def to_json(self) -> dict:
        return {
            "order": self.group.order,
            "conductor": self.conductor,
            "class_sizes": list(self.classes.sizes),
            "class_representatives": [str(r) for r in self.classes.representatives],
            "degrees": list(self.degrees),
            "irreducibles": [[v.to_json() for v in row] for row in self.irreducibles],
        }


# -- Dixon-Schneider ---------------------------------------------------------

def _class_matrix(cc: ConjugacyClasses, j: int, l: int) -> list[list[int]]:
    """``A[m][k] = #{x in C_j : x^-1 z_m in C_k} mod l`` for class reps ``z_m``."""
    r = len(cc)
    A = [[0] * r for _ in range(r)]
    members = [x.inverse() for x in cc.members(j)]
    for m, z in enumerate(cc.representatives):
        row = A[m]
        for xi in members:
            row[cc.class_index[xi * z]] += 1
    for row in A:
        for k in range(r):
            row[k] %= l
    return A


def _split(space: list[list[int]], pivots: list[int], A: list[list[int]], l: int) -> list[tuple[list[list[int]], list[int]]]:
    d = len(space)
    r = len(A)
    BA = [[sum(v[m] * A[m][k] for m in range(r) if v[m]) % l for k in range(r)] for v in space]
    R = [[row[c] for c in pivots] for row in BA]
    parts = []
    found = 0
    for lam in range(l):
        M = [[(R[i][j] - (lam if i == j else 0)) % l for j in range(d)] for i in range(d)]
        ker = _left_kernel(M, l)
        if not ker:
            continue
        vecs = [[sum(c * space[i][k] for i, c in enumerate(v)) % l for k in range(r)] for v in ker]
        parts.append(_rref(vecs, l))
        found += len(ker)
        if found == d:
            break
    if found != d:
        raise TableInconsistency("class matrix is not diagonalisable modulo the chosen prime")
    return parts


def _compute_table(G: PermutationGroup, cap: int | None) -> CharacterTable:
    cap = config.ENUMERATION_CAP if cap is None else cap
    if G.order > cap:
        raise CapExceeded("group order for a character table", G.order, cap)
    cc = conjugacy_classes(G)
    r = len(cc)
    order = G.order
    e = G.exponent
    l = dixon_prime(order, e)
    sizes = cc.sizes

    spaces = [([[1 if i == k else 0 for k in range(r)] for i in range(r)], list(range(r)))]
    for j in range(1, r):
        if all(len(s) == 1 for s, _ in spaces):
            break
        A = _class_matrix(cc, j, l)
        nxt = []
        for space, piv in spaces:
            nxt.extend([(space, piv)] if len(space) == 1 else _split(space, piv, A, l))
        spaces = nxt
    if len(spaces) != r:
        raise TableInconsistency(f"found {len(spaces)} common eigenspaces for {r} classes")

    inv_class = [cc.class_index[g.inverse()] for g in cc.representatives]
    rep_orders = [g.order() for g in cc.representatives]
    power_maps = []
    for g in cc.representatives:
        pm, x = [], G.identity
        for _ in range(g.order()):
            pm.append(cc.class_index[x])
            x = x * g
        power_maps.append(pm)
    z = pow(_primitive_root(l), (l - 1) // e, l)
    zpow = [pow(z, i, l) for i in range(e)]

    rows = []
    for space, _ in spaces:
        v = space[0]
        if v[0] % l == 0:
            raise TableInconsistency("central character vanishes on the identity class")
        s = pow(v[0], -1, l)
        omega = [(x * s) % l for x in v]
        norm = sum(omega[k] * omega[inv_class[k]] * pow(sizes[k], -1, l) for k in range(r)) % l
        d2 = (order * pow(norm, -1, l)) % l
        d = next((d for d in range(1, isqrt(order) + 1) if (d * d) % l == d2), None)
        if d is None:
            raise TableInconsistency("no admissible degree for a central character")
        theta = [(d * omega[k] * pow(sizes[k], -1, l)) % l for k in range(r)]
        row = []
        for k in range(r):
            o = rep_orders[k]
            step = e // o
            inv_o = pow(o, -1, l)
            vals = [theta[c] for c in power_maps[k]]
            terms = []
            total = 0
            for sidx in range(o):
                # m_s = o^-1 sum_t theta(g^t) z_o^(-s t)
                m = (inv_o * sum(v * zpow[(-sidx * t * step) % e] for t, v in enumerate(vals))) % l
                if m > d:
                    raise TableInconsistency("eigenvalue multiplicity out of range")
                if m:
                    terms.append((sidx * (e // o), m))
                    total += m
            if total != d:
                raise TableInconsistency("eigenvalue multiplicities do not add up to the degree")
            row.append(tuple(terms))
        rows.append(row)

    def key(row):
        deg = sum(c for _, c in row[0])
        trivial = all(t == ((0, 1),) for t in row)
        return (deg, not trivial, tuple(Cyclotomic.from_exponents(e, t).coeffs for t in row))
    rows.sort(key=key)
    table = CharacterTable(G, cc, e, rows)
    _verify_orthogonality(table)
    return table


def _is_rational_integer(acc: list[int], e: int, value: int) -> bool:
    red = reduce_integer_vector(acc, e)
    return red[0] == value and not any(red[1:])


def _verify_orthogonality(T: CharacterTable) -> None:
    """Exact row and column orthogonality and the sum of squared degrees."""
    e = T.conductor
    forms = T._exponent_form
    sizes = T.classes.sizes
    order = T.group.order
    r = len(forms)
    if sum(d * d for d in T.degrees) != order:
        raise TableInconsistency("sum of squared degrees differs from the group order")
    for i in range(r):
        for j in range(i, r):
            acc = [0] * e
            for k in range(r):
                h = sizes[k]
                for a, ca in forms[i][k]:
                    for b, cb in forms[j][k]:
                        acc[(a - b) % e] += h * ca * cb
            if not _is_rational_integer(acc, e, order if i == j else 0):
                raise TableInconsistency(f"rows {i} and {j} are not orthogonal")
    for k in range(r):
        for m in range(k, r):
            acc = [0] * e
            for i in range(r):
                for a, ca in forms[i][k]:
                    for b, cb in forms[i][m]:
                        acc[(a - b) % e] += ca * cb
            want = order // sizes[k] if k == m else 0
            if not _is_rational_integer(acc, e, want):
                raise TableInconsistency(f"columns {k} and {m} are not orthogonal")


def character_table(G: PermutationGroup, cap: int | None = None) -> CharacterTable:
    """The exact character table of ``G`` (memoised on the group)."""
    return G.memo("character_table", lambda: _compute_table(G, cap))


# -- degree-n characters -----------------------------------------------------

def _suffix_counts(degrees: Sequence[int], n: int) -> list[list[int]]:
    """``ways[i][m]`` = number of ways to write m with degrees[i:]."""
    r = len(degrees)
    ways = [[0] * (n + 1) for _ in range(r + 1)]
    ways[r][0] = 1
    for i in range(r - 1, -1, -1):
        d = degrees[i]
        nxt, cur = ways[i + 1], ways[i]
        for m in range(n + 1):
            cur[m] = nxt[m] + (cur[m - d] if m >= d else 0)
    return ways


def count_degree_n_characters(T: CharacterTable, n: int) -> int:
    if n < 1:
        raise ValueError("degree must be positive")
    return _suffix_counts(T.degrees, n)[0][n]


def degree_n_characters(T: CharacterTable, n: int, cap: int | None = None) -> Iterator[Character]:
    """Every character of degree ``n``, in lexicographic order of multiplicities.

    The total count is checked against ``cap`` before anything is yielded.
    """
    cap = config.CHARACTER_COUNT_CAP if cap is None else cap
    if n < 1:
        raise ValueError("degree must be positive")
    degrees = T.degrees
    ways = _suffix_counts(degrees, n)
    if ways[0][n] > cap:
        raise CapExceeded("number of degree-n characters", ways[0][n], cap)
    r = len(degrees)

    def walk(i: int, rem: int, prefix: list[int]) -> Iterator[Character]:
        if i == r:
            yield Character(T, prefix)
            return
        d = degrees[i]
        for m in range(rem // d + 1):
            if ways[i + 1][rem - m * d]:
                prefix.append(m)
                yield from walk(i + 1, rem - m * d, prefix)
                prefix.pop()

    return walk(0, n, [])


# -- restriction and fusion --------------------------------------------------

def restrict(chi: ClassFunction, H: PermutationGroup, check: bool = True) -> ClassFunction:
    """The restriction of a class function of ``G`` to the subgroup ``H``.

    For a character the result is also checked to decompose into
    irreducibles of ``H`` with non-negative integer multiplicities.
    """
    G = chi.group
    if not H.is_subgroup_of(G):
        raise NotASubgroup("restriction target is not a subgroup")
    hc = conjugacy_classes(H)
    res = ClassFunction(H, [chi(g) for g in hc.representatives], hc)
    if check and isinstance(chi, Character):
        if character_table(H).decompose(res) is None:
            raise TableInconsistency("restriction of a character is not a character")
    return res


def are_G_conjugate(G: PermutationGroup, a: Permutation, b: Permutation) -> Permutation | None:
    """Some ``g`` in ``G`` with ``g^-1 a g == b``, or None."""
    if a not in G or b not in G:
        raise NotASubgroup("elements must lie in the group")
    return conjugacy_classes(G).conjugator(a, b)


def _sylow_prime(P: PermutationGroup, G: PermutationGroup) -> int | None:
    if not P.is_subgroup_of(G):
        raise NotASubgroup("character is not defined on a subgroup of the ambient group")
    if P.order == 1:
        return None
    ps = prime_divisors(P.order)
    if len(ps) != 1 or p_part(G.order, ps[0]) != P.order:
        raise ValueError("character is not defined on a Sylow subgroup of the ambient group")
    return ps[0]


def fusion_partition(G: PermutationGroup, P: PermutationGroup) -> list[list[int]]:
    """Classes of ``P`` grouped by the ``G``-class containing them."""
    def compute():
        gcc = conjugacy_classes(G)
        pcc = conjugacy_classes(P)
        groups: dict[int, list[int]] = {}
        for k, x in enumerate(pcc.representatives):
            groups.setdefault(gcc.class_index[x], []).append(k)
        return list(groups.values())
    return G.memo(("fusion_partition", P.generators), compute)


def respects_fusion(chi: ClassFunction, G: PermutationGroup) -> bool:
    """Whether ``chi`` (on a Sylow subgroup of ``G``) is constant on ``G``-fused classes."""
    _sylow_prime(chi.group, G)
    vals = chi.values
    return all(all(vals[k] == vals[block[0]] for k in block[1:])
               for block in fusion_partition(G, chi.group))


def extend_to_class_function(chi: ClassFunction, G: PermutationGroup) -> ClassFunction | None:
    """A class function on ``G`` restricting to ``chi``, zero off the subgroup; None if none exists."""
    P = chi.group
    if not P.is_subgroup_of(G):
        raise NotASubgroup("character is not defined on a subgroup")
    gcc = conjugacy_classes(G)
    vals: list[Cyclotomic | None] = [None] * len(gcc)
    for k, x in enumerate(chi.classes.representatives):
        gi = gcc.class_index[x]
        if vals[gi] is None:
            vals[gi] = chi.values[k]
        elif vals[gi] != chi.values[k]:
            return None
    ext = ClassFunction(G, [v if v is not None else Cyclotomic.zero() for v in vals], gcc)
    if restrict(ext, P, check=False).values != tuple(chi.values):
        return None
    return ext


def fusion_stable_characters(G: PermutationGroup, p: int, n: int, sylow: PermutationGroup | None = None,
                             cap: int | None = None, check: bool = True) -> list[Character]:
    """Degree-``n`` characters of a Sylow ``p``-subgroup constant on ``G``-fused classes.

    With ``check`` the result is compared against the characters that extend
    to class functions on ``G``; a disagreement raises.
    """
    P = sylow_subgroup(G, p) if sylow is None else sylow
    if P.order != p_part(G.order, p) or not P.is_subgroup_of(G):
        raise ValueError("not a Sylow subgroup")
    T = character_table(P)
    blocks = [b for b in fusion_partition(G, P) if len(b) > 1]
    out = []
    for chi in degree_n_characters(T, n, cap):
        vals = chi.values
        ok = all(all(vals[k] == vals[b[0]] for k in b[1:]) for b in blocks)
        if check and ok != (extend_to_class_function(chi, G) is not None):
            raise TableInconsistency("fusion-stable characters disagree with extendable ones")
        if ok:
            out.append(chi)
    return out
