"""Splitting densities on explicit finite groups G = Gamma x Omega x Delta.

Omega = (Z/2)^k and Delta = Z/2 are elementary abelian, so an element is
a triple (gamma, omega-bitmask, delta-bit) and products act componentwise
with xor on the abelian parts.  For a subgroup H of Gamma, the
"splitting" elements are those g whose minimal power landing in
H x {1} x Delta in fact lands in H x {1} x {1}; restricting to
conjugation-closed such elements and dividing by |G| yields an exact
density, which is always at least 1 - 1/2^k because every element with
omega != 1 qualifies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .ff import InternalCheckError

MAX_GROUP_ORDER = 5040
_FULL_ASSOCIATIVITY_ORDER = 48
_SPOT_CHECK_TRIPLES = 300

Triple = tuple[int, int, int]


class FiniteGroup:
    """A finite group given by an explicit multiplication table.

    Elements are 0..N-1; ``table[a][b]`` is the index of a*b.  The
    identity and inverse table are located on construction; associativity
    is checked in full for N <= 48 and spot-checked (deterministically)
    for larger tables.
    """

    __slots__ = ("order", "table", "identity", "inverse", "name")

    def __init__(self, table, name: str = ""):
        table = tuple(tuple(row) for row in table)
        n = len(table)
        if n < 1:
            raise ValueError("a group needs at least the identity")
        if n > MAX_GROUP_ORDER:
            raise ValueError(f"group order {n} exceeds the budget {MAX_GROUP_ORDER}")
        if any(len(row) != n for row in table):
            raise ValueError("multiplication table must be square")
        if any(not (0 <= x < n) for row in table for x in row):
            raise ValueError("table entries must be element indices")
        self.order = n
        self.table = table
        self.name = name

        identity = None
        for e in range(n):
            if all(table[e][x] == x and table[x][e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise ValueError("no identity element")
        self.identity = identity

        inverse = [None] * n
        for a in range(n):
            for b in range(n):
                if table[a][b] == identity and table[b][a] == identity:
                    inverse[a] = b
                    break
            if inverse[a] is None:
                raise ValueError(f"element {a} has no inverse")
        self.inverse = tuple(inverse)

        self._check_associativity()

    def _check_associativity(self):
        n = self.order
        t = self.table
        if n <= _FULL_ASSOCIATIVITY_ORDER:
            triples = itertools.product(range(n), repeat=3)
        else:
            state = 123456789
            sample = []
            for _ in range(_SPOT_CHECK_TRIPLES):
                out = []
                for _ in range(3):
                    state = (1103515245 * state + 12345) % (1 << 31)
                    out.append(state % n)
                sample.append(tuple(out))
            triples = sample
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValueError(f"multiplication table not associative at {(a, b, c)}")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    def conjugacy_classes(self) -> list[frozenset[int]]:
        """Classes by full orbit enumeration under conjugation."""
        seen = [False] * self.order
        classes = []
        for g in self.elements():
            if seen[g]:
                continue
            orbit = set()
            for u in self.elements():
                orbit.add(self.mul(self.mul(u, g), self.inverse[u]))
            for x in orbit:
                seen[x] = True
            classes.append(frozenset(orbit))
        return classes

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or self.order})"


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def trivial_group() -> FiniteGroup:
    return FiniteGroup(((0,),), name="trivial")


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1 or n > MAX_GROUP_ORDER:
        raise ValueError("cyclic order out of range")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name=f"C{n}")


def elementary_abelian_2(k: int) -> FiniteGroup:
    if k < 0 or 2**k > MAX_GROUP_ORDER:
        raise ValueError("elementary abelian rank out of range")
    n = 2**k
    table = [[a ^ b for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name=f"(Z/2)^{k}")


def _symmetric_perms(n: int) -> list[tuple[int, ...]]:
    return list(itertools.permutations(range(n)))


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1 or n > 6:
        raise ValueError("symmetric groups are supported for 1 <= n <= 6")
    perms = _symmetric_perms(n)
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(a[b[x]] for x in range(n))] for b in perms]
        for a in perms
    ]
    return FiniteGroup(table, name=f"S{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    n = a.order * b.order
    if n > MAX_GROUP_ORDER:
        raise ValueError(f"product order {n} exceeds the budget {MAX_GROUP_ORDER}")
    table = [
        [
            a.mul(x1, x2) * b.order + b.mul(y1, y2)
            for x2 in a.elements()
            for y2 in b.elements()
        ]
        for x1 in a.elements()
        for y1 in b.elements()
    ]
    name = f"{a.name or '?'}x{b.name or '?'}"
    return FiniteGroup(table, name=name)


def build_group(spec) -> FiniteGroup:
    """Build a group from a dict spec or a short name like "S3" or "Z2"."""
    if isinstance(spec, str):
        return _group_from_name(spec)
    if isinstance(spec, dict):
        kind = spec.get("type")
        if kind == "trivial":
            return trivial_group()
        if kind == "cyclic":
            return cyclic_group(int(spec["n"]))
        if kind == "symmetric":
            return symmetric_group(int(spec["n"]))
        if kind == "elementary_abelian_2":
            return elementary_abelian_2(int(spec["k"]))
        if kind == "product":
            factors = [build_group(s) for s in spec["factors"]]
            if not factors:
                raise ValueError("product needs at least one factor")
            out = factors[0]
            for f in factors[1:]:
                out = direct_product(out, f)
            return out
        raise ValueError(f"unknown group constructor {kind!r}")
    raise ValueError("group spec must be a name or a dict")


def _group_from_name(name: str) -> FiniteGroup:
    text = name.strip()
    low = text.lower()
    if low in ("trivial", "1"):
        return trivial_group()
    if low.startswith("s") and low[1:].isdigit():
        return symmetric_group(int(low[1:]))
    for prefix in ("z/", "z", "c"):
        if low.startswith(prefix) and low[len(prefix):].isdigit():
            return cyclic_group(int(low[len(prefix):]))
    raise ValueError(f"unknown group name {name!r}")


# ---------------------------------------------------------------------------
# Subgroups
# ---------------------------------------------------------------------------


def subgroup_closure(group: FiniteGroup, generators: Iterable[int]) -> frozenset[int]:
    """The subgroup generated by the given element indices."""
    gens = {group.identity}
    for g in generators:
        if not (0 <= g < group.order):
            raise ValueError(f"generator {g} out of range")
        gens.add(g)
        gens.add(group.inv(g))
    elems = set(gens)
    frontier = list(gens)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = group.mul(x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return frozenset(elems)


def is_subgroup(group: FiniteGroup, subset: Iterable[int]) -> bool:
    h = frozenset(subset)
    if group.identity not in h:
        return False
    return all(group.mul(a, b) in h for a in h for b in h) and all(
        group.inv(a) in h for a in h
    )


def all_subgroups(group: FiniteGroup) -> list[frozenset[int]]:
    """Every subgroup, by saturating generator sets one element at a time."""
    start = frozenset({group.identity})
    found = {start}
    frontier = [start]
    while frontier:
        h = frontier.pop()
        for a in group.elements():
            if a in h:
                continue
            k = subgroup_closure(group, tuple(h) + (a,))
            if k not in found:
                found.add(k)
                frontier.append(k)
    return sorted(found, key=lambda h: (len(h), sorted(h)))


def perm_index_from_cycles(n: int, text: str) -> int:
    """Index of a permutation of S_n given in cycle notation, e.g. "(12)(34)".

    Points are the single digits 1..n; the empty string or "()" is the
    identity.
    """
    perm = list(range(n))
    text = text.strip()
    if text in ("", "()", "e"):
        pass
    else:
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"bad cycle notation {text!r}")
        for cyc in text[1:-1].split(")("):
            pts = [int(ch) - 1 for ch in cyc if not ch.isspace()]
            if any(not (0 <= p < n) for p in pts) or len(set(pts)) != len(pts):
                raise ValueError(f"bad cycle {cyc!r} for S{n}")
            for i, p in enumerate(pts):
                perm[p] = pts[(i + 1) % len(pts)]
    perms = _symmetric_perms(n)
    return perms.index(tuple(perm))


# ---------------------------------------------------------------------------
# Splitting density
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitDensityProblem:
    """Gamma, a subgroup H of Gamma and the rank k of Omega = (Z/2)^k."""

    gamma: FiniteGroup
    subgroup: frozenset[int]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "subgroup", frozenset(self.subgroup))
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not is_subgroup(self.gamma, self.subgroup):
            raise ValueError("H must be a genuine subgroup of Gamma")

    @property
    def group_order(self) -> int:
        return self.gamma.order * (2**self.k) * 2

    def elements(self) -> Iterator[Triple]:
        return itertools.product(
            self.gamma.elements(), range(2**self.k), range(2)
        )

    def mul(self, x: Triple, y: Triple) -> Triple:
        return (self.gamma.mul(x[0], y[0]), x[1] ^ y[1], x[2] ^ y[2])


def e_exponent(problem: SplitDensityProblem, g: Triple) -> int:
    """Least e >= 1 with g^e in H x {1} x Delta."""
    gam, om, de = g
    if not (0 <= gam < problem.gamma.order and 0 <= om < 2**problem.k and de in (0, 1)):
        raise ValueError("element outside the group")
    h = g
    e = 1
    while not (h[1] == 0 and h[0] in problem.subgroup):
        h = problem.mul(h, g)
        e += 1
        if e > problem.group_order:
            raise InternalCheckError("exponent search exceeded the group order")
    return e


def _power(problem: SplitDensityProblem, g: Triple, e: int) -> Triple:
    h = (problem.gamma.identity, 0, 0)
    for _ in range(e):
        h = problem.mul(h, g)
    return h


def xi_star(problem: SplitDensityProblem) -> frozenset[Triple]:
    """Elements whose minimal H x {1} x Delta power lands in H x {1} x {1}."""
    out = set()
    for g in problem.elements():
        e = e_exponent(problem, g)
        if _power(problem, g, e)[2] == 0:
            out.add(g)
    return frozenset(out)


def xi(problem: SplitDensityProblem) -> frozenset[Triple]:
    """The conjugation-closed core of xi_star.

    Conjugacy in Gamma x Omega x Delta only moves the Gamma component
    (the other factors are abelian), so a triple belongs exactly when the
    whole Gamma-class times its (omega, delta) tail sits inside xi_star.
    """
    star = xi_star(problem)
    classes = problem.gamma.conjugacy_classes()
    class_of = {}
    for cls in classes:
        for g in cls:
            class_of[g] = cls
    out = set()
    for g in star:
        gam, om, de = g
        if all((x, om, de) in star for x in class_of[gam]):
            out.add(g)
    # closure sanity: conjugating must not leave the set
    for gam, om, de in out:
        if any((x, om, de) not in out for x in class_of[gam]):
            raise InternalCheckError("xi is not closed under conjugation")
    return frozenset(out)


def density(problem: SplitDensityProblem) -> Fraction:
    """|xi| / |G| as an exact fraction in lowest terms."""
    return Fraction(len(xi(problem)), problem.group_order)


@dataclass(frozen=True)
class BoundCertificate:
    density: Fraction
    bound: Fraction
    witness_count: int
    holds: bool


def bound_certificate(problem: SplitDensityProblem) -> BoundCertificate:
    """Exact check of density >= 1 - 1/2^k with the omega != 1 witnesses.

    Every element with nontrivial omega component has even exponent and
    therefore splits; there are exactly (2^k - 1) * 2 * |Gamma| of them
    and the property survives conjugation, so they certify the bound.
    """
    xi_set = xi(problem)
    witnesses = [
        g for g in problem.elements() if g[1] != 0
    ]
    witness_count = len(witnesses)
    expected = (2**problem.k - 1) * 2 * problem.gamma.order
    if witness_count != expected:
        raise InternalCheckError("witness count disagrees with the closed form")
    dens = Fraction(len(xi_set), problem.group_order)
    bound = 1 - Fraction(1, 2**problem.k)
    holds = dens >= bound and all(g in xi_set for g in witnesses)
    return BoundCertificate(density=dens, bound=bound, witness_count=witness_count, holds=holds)
