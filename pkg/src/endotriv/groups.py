"""Finite groups given by multiplication tables.

Elements are the integers ``0..n-1`` with ``0`` the identity. Subgroups are
sorted tuples of element indices; the canonical order on subgroups is
``(order, elements)`` and the canonical representative of a conjugacy class
is its minimal member in that order. These orderings fix the coordinates of
every class-function vector the package reads or writes.
"""

from __future__ import annotations

import enum
import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import numpy as np

MAX_ORDER = 128


class GroupError(ValueError):
    """Raised for invalid group data or invalid subgroup arguments."""


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` if ``n == p**k`` with ``k >= 1``, else None."""
    if n < 2:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


class FiniteGroup:
    """A validated multiplication-table group of order at most 128."""

    def __init__(self, table, name: str = ""):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupError("table must be a non-empty square array")
        n = t.shape[0]
        if n > MAX_ORDER:
            raise GroupError(f"order {n} exceeds the cap of {MAX_ORDER}")
        if t.min() < 0 or t.max() >= n:
            raise GroupError("table entries out of range")
        ident = np.arange(n)
        if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
            raise GroupError("element 0 is not the identity")
        srt = np.sort(t, axis=1)
        if not (srt == ident).all() or not (np.sort(t, axis=0) == ident[:, None]).all():
            raise GroupError("table is not a Latin square")
        # (ab)c == a(bc), all triples at once
        if not np.array_equal(t[t, :], t[:, t]):
            raise GroupError("table is not associative")
        t.setflags(write=False)
        self.table = t
        self.order = n
        self.name = name or f"G{n}"
        inv = np.argmax(t == 0, axis=1)
        inv.setflags(write=False)
        self.inverse = inv

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = int(self.table[x, a])
            k += 1
        return k

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def exponent(self) -> int:
        e = 1
        for a in range(self.order):
            o = self.element_order(a)
            e = e * o // np.gcd(e, o)
        return int(e)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by element index."""
        gens: list[int] = []
        span = frozenset([0])
        for a in range(self.order):
            if a not in span:
                gens.append(a)
                span = closure(self, gens)
        return tuple(gens)

    @cached_property
    def subgroups(self) -> tuple["Subgroup", ...]:
        return tuple(_enumerate_subgroups(self))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(tuple(range(self.order)), self)

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup((0,), self)

    def is_p_group(self, p: int) -> bool:
        return self.order == 1 or prime_power(self.order) is not None and prime_power(self.order)[0] == p

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "table": self.table.tolist()}


@dataclass(frozen=True, eq=False)
class Subgroup:
    elements: tuple[int, ...]
    parent: FiniteGroup = field(repr=False)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.elset

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def elset(self) -> frozenset[int]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.elements), self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return self.elset <= other.elset

    def __lt__(self, other: "Subgroup") -> bool:
        return self.elset < other.elset

    def is_p_subgroup(self, p: int) -> bool:
        return self.order == 1 or (prime_power(self.order) or (0,))[0] == p

    def conjugate(self, g: int) -> "Subgroup":
        """g H g^-1"""
        G = self.parent
        return Subgroup(tuple(sorted(G.conj(g, h) for h in self.elements)), G)

    def is_normal_in(self, other: "Subgroup") -> bool:
        return self <= other and all(self.conjugate(g) == self for g in other.elements)

    @property
    def label(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def make_subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Validate an element list as a subgroup of G."""
    els = tuple(sorted(set(int(e) for e in elements)))
    if not els or els[0] != 0:
        raise GroupError("subgroup must contain the identity")
    if els[-1] >= G.order:
        raise GroupError("subgroup element out of range")
    s = frozenset(els)
    for a in els:
        if int(G.inverse[a]) not in s or any(int(G.table[a, b]) not in s for b in els):
            raise GroupError(f"{list(els)} is not closed under the group law")
    if G.order % len(els):
        raise GroupError("subgroup order does not divide the group order")
    return Subgroup(els, G)


def closure(G: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    gens = [g for g in gens if g != 0]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(G.table[x, s])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _enumerate_subgroups(G: FiniteGroup) -> list[Subgroup]:
    # Every subgroup is reached from the trivial one by adjoining one generator at a time.
    found = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for S in frontier:
            for g in range(G.order):
                if g in S:
                    continue
                T = closure(G, itertools.chain(S, [g]))
                if T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    subs = [Subgroup(tuple(sorted(s)), G) for s in found]
    subs.sort(key=lambda s: s.key)
    return subs


def all_subgroups(G: FiniteGroup) -> tuple[Subgroup, ...]:
    return G.subgroups


@dataclass(frozen=True)
class SubgroupClass:
    representative: Subgroup
    members: tuple[Subgroup, ...]

    @property
    def order(self) -> int:
        return self.representative.order

    def __contains__(self, H: Subgroup) -> bool:
        return H in self.members


def conjugacy_classes_of_subgroups(G: FiniteGroup, p: int | None = None) -> tuple[SubgroupClass, ...]:
    """Conjugacy classes of subgroups (optionally only p-subgroups), canonically ordered."""
    cache = G.__dict__.setdefault("_class_cache", {})
    if p in cache:
        return cache[p]
    seen: set[Subgroup] = set()
    classes = []
    for H in G.subgroups:
        if H in seen or (p is not None and not H.is_p_subgroup(p)):
            continue
        members = sorted({H.conjugate(g) for g in range(G.order)}, key=lambda s: s.key)
        seen.update(members)
        classes.append(SubgroupClass(members[0], tuple(members)))
    classes.sort(key=lambda c: c.representative.key)
    result = tuple(classes)
    cache[p] = result
    return result


def class_index(G: FiniteGroup, p: int | None = None) -> dict[Subgroup, int]:
    """Map every member subgroup to the index of its class in canonical order."""
    cache = G.__dict__.setdefault("_class_index_cache", {})
    if p not in cache:
        cache[p] = {
            H: i for i, c in enumerate(conjugacy_classes_of_subgroups(G, p)) for H in c.members
        }
    return cache[p]


def sylow_classes(G: FiniteGroup, p: int) -> list[int]:
    """Indices (into the p-subgroup classes) of the Sylow p-subgroup classes."""
    classes = conjugacy_classes_of_subgroups(G, p)
    top = max(c.order for c in classes)
    return [i for i, c in enumerate(classes) if c.order == top]


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    return Subgroup(tuple(g for g in range(G.order) if H.conjugate(g) == H), G)


def transporter(G: FiniteGroup, H: Subgroup, P: Subgroup) -> list[int]:
    """Elements g with g^-1 H g <= P (the relative normaliser N_G(H, P))."""
    return [g for g in range(G.order) if H.conjugate(int(G.inverse[g])) <= P]


def is_subconjugate(G: FiniteGroup, H: Subgroup, P: Subgroup) -> bool:
    return bool(transporter(G, H, P))


@dataclass(frozen=True, eq=False)
class QuotientGroup:
    """ambient / kernel, with cosets ordered by their minimal element."""

    group: FiniteGroup
    projection: np.ndarray  # parent element -> coset index, -1 outside the ambient subgroup
    kernel: Subgroup
    ambient: Subgroup
    representatives: tuple[int, ...]


def quotient(ambient: Subgroup, kernel: Subgroup, name: str = "") -> QuotientGroup:
    G = ambient.parent
    if not kernel.is_normal_in(ambient):
        raise GroupError("kernel is not normal in the ambient subgroup")
    proj = np.full(G.order, -1, dtype=np.int64)
    reps: list[int] = []
    for x in ambient.elements:
        if proj[x] >= 0:
            continue
        idx = len(reps)
        reps.append(x)
        for k in kernel.elements:
            proj[G.table[x, k]] = idx
    m = len(reps)
    table = [[int(proj[G.table[reps[i], reps[j]]]) for j in range(m)] for i in range(m)]
    proj.setflags(write=False)
    Q = FiniteGroup(table, name or f"{G.name}/{kernel.label}")
    return QuotientGroup(Q, proj, kernel, ambient, tuple(reps))


def weyl(G: FiniteGroup, H: Subgroup) -> QuotientGroup:
    """The Weyl group N_G(H)/H."""
    cache = G.__dict__.setdefault("_weyl_cache", {})
    if H not in cache:
        cache[H] = quotient(normalizer(G, H), H, name=f"{G.name}//{H.label}")
    return cache[H]


def subgroup_as_group(S: Subgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """S as a standalone group; element i of the result is ``S.elements[i]``."""
    G = S.parent
    pos = {g: i for i, g in enumerate(S.elements)}
    table = [[pos[int(G.table[a, b])] for b in S.elements] for a in S.elements]
    return FiniteGroup(table, f"{G.name}|{S.label}"), S.elements


class SectionKind(enum.Enum):
    ELEM_ABELIAN_RANK2 = "elementary abelian of rank 2"
    CYCLIC_P_ODD = "cyclic of odd prime order"
    CYCLIC4 = "cyclic of order 4"
    QUATERNION8 = "quaternion of order 8"
    OTHER = "other"


class Section(NamedTuple):
    kind: SectionKind
    prime: int | None = None


def section_type(N: Subgroup, H: Subgroup) -> Section:
    """Classify H/N for the Borel-Smith conditions."""
    if not N.is_normal_in(H):
        raise GroupError("N is not a normal subgroup of H")
    Q = quotient(H, N).group
    n = Q.order
    pk = prime_power(n)
    if pk is None:
        return Section(SectionKind.OTHER)
    q, k = pk
    if k == 2 and Q.is_abelian and Q.exponent == q:
        return Section(SectionKind.ELEM_ABELIAN_RANK2, q)
    if n == 4 and Q.exponent == 4:
        return Section(SectionKind.CYCLIC4, 2)
    if k == 1 and q % 2 == 1:
        return Section(SectionKind.CYCLIC_P_ODD, q)
    if n == 8 and not Q.is_abelian:
        involutions = sum(1 for a in range(n) if Q.element_order(a) == 2)
        if involutions == 1:
            return Section(SectionKind.QUATERNION8, 2)
    return Section(SectionKind.OTHER)


def index_divisibility_check(G: FiniteGroup, H: Subgroup, p: int) -> bool:
    """p | [K : L] whenever H <= K <= N_G(H), L <= K and H is not contained in L."""
    if not H.is_p_subgroup(p):
        raise GroupError(f"{H.label} is not a {p}-subgroup")
    N = normalizer(G, H)
    for K in G.subgroups:
        if not (H <= K <= N):
            continue
        for L in G.subgroups:
            if L <= K and not H <= L and (K.order // L.order) % p:
                return False
    return True


# -- catalog -------------------------------------------------------------------


def cyclic_table(n: int) -> list[list[int]]:
    """C_n with element i = g^i."""
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def dihedral_table(m: int) -> list[list[int]]:
    """Dihedral group of order 2m; element i + m*j is r^i s^j."""

    def mul(x, y):
        a, j = x % m, x // m
        b, k = y % m, y // m
        return (a + (b if j == 0 else -b)) % m + m * ((j + k) % 2)

    return [[mul(x, y) for y in range(2 * m)] for x in range(2 * m)]


# Q8 element order: 1, -1, i, -i, j, -j, k, -k
_QUAT = {(0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
         (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
         (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
         (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1)}


def quaternion_table() -> list[list[int]]:
    """Q8 as 1,-1,i,-i,j,-j,k,-k (units 0,i,j,k encoded 0..3, sign as the low bit)."""

    def mul(x, y):
        ux, sx = x // 2, -1 if x % 2 else 1
        uy, sy = y // 2, -1 if y % 2 else 1
        u, s = _QUAT[(ux, uy)]
        s *= sx * sy
        return 2 * u + (0 if s == 1 else 1)

    return [[mul(x, y) for y in range(8)] for x in range(8)]


def direct_product_table(a: FiniteGroup, b: FiniteGroup) -> list[list[int]]:
    """(x, y) is encoded as x * |b| + y."""
    nb = b.order
    ta, tb = a.table, b.table
    return [
        [int(ta[x // nb, y // nb]) * nb + int(tb[x % nb, y % nb]) for y in range(a.order * nb)]
        for x in range(a.order * nb)
    ]


_FACTOR = re.compile(r"^(C|D|Q)(\d+)(?:\^(\d+))?$")


def _catalog_factor(tok: str) -> list[FiniteGroup]:
    if tok == "V4":
        tok = "C2^2"
    m = _FACTOR.match(tok)
    if not m:
        raise GroupError(f"unknown catalog group {tok!r}")
    kind, n, power = m.group(1), int(m.group(2)), int(m.group(3) or 1)
    if kind == "C" and n >= 1:
        g = FiniteGroup(cyclic_table(n), f"C{n}")
    elif kind == "D" and n >= 4 and n % 2 == 0:
        g = FiniteGroup(dihedral_table(n // 2), f"D{n}")
    elif kind == "Q" and n == 8:
        g = FiniteGroup(quaternion_table(), "Q8")
    else:
        raise GroupError(f"unknown catalog group {tok!r}")
    return [g] * power


def catalog_group(name: str) -> FiniteGroup:
    """Build a catalog group: C<n>, D<2n>, Q8, V4, powers like C2^2, products like C3xC3."""
    factors: list[FiniteGroup] = []
    for tok in name.strip().split("x"):
        factors.extend(_catalog_factor(tok.strip()))
    g = factors[0]
    for h in factors[1:]:
        if g.order * h.order > MAX_ORDER:
            raise GroupError(f"order exceeds the cap of {MAX_ORDER}")
        g = FiniteGroup(direct_product_table(g, h), "")
    g.name = name.strip()
    return g


def build_group(spec) -> FiniteGroup:
    """Build a group from a catalog name, a group-file path, a JSON dict, or a table."""
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, dict):
        table = spec.get("table")
        if table is None:
            raise GroupError("group document lacks a table")
        if "order" in spec and spec["order"] != len(table):
            raise GroupError("declared order does not match the table")
        return FiniteGroup(table, spec.get("name", ""))
    if isinstance(spec, (str, Path)):
        path = Path(spec)
        if str(spec).endswith(".json") or path.is_file():
            try:
                doc = json.loads(path.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise GroupError(f"cannot read group file {spec}: {exc}") from exc
            return build_group(doc)
        return catalog_group(str(spec))
    if isinstance(spec, Sequence) or isinstance(spec, np.ndarray):
        return FiniteGroup(spec)
    raise GroupError(f"cannot build a group from {spec!r}")
