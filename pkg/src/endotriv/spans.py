"""Spans of finite G-sets, composition by pullback and linearisation.

A span ``X <-a- S -b-> Y`` decomposes along the orbits of its apex; an orbit
through ``s`` is determined up to isomorphism by the triple
``(Stab(s), a(s), b(s))`` modulo simultaneous conjugation. The minimum of
that triple over the group is the *atom* of the orbit, and a span is
classified by its multiset of atoms.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .groups import GroupError, Subgroup
from .gsets import GSet, coset_labels, fixed_point_indices, orbit_gset, orbits
from .permmod import EquivMap, PermModule

Atom = tuple[tuple[int, ...], int, int]


@dataclass(frozen=True, eq=False)
class Span:
    left: GSet
    apex: GSet
    right: GSet
    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.int64).reshape(-1)
        b = np.asarray(self.b, dtype=np.int64).reshape(-1)
        if not (self.left.group is self.apex.group is self.right.group):
            raise GroupError("span legs over different groups")
        if a.size != self.apex.size or b.size != self.apex.size:
            raise GroupError("leg length does not match the apex")
        # a(g s) == g a(s) for all g, s
        if self.apex.size and (
            not np.array_equal(a[self.apex.action], self.left.action[:, a])
            or not np.array_equal(b[self.apex.action], self.right.action[:, b])
        ):
            raise GroupError("span legs are not equivariant")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


def identity_span(X: GSet) -> Span:
    ids = np.arange(X.size)
    return Span(X, X, X, ids, ids)


def _atom(span: Span, s: int, L: Subgroup) -> Atom:
    G = span.apex.group
    best = None
    for g in range(G.order):
        cand = (L.conjugate(g).key, int(span.left.action[g, span.a[s]]), int(span.right.action[g, span.b[s]]))
        if best is None or cand < best:
            best = cand
    (_, els), x, y = best
    return (els, x, y)


def canonicalize(span: Span) -> Counter:
    """Multiset of atoms; two spans are isomorphic iff these agree."""
    return Counter(_atom(span, pts[0], L) for L, pts in orbits(span.apex))


@dataclass(frozen=True, eq=False)
class BurnsideElement:
    """A formal integer combination of span atoms from ``left`` to ``right``."""

    left: GSet
    right: GSet
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {k: v for k, v in sorted(self.coeffs.items()) if v})

    def __eq__(self, other) -> bool:
        return self.left is other.left and self.right is other.right and self.coeffs == other.coeffs

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        c = Counter(self.coeffs)
        for k, v in other.coeffs.items():
            c[k] += v
        return BurnsideElement(self.left, self.right, dict(c))

    def __sub__(self, other: "BurnsideElement") -> "BurnsideElement":
        return self + other.scale(-1)

    def scale(self, n: int) -> "BurnsideElement":
        return BurnsideElement(self.left, self.right, {k: n * v for k, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs


def element(span: Span) -> BurnsideElement:
    return BurnsideElement(span.left, span.right, dict(canonicalize(span)))


def atom_span(left: GSet, right: GSet, atom: Atom) -> Span:
    """The transitive span G/L -> (x, y) realising an atom."""
    G = left.group
    L = Subgroup(atom[0], G)
    _, reps = coset_labels(G, L)
    apex = orbit_gset(G, L)
    a = left.action[reps, atom[1]]
    b = right.action[reps, atom[2]]
    return Span(left, apex, right, a, b)


def compose_spans(s: Span, t: Span) -> Span:
    """s o t for t: X -> Y and s: Y -> Z, apex the fibre product over Y."""
    if t.right is not s.left and not np.array_equal(t.right.action, s.left.action):
        raise GroupError("middle G-sets differ")
    u, v = np.nonzero(t.b[:, None] == s.a[None, :])
    nv = s.apex.size
    pairs = u * nv + v
    pos = {int(q): i for i, q in enumerate(pairs)}
    act = np.array(
        [[pos[int(t.apex.action[g, uu] * nv + s.apex.action[g, vv])] for uu, vv in zip(u, v)]
         for g in range(s.apex.group.order)],
        dtype=np.int64,
    ).reshape(s.apex.group.order, -1)
    apex = GSet(s.apex.group, act)
    return Span(t.left, apex, s.right, t.a[u], s.b[v])


def compose(s: BurnsideElement, t: BurnsideElement) -> BurnsideElement:
    """Bilinear composition s o t."""
    out = BurnsideElement(t.left, s.right, {})
    for at, ct in t.coeffs.items():
        st = atom_span(t.left, t.right, at)
        for as_, cs in s.coeffs.items():
            ss = atom_span(s.left, s.right, as_)
            out = out + element(compose_spans(ss, st)).scale(ct * cs)
    return out


def linearise_span(span: Span, p: int) -> np.ndarray:
    m = np.zeros((span.right.size, span.left.size), dtype=np.int64)
    np.add.at(m, (span.b, span.a), 1)
    return m % p


def linearise(e: BurnsideElement, p: int) -> EquivMap:
    """M[y, x] = #{s : a(s) = x, b(s) = y} mod p, extended linearly."""
    m = np.zeros((e.right.size, e.left.size), dtype=np.int64)
    for at, c in e.coeffs.items():
        m += c * linearise_span(atom_span(e.left, e.right, at), p)
    return EquivMap(PermModule(e.left, p), PermModule(e.right, p), m, check=False)


def hom_atoms(left: GSet, right: GSet) -> list[Atom]:
    """The free basis of atoms between two G-sets."""
    G = left.group
    seen = set()
    for L in G.subgroups:
        xs = fixed_point_indices(left, L)
        ys = fixed_point_indices(right, L)
        for x in xs:
            for y in ys:
                sp = atom_span(left, right, (L.elements, x, y))
                seen.update(canonicalize(sp).keys())
    return sorted(seen)


def random_element(left: GSet, right: GSet, rng: np.random.Generator, terms: int = 3) -> BurnsideElement:
    atoms = hom_atoms(left, right)
    if not atoms:
        return BurnsideElement(left, right, {})
    c = Counter()
    for _ in range(terms):
        c[atoms[int(rng.integers(len(atoms)))]] += int(rng.integers(-2, 3))
    return BurnsideElement(left, right, dict(c))


def projection(G, K: Subgroup, H: Subgroup) -> np.ndarray:
    """The G-map G/K -> G/H, gK -> gH, as a point array (requires K <= H)."""
    if not K <= H:
        raise GroupError("projection G/K -> G/H needs K <= H")
    _, reps = coset_labels(G, K)
    idx, _ = coset_labels(G, H)
    return idx[reps]


def restriction_induction_span(G, K: Subgroup, H: Subgroup) -> Span:
    """G/H <- G/K -> G/H with both legs the projection."""
    q = projection(G, K, H)
    XH = orbit_gset(G, H)
    return Span(XH, orbit_gset(G, K), XH, q, q)
