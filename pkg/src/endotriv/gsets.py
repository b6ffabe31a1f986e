"""Finite G-sets as action tables.

A G-set of size m over a group of order n is stored as an ``n x m`` integer
array whose row ``g`` is the permutation of points induced by ``g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteGroup, GroupError, Subgroup, subgroup_as_group, weyl


@dataclass(frozen=True, eq=False)
class GSet:
    group: FiniteGroup
    action: np.ndarray = field(repr=False)
    orbit_spec: tuple[Subgroup, ...] | None = None

    def __post_init__(self):
        act = np.asarray(self.action, dtype=np.int64).reshape(self.group.order, -1)
        G = self.group
        m = act.shape[1]
        if m:
            if not np.array_equal(act[0], np.arange(m)):
                raise GroupError("identity does not act trivially")
            # act[a][act[b][x]] == act[ab][x]
            for a in range(G.order):
                if not np.array_equal(act[a][act], act[G.table[a]]):
                    raise GroupError("action is not compatible with the group law")
        act.setflags(write=False)
        object.__setattr__(self, "action", act)

    @property
    def size(self) -> int:
        return self.action.shape[1]

    def __len__(self) -> int:
        return self.size

    def act(self, g: int, x: int) -> int:
        return int(self.action[g, x])


def empty_gset(G: FiniteGroup) -> GSet:
    return GSet(G, np.zeros((G.order, 0), dtype=np.int64), ())


def point(G: FiniteGroup) -> GSet:
    return orbit_gset(G, G.whole)


def coset_labels(G: FiniteGroup, H: Subgroup) -> tuple[np.ndarray, list[int]]:
    """Coset index of every element of G (cosets gH ordered by minimal element)."""
    idx = np.full(G.order, -1, dtype=np.int64)
    reps: list[int] = []
    for g in range(G.order):
        if idx[g] < 0:
            idx[G.table[g, list(H.elements)]] = len(reps)
            reps.append(g)
    return idx, reps


def orbit_gset(G: FiniteGroup, H: Subgroup) -> GSet:
    """The left cosets G/H with left translation."""
    cache = G.__dict__.setdefault("_orbit_cache", {})
    if H not in cache:
        idx, reps = coset_labels(G, H)
        act = idx[G.table[:, reps]]
        cache[H] = GSet(G, act, (H,))
    return cache[H]


def disjoint_union(X: GSet, Y: GSet) -> GSet:
    if X.group is not Y.group:
        raise GroupError("G-sets over different groups")
    act = np.hstack([X.action, Y.action + X.size])
    spec = X.orbit_spec + Y.orbit_spec if X.orbit_spec is not None and Y.orbit_spec is not None else None
    return GSet(X.group, act, spec)


def gset_from_spec(G: FiniteGroup, subgroups) -> GSet:
    """The disjoint union of G/H over the listed subgroups, in order."""
    X = empty_gset(G)
    for H in subgroups:
        X = disjoint_union(X, orbit_gset(G, H))
    return X


def product(X: GSet, Y: GSet) -> GSet:
    """Diagonal action on pairs; (x, y) is point ``x * |Y| + y``."""
    if X.group is not Y.group:
        raise GroupError("G-sets over different groups")
    act = (X.action[:, :, None] * Y.size + Y.action[:, None, :]).reshape(X.group.order, -1)
    return GSet(X.group, act)


def stabilizer(X: GSet, x: int) -> Subgroup:
    return Subgroup(tuple(int(g) for g in np.nonzero(X.action[:, x] == x)[0]), X.group)


def orbits(X: GSet) -> list[tuple[Subgroup, tuple[int, ...]]]:
    """Orbits ordered by minimal point, each with the stabiliser of that point."""
    seen = np.zeros(X.size, dtype=bool)
    out = []
    for x in range(X.size):
        if seen[x]:
            continue
        pts = tuple(sorted(set(int(y) for y in X.action[:, x])))
        seen[list(pts)] = True
        out.append((stabilizer(X, x), pts))
    return out


def fixed_point_indices(X: GSet, H: Subgroup) -> tuple[int, ...]:
    rows = X.action[list(H.elements)]
    return tuple(int(x) for x in np.nonzero((rows == np.arange(X.size)).all(axis=0))[0])


def fixed_points(X: GSet, H: Subgroup) -> tuple[GSet, tuple[int, ...]]:
    """X^H as a G//H-set, together with the embedding of its points into X."""
    G = X.group
    W = weyl(G, H)
    emb = fixed_point_indices(X, H)
    pos = np.full(X.size, -1, dtype=np.int64)
    pos[list(emb)] = np.arange(len(emb))
    reps = list(W.representatives)
    act = pos[X.action[reps][:, list(emb)]] if emb else np.zeros((len(reps), 0), dtype=np.int64)
    if (act < 0).any():
        raise GroupError("normaliser does not preserve the fixed points")
    # every element of N_G(H) must act through its coset
    for n in W.ambient.elements:
        if emb and not np.array_equal(pos[X.action[n, list(emb)]], act[W.projection[n]]):
            raise GroupError("Weyl action is not well defined")
    return GSet(W.group, act), emb


def double_cosets(G: FiniteGroup, K: Subgroup, H: Subgroup) -> list[int]:
    """Minimal representatives of the double cosets K g H."""
    seen = np.zeros(G.order, dtype=bool)
    reps = []
    Ke, He = list(K.elements), list(H.elements)
    for g in range(G.order):
        if seen[g]:
            continue
        reps.append(g)
        kg = G.table[Ke, g]
        seen[G.table[kg][:, He].ravel()] = True
    return reps


def restrict(X: GSet, S: Subgroup, R: FiniteGroup | None = None) -> GSet:
    """X with the action restricted to S, as a set over ``subgroup_as_group(S)`` (or R)."""
    if R is None:
        R, _ = subgroup_as_group(S)
    return GSet(R, X.action[list(S.elements)])


def transitive_decomposition(X: GSet) -> tuple[list[Subgroup], np.ndarray]:
    """Identify X with a disjoint union of coset sets.

    Returns the stabilisers ``L_i`` (one per orbit, in orbit order) and an array
    mapping each point of X to its index in ``gset_from_spec(G, L)``.
    """
    G = X.group
    subs, new = [], np.empty(X.size, dtype=np.int64)
    offset = 0
    for L, pts in orbits(X):
        x0 = pts[0]
        idx, reps = coset_labels(G, L)
        for g, c in zip(reps, range(len(reps))):
            new[X.action[g, x0]] = offset + c
        subs.append(L)
        offset += len(reps)
    return subs, new
