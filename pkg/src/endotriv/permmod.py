"""Permutation modules k[X] over GF(p) and equivariant maps between them."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fp
from .groups import FiniteGroup, GroupError
from .gsets import GSet, disjoint_union, empty_gset, orbits, point, product


@dataclass(frozen=True, eq=False)
class PermModule:
    basis: GSet
    p: int

    @property
    def group(self) -> FiniteGroup:
        return self.basis.group

    @property
    def dim(self) -> int:
        return self.basis.size

    def rho(self, g: int) -> np.ndarray:
        """Permutation matrix of g: e_x -> e_{gx}."""
        m = fp.zeros(self.dim, self.dim)
        m[self.basis.action[g], np.arange(self.dim)] = 1
        return m


def zero_module(G: FiniteGroup, p: int) -> PermModule:
    return PermModule(empty_gset(G), p)


def unit_module(G: FiniteGroup, p: int) -> PermModule:
    return PermModule(point(G), p)


def _compatible(X: PermModule, Y: PermModule) -> None:
    if X.group is not Y.group or X.p != Y.p:
        raise GroupError("modules over different groups or characteristics")


def is_equivariant(source: PermModule, target: PermModule, matrix: np.ndarray, gens=None) -> bool:
    G = source.group
    ax, ay = source.basis.action, target.basis.action
    for g in G.generators if gens is None else gens:
        # (g.M)[gy, gx] = M[y, x]
        moved = fp.zeros(*matrix.shape)
        moved[np.ix_(ay[g], ax[g])] = matrix
        if not np.array_equal(moved, matrix):
            return False
    return True


@dataclass(frozen=True, eq=False)
class EquivMap:
    source: PermModule
    target: PermModule
    matrix: np.ndarray = field(repr=False)
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        _compatible(self.source, self.target)
        m = fp.reduce(self.matrix, self.source.p).reshape(self.target.dim, self.source.dim)
        if self.check and not is_equivariant(self.source, self.target, m):
            raise GroupError("map is not equivariant")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def p(self) -> int:
        return self.source.p

    def __matmul__(self, other: "EquivMap") -> "EquivMap":
        """Composition self o other."""
        if other.target.dim != self.source.dim:
            raise GroupError("maps are not composable")
        return EquivMap(other.source, self.target, fp.matmul(self.matrix, other.matrix, self.p), check=False)

    def __add__(self, other: "EquivMap") -> "EquivMap":
        return EquivMap(self.source, self.target, self.matrix + other.matrix, check=False)

    def scale(self, c: int) -> "EquivMap":
        return EquivMap(self.source, self.target, self.matrix * c, check=False)

    def is_zero(self) -> bool:
        return not self.matrix.any()


def identity_map(X: PermModule) -> EquivMap:
    return EquivMap(X, X, fp.identity(X.dim), check=False)


def zero_map(X: PermModule, Y: PermModule) -> EquivMap:
    return EquivMap(X, Y, fp.zeros(Y.dim, X.dim), check=False)


def augmentation(X: PermModule) -> EquivMap:
    """k[X] -> k sending every basis element to 1."""
    return EquivMap(X, unit_module(X.group, X.p), np.ones((1, X.dim), dtype=np.int64), check=False)


def hom_basis(X: PermModule, Y: PermModule) -> list[EquivMap]:
    """One 0/1 matrix per G-orbit on Y x X: the orbit-sum basis of Hom_G(kX, kY)."""
    _compatible(X, Y)
    pairs = product(Y.basis, X.basis)
    out = []
    for _, pts in orbits(pairs):
        m = fp.zeros(Y.dim, X.dim)
        pts = np.asarray(pts)
        m[pts // max(X.dim, 1), pts % max(X.dim, 1)] = 1
        out.append(EquivMap(X, Y, m, check=False))
    return out


def combination(basis: list[EquivMap], coeffs, X: PermModule, Y: PermModule) -> EquivMap:
    m = fp.zeros(Y.dim, X.dim)
    for c, b in zip(coeffs, basis):
        if c:
            m += int(c) * b.matrix
    return EquivMap(X, Y, m, check=False)


def random_map(X: PermModule, Y: PermModule, rng: np.random.Generator) -> EquivMap:
    basis = hom_basis(X, Y)
    return combination(basis, rng.integers(0, X.p, len(basis)), X, Y)


def direct_sum(X: PermModule, Y: PermModule) -> PermModule:
    _compatible(X, Y)
    return PermModule(disjoint_union(X.basis, Y.basis), X.p)


def direct_sum_many(G: FiniteGroup, p: int, mods) -> PermModule:
    out = zero_module(G, p)
    for m in mods:
        out = direct_sum(out, m)
    return out


def tensor(X: PermModule, Y: PermModule) -> PermModule:
    """k[X] (x) k[Y] = k[X x Y], pairs in lexicographic order."""
    _compatible(X, Y)
    return PermModule(product(X.basis, Y.basis), X.p)


def tensor_map(f: EquivMap, g: EquivMap) -> EquivMap:
    return EquivMap(
        tensor(f.source, g.source), tensor(f.target, g.target), np.kron(f.matrix, g.matrix), check=False
    )


def dual(X: PermModule) -> PermModule:
    """The permutation basis is self-dual under the basis pairing."""
    return X


def dual_map(f: EquivMap) -> EquivMap:
    return EquivMap(dual(f.target), dual(f.source), f.matrix.T.copy(), check=False)


def evaluation(X: PermModule) -> EquivMap:
    """dual(X) (x) X -> k, pairing e_x with e_y to [x == y]."""
    m = fp.zeros(1, X.dim * X.dim)
    m[0, np.arange(X.dim) * X.dim + np.arange(X.dim)] = 1
    return EquivMap(tensor(dual(X), X), unit_module(X.group, X.p), m, check=False)
