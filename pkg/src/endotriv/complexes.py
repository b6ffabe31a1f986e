"""Bounded chain complexes of permutation modules over GF(p).

Indexing is homological: ``d[n]`` maps degree ``n`` to degree ``n - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fp
from .groups import FiniteGroup, GroupError, Subgroup
from .gsets import orbit_gset
from .permmod import (
    EquivMap,
    PermModule,
    augmentation,
    direct_sum,
    direct_sum_many,
    hom_basis,
    identity_map,
    is_equivariant,
    tensor as tensor_modules,
    unit_module,
    zero_module,
)


class ComplexError(ValueError):
    """Raised when a complex fails validation (d o d != 0, bad maps)."""


class Complex:
    """Modules ``modules[n]`` for ``lo <= n <= hi`` and differentials ``diffs[n]``."""

    def __init__(self, group: FiniteGroup, p: int, modules: dict, diffs: dict | None = None, check: bool = True):
        mods = {int(n): m for n, m in modules.items()}
        lo, hi = (min(mods), max(mods)) if mods else (0, -1)
        for n in range(lo, hi + 1):
            mods.setdefault(n, zero_module(group, p))
        for m in mods.values():
            if m.group is not group or m.p != p:
                raise ComplexError("module over the wrong group or characteristic")
        ds = {}
        for n in range(lo + 1, hi + 1):
            f = (diffs or {}).get(n)
            src, tgt = mods[n], mods[n - 1]
            mat = fp.zeros(tgt.dim, src.dim) if f is None else (f.matrix if isinstance(f, EquivMap) else f)
            mat = fp.reduce(mat, p)
            if mat.shape != (tgt.dim, src.dim):
                raise ComplexError(f"differential in degree {n} has shape {mat.shape}, expected {(tgt.dim, src.dim)}")
            if check and not is_equivariant(src, tgt, mat):
                raise ComplexError(f"differential in degree {n} is not equivariant")
            ds[n] = EquivMap(src, tgt, mat, check=False)
        for n in range(lo + 2, hi + 1):
            if fp.matmul(ds[n - 1].matrix, ds[n].matrix, p).any():
                raise ComplexError(f"d o d != 0 at degree {n}")
        self.group = group
        self.p = p
        self.modules = mods
        self.diffs = ds

    def __repr__(self) -> str:
        return f"Complex({self.group.name}, p={self.p}, dims={self.dims()})"

    @property
    def lo(self) -> int:
        return min(self.modules) if self.modules else 0

    @property
    def hi(self) -> int:
        return max(self.modules) if self.modules else -1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def module(self, n: int) -> PermModule:
        return self.modules.get(n) or zero_module(self.group, self.p)

    def d(self, n: int) -> np.ndarray:
        """Matrix of the differential from degree n to n-1 (possibly empty)."""
        if n in self.diffs:
            return self.diffs[n].matrix
        return fp.zeros(self.module(n - 1).dim, self.module(n).dim)

    def dims(self) -> dict[int, int]:
        return {n: m.dim for n, m in self.modules.items()}

    def euler(self) -> int:
        return sum((-1) ** n * m.dim for n, m in self.modules.items())

    def trimmed(self) -> "Complex":
        """Drop zero modules at both ends."""
        nz = [n for n, m in self.modules.items() if m.dim]
        if not nz:
            return Complex(self.group, self.p, {})
        a, b = min(nz), max(nz)
        return Complex(
            self.group, self.p,
            {n: self.modules[n] for n in range(a, b + 1)},
            {n: self.diffs[n] for n in range(a + 1, b + 1)}, check=False,
        )

    def same_as(self, other: "Complex") -> bool:
        """Equal degree by degree: same point actions and same matrices."""
        x, y = self.trimmed(), other.trimmed()
        if list(x.degrees) != list(y.degrees) or x.p != y.p:
            return False
        for n in x.degrees:
            if not np.array_equal(x.modules[n].basis.action, y.modules[n].basis.action):
                return False
            if not np.array_equal(x.d(n), y.d(n)):
                return False
        return True


def unit(G: FiniteGroup, p: int) -> Complex:
    """k = k[G/G] in degree 0."""
    return Complex(G, p, {0: unit_module(G, p)})


def two_term(f: EquivMap, top: int = 1) -> Complex:
    """The complex f: source -> target in degrees top -> top - 1."""
    return Complex(f.source.group, f.p, {top: f.source, top - 1: f.target}, {top: f})


def augmentation_complex(G: FiniteGroup, H: Subgroup, p: int) -> Complex:
    """[k(G/H) -> k], augmentation from degree 1 to degree 0."""
    return two_term(augmentation(PermModule(orbit_gset(G, H), p)))


def shift(X: Complex, s: int) -> Complex:
    sign = -1 if s % 2 else 1
    return Complex(
        X.group, X.p,
        {n + s: m for n, m in X.modules.items()},
        {n + s: sign * f.matrix for n, f in X.diffs.items()}, check=False,
    )


def direct_sum_complex(X: Complex, Y: Complex) -> Complex:
    if X.group is not Y.group or X.p != Y.p:
        raise ComplexError("complexes over different groups or characteristics")
    lo, hi = min(X.lo, Y.lo), max(X.hi, Y.hi)
    if X.hi < X.lo:
        lo, hi = Y.lo, Y.hi
    elif Y.hi < Y.lo:
        lo, hi = X.lo, X.hi
    mods, ds = {}, {}
    for n in range(lo, hi + 1):
        mods[n] = direct_sum(X.module(n), Y.module(n))
    for n in range(lo + 1, hi + 1):
        a, b = X.d(n), Y.d(n)
        m = fp.zeros(a.shape[0] + b.shape[0], a.shape[1] + b.shape[1])
        m[: a.shape[0], : a.shape[1]] = a
        m[a.shape[0]:, a.shape[1]:] = b
        ds[n] = m
    return Complex(X.group, X.p, mods, ds, check=False)


def tensor(X: Complex, Y: Complex) -> Complex:
    """Total complex: d(x (x) y) = dx (x) y + (-1)^i x (x) dy."""
    if X.group is not Y.group or X.p != Y.p:
        raise ComplexError("complexes over different groups or characteristics")
    G, p = X.group, X.p
    if X.hi < X.lo or Y.hi < Y.lo:
        return Complex(G, p, {})
    lo, hi = X.lo + Y.lo, X.hi + Y.hi
    layout: dict[int, list[tuple[int, int, int]]] = {}  # degree -> [(i, j, offset)]
    mods = {}
    for n in range(lo, hi + 1):
        parts, off, summands = [], 0, []
        for i in X.degrees:
            j = n - i
            if Y.lo <= j <= Y.hi:
                parts.append((i, j, off))
                t = tensor_modules(X.modules[i], Y.modules[j])
                summands.append(t)
                off += t.dim
        layout[n] = parts
        mods[n] = direct_sum_many(G, p, summands)
    ds = {}
    for n in range(lo + 1, hi + 1):
        m = fp.zeros(mods[n - 1].dim, mods[n].dim)
        tgt = {(i, j): off for i, j, off in layout[n - 1]}
        for i, j, off in layout[n]:
            xi, yj = X.modules[i].dim, Y.modules[j].dim
            if (i - 1, j) in tgt:
                t0 = tgt[(i - 1, j)]
                blk = np.kron(X.d(i), fp.identity(yj))
                m[t0:t0 + blk.shape[0], off:off + blk.shape[1]] += blk
            if (i, j - 1) in tgt:
                t0 = tgt[(i, j - 1)]
                blk = np.kron(fp.identity(xi), Y.d(j)) * (-1 if i % 2 else 1)
                m[t0:t0 + blk.shape[0], off:off + blk.shape[1]] += blk
        ds[n] = m
    return Complex(G, p, mods, ds, check=False)


def dual(X: Complex) -> Complex:
    """Degree n is X_{-n}; the differential at n is (-1)^n times the transpose of d_{1-n}."""
    mods = {-n: m for n, m in X.modules.items()}
    ds = {}
    for n in range(-X.hi + 1, -X.lo + 1):
        ds[n] = (-1 if n % 2 else 1) * X.d(1 - n).T
    return Complex(X.group, X.p, mods, ds, check=False)


def homology_dims(X: Complex) -> dict[int, int]:
    """Nonzero homology dimensions of the underlying complex of vector spaces."""
    p = X.p
    ranks = {n: fp.rank(X.d(n), p) for n in range(X.lo, X.hi + 2)}
    out = {}
    for n in X.degrees:
        h = X.modules[n].dim - ranks[n] - ranks[n + 1]
        if h:
            out[n] = h
    return out


@dataclass(frozen=True)
class HomologyModule:
    degree: int
    dim: int
    basis: np.ndarray  # columns: cycle representatives
    action: dict  # generator -> dim x dim matrix


def homology_module(X: Complex, n: int) -> HomologyModule:
    """H_n with the induced action of the group generators."""
    G, p = X.group, X.p
    M = X.module(n)
    if M.dim == 0:
        return HomologyModule(n, 0, fp.zeros(0, 0), {g: fp.zeros(0, 0) for g in G.generators})
    Z = fp.nullspace(X.d(n), p) if n - 1 >= X.lo else fp.identity(M.dim)
    B = fp.column_basis(X.d(n + 1), p)
    # extend a basis of the boundaries to one of the cycles
    stacked = np.hstack([B, Z])
    _, piv = fp.rref(stacked, p)
    C = stacked[:, [c for c in piv if c >= B.shape[1]]]
    full = np.hstack([B, C])
    k = C.shape[1]
    action = {}
    for g in G.generators:
        moved = fp.matmul(M.rho(g), C, p)
        coords = fp.solve(full, moved, p)
        if coords is None:
            raise ComplexError("cycles are not preserved by the group action")
        action[g] = coords[B.shape[1]:, :] if k else fp.zeros(0, 0)
    return HomologyModule(n, k, C, action)


def perturb_homotopy(X: Complex, seed: int) -> Complex:
    """X plus a contractible summand [M --id--> M] at a seeded degree."""
    rng = np.random.default_rng(seed)
    G, p = X.group, X.p
    subs = G.subgroups
    M = direct_sum_many(
        G, p, [PermModule(orbit_gset(G, subs[int(rng.integers(len(subs)))]), p) for _ in range(int(rng.integers(1, 3)))]
    )
    lo = X.lo if X.hi >= X.lo else 0
    hi = X.hi if X.hi >= X.lo else 0
    n = int(rng.integers(lo, hi + 2))
    C = Complex(G, p, {n: M, n - 1: M}, {n: identity_map(M)}, check=False)
    return direct_sum_complex(X, C)


def random_complex(
    G: FiniteGroup,
    p: int,
    rng: np.random.Generator,
    length: int = 3,
    max_summands: int = 2,
    subgroups=None,
    lo: int = 0,
) -> Complex:
    """A random complex with differentials drawn from the maps killed by the next one down."""
    subs = list(subgroups or G.subgroups)
    mods = {}
    for n in range(lo, lo + length):
        k = int(rng.integers(0, max_summands + 1))
        mods[n] = direct_sum_many(G, p, [PermModule(orbit_gset(G, subs[int(rng.integers(len(subs)))]), p) for _ in range(k)])
    ds = {}
    for n in range(lo + 1, lo + length):
        ds[n] = random_cycle_map(mods[n], mods[n - 1], ds.get(n - 1), rng)
    return Complex(G, p, mods, ds)


def maps_killed_by(src: PermModule, tgt: PermModule, below: np.ndarray | None) -> tuple[list[EquivMap], np.ndarray]:
    """Hom-basis of src -> tgt and coefficient vectors spanning {f : below o f = 0}."""
    basis = hom_basis(src, tgt)
    p = src.p
    if not basis:
        return basis, fp.zeros(0, 0)
    if below is None or below.size == 0:
        return basis, fp.identity(len(basis))
    cols = np.stack([fp.matmul(below, b.matrix, p).ravel() for b in basis], axis=1)
    return basis, fp.nullspace(cols, p)


def random_cycle_map(src: PermModule, tgt: PermModule, below, rng: np.random.Generator) -> np.ndarray:
    basis, space = maps_killed_by(src, tgt, None if below is None else (below.matrix if isinstance(below, EquivMap) else below))
    m = fp.zeros(tgt.dim, src.dim)
    if not basis or space.shape[1] == 0:
        return m
    coeffs = fp.matmul(space, rng.integers(0, src.p, (space.shape[1], 1)), src.p)[:, 0]
    for c, b in zip(coeffs, basis):
        if c:
            m += int(c) * b.matrix
    return m % src.p
