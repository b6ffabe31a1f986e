"""Bounded search for complexes with prescribed h-marks.

A candidate is a complex whose degrees lie in a window of ``budget.degrees``
consecutive integers, each degree a direct sum of at most ``budget.summands``
orbit modules ``k(G/K)``, with differentials built from hom-basis matrices.

The enumeration is exhaustive up to the following reductions, all of which
preserve the set of reachable h-marks:

* For a p-group every such complex is homotopy equivalent to a radical one
  (no summand ``[A --id--> A]``) using a sub-multiset of the same orbit types,
  so only radical differentials are enumerated.
* Once a target class function is fixed, the homology of every Brauer quotient
  is known, which fixes the rank of every differential at every class. Orbit
  configurations whose dimensions admit no such ranks are skipped, and each
  differential is filtered by these ranks before the next one is chosen.
* At a class H normal in a p-group G, a summand ``k(G/H)`` becomes the free
  module over the Weyl group, and a radical map touches a free summand only
  through its radical (into) or off its socle (out of). Each such summand
  lowers the attainable rank by one on either side.
* The differential below is fixed before the one above is chosen, and the
  latter ranges over the subspace of maps killed by it, so ``d o d = 0``
  holds by construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import fp
from .classfun import ClassFunction
from .complexes import Complex
from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    class_index,
    conjugacy_classes_of_subgroups,
)
from .gsets import fixed_point_indices, gset_from_spec, orbit_gset
from .permmod import PermModule, hom_basis
from .picard import marks

CHUNK = 8192


@dataclass(frozen=True)
class Budget:
    degrees: int = 3
    summands: int = 2
    subgroups: tuple[Subgroup, ...] | None = None  # orbit types; None means every class
    max_candidates: int = 5_000_000
    max_step: int = 1 << 20  # larger coefficient spaces are sampled, not enumerated
    seed: int = 0

    @classmethod
    def parse(cls, spec: str, G: FiniteGroup, seed: int = 0) -> "Budget":
        """``degrees=3,summands=2,classes=0:1:5,candidates=100000`` (all keys optional).

        ``classes`` lists indices into the conjugacy classes of all subgroups.
        """
        kw: dict = {"seed": seed}
        for part in filter(None, (s.strip() for s in (spec or "").split(","))):
            key, _, val = part.partition("=")
            key = key.strip()
            if key == "degrees":
                kw["degrees"] = int(val)
            elif key == "summands":
                kw["summands"] = int(val)
            elif key == "candidates":
                kw["max_candidates"] = int(val)
            elif key == "classes":
                classes = conjugacy_classes_of_subgroups(G)
                try:
                    kw["subgroups"] = tuple(classes[int(i)].representative for i in val.split(":"))
                except (IndexError, ValueError) as exc:
                    raise GroupError(f"bad class list {val!r}") from exc
            else:
                raise GroupError(f"unknown budget key {key!r}")
        return cls(**kw)


@dataclass
class SearchResult:
    witness: Complex | None
    exhaustive: bool
    configurations: int = 0
    candidates: int = 0
    hits: list = field(default_factory=list)  # class functions realised (predicate mode)

    @property
    def found(self) -> bool:
        return self.witness is not None


class _Exhausted(Exception):
    pass


class _Searcher:
    def __init__(self, G: FiniteGroup, p: int, budget: Budget):
        self.G, self.p, self.budget = G, p, budget
        all_cls = conjugacy_classes_of_subgroups(G)
        reps = [c.representative for c in all_cls]
        if budget.subgroups is None:
            types = reps
        else:
            idx = class_index(G)
            types = sorted({reps[idx[S]] for S in budget.subgroups}, key=lambda S: S.key)
        self.types = types
        self.pclasses = [c.representative for c in conjugacy_classes_of_subgroups(G, p)]
        self.pgroup = G.is_p_group(p)
        # fixed-point counts and free-summand flags, per (class, type)
        self.fix = [[len(fixed_point_indices(orbit_gset(G, K), H)) for K in types] for H in self.pclasses]
        self.free = [
            [self.pgroup and H.is_normal_in(G.whole) and K == H for K in types] for H in self.pclasses
        ]
        self.rng = np.random.default_rng(budget.seed)
        self.result = SearchResult(None, True)
        self._block_cache: dict = {}
        self._module_cache: dict = {}

    # -- configurations ----------------------------------------------------------

    def configurations(self):
        per_degree = [
            combo
            for k in range(self.budget.summands + 1)
            for combo in itertools.combinations_with_replacement(range(len(self.types)), k)
        ]
        configs = itertools.product(per_degree, repeat=self.budget.degrees)
        return sorted(configs, key=lambda c: (sum(map(len, c)), c))

    def feasible(self, config, h: int) -> dict[int, list[int]]:
        """Target degree at class h (window-relative) -> ranks of d_1..d_D at that class."""
        D = [sum(self.fix[h][t] for t in deg) for deg in config]
        F = [sum(self.free[h][t] for t in deg) for deg in config]
        out = {}
        for target in range(len(config)):
            ranks, r = [], 0
            ok = True
            for n in range(len(config)):
                nxt = D[n] - r - (n == target)
                cap = D[n] - F[n]
                if n + 1 < len(config):
                    cap = min(cap, D[n + 1] - F[n + 1])
                else:
                    cap = 0
                if nxt < 0 or nxt > cap:
                    ok = False
                    break
                ranks.append(nxt)
                r = nxt
            if ok:
                out[target] = ranks[:-1]
        return out

    # -- linear algebra ------------------------------------------------------------

    def module(self, degree_types) -> PermModule:
        key = tuple(degree_types)
        if key not in self._module_cache:
            X = gset_from_spec(self.G, [self.types[t] for t in key])
            self._module_cache[key] = PermModule(X, self.p)
        return self._module_cache[key]

    def _block(self, s: int, t: int) -> list[np.ndarray]:
        """Basis of the (radical, for p-groups) maps k(G/K_s) -> k(G/K_t)."""
        key = (s, t)
        if key not in self._block_cache:
            src = PermModule(orbit_gset(self.G, self.types[s]), self.p)
            tgt = PermModule(orbit_gset(self.G, self.types[t]), self.p)
            mats = [b.matrix for b in hom_basis(src, tgt)]
            if self.pgroup and s == t:
                autos = [m for m in mats if (m.sum(axis=0) == 1).all()]
                ident = next(m for m in autos if np.array_equal(m, np.eye(m.shape[0], dtype=np.int64)))
                rest = [m for m in mats if not (m.sum(axis=0) == 1).all()]
                mats = rest + [(a - ident) % self.p for a in autos if a is not ident]
            self._block_cache[key] = mats
        return self._block_cache[key]

    def map_basis(self, src_types, tgt_types) -> list[np.ndarray]:
        sizes_s = [orbit_gset(self.G, self.types[t]).size for t in src_types]
        sizes_t = [orbit_gset(self.G, self.types[t]).size for t in tgt_types]
        off_s = np.concatenate([[0], np.cumsum(sizes_s)]).astype(int)
        off_t = np.concatenate([[0], np.cumsum(sizes_t)]).astype(int)
        out = []
        for i, s in enumerate(src_types):
            for j, t in enumerate(tgt_types):
                for blk in self._block(s, t):
                    m = fp.zeros(int(off_t[-1]), int(off_s[-1]))
                    m[off_t[j]:off_t[j + 1], off_s[i]:off_s[i + 1]] = blk
                    out.append(m)
        return out

    def _coefficients(self, k: int):
        """Chunks of coefficient vectors in GF(p)^k: all of them, or a seeded sample."""
        p = self.p
        total = p**k
        if total > self.budget.max_step:
            self.result.exhaustive = False
            for start in range(0, self.budget.max_step, CHUNK):
                n = min(CHUNK, self.budget.max_step - start)
                yield self.rng.integers(0, p, (n, k))
            return
        powers = p ** np.arange(k, dtype=np.int64)
        for start in range(0, total, CHUNK):
            idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
            yield (idx[:, None] // powers[None, :]) % p

    def _charge(self, n: int) -> None:
        self.result.candidates += n
        if self.result.candidates > self.budget.max_candidates:
            self.result.exhaustive = False
            raise _Exhausted

    # -- differentials -------------------------------------------------------------

    def realise(self, config, lo: int, ranks: list[list[int]]):
        """Complexes on this configuration with the prescribed rank of d_n at every class."""
        mods = [self.module(deg) for deg in config]
        embeds = [[list(fixed_point_indices(M.basis, H)) for M in mods] for H in self.pclasses]
        D = len(config)

        def step(n: int, prev: np.ndarray | None, chosen: list[np.ndarray]):
            if n == D:
                yield list(chosen)
                return
            src, tgt = mods[n], mods[n - 1]
            if src.dim == 0 or tgt.dim == 0:
                mat = fp.zeros(tgt.dim, src.dim)
                if all(ranks[h][n - 1] == 0 for h in range(len(self.pclasses))):
                    yield from step(n + 1, mat, chosen + [mat])
                return
            basis = self.map_basis(config[n], config[n - 1])
            if not basis:
                if all(ranks[h][n - 1] == 0 for h in range(len(self.pclasses))):
                    mat = fp.zeros(tgt.dim, src.dim)
                    yield from step(n + 1, mat, chosen + [mat])
                return
            B = np.stack(basis)  # (k, rows, cols)
            if prev is not None and prev.size:
                comp = np.stack([fp.matmul(prev, b, self.p).ravel() for b in basis], axis=1)
                space = fp.nullspace(comp, self.p)
            else:
                space = fp.identity(len(basis))
            k = space.shape[1]
            for coeffs in self._coefficients(k):
                self._charge(len(coeffs))
                full = fp.matmul(coeffs, space.T, self.p)
                mats = np.tensordot(full, B, axes=1) % self.p
                keep = np.ones(len(mats), dtype=bool)
                for h in range(len(self.pclasses)):
                    ey, ex = embeds[h][n - 1], embeds[h][n]
                    need = ranks[h][n - 1]
                    if not ey or not ex:
                        if need:
                            keep[:] = False
                        continue
                    sub = mats[keep][:, ey][:, :, ex]
                    ok = fp.batch_rank(sub, self.p) == need
                    keep[np.nonzero(keep)[0][~ok]] = False
                    if not keep.any():
                        break
                for mat in mats[keep]:
                    yield from step(n + 1, mat, chosen + [mat])

        for diffs in step(1, None, []):
            modules = {lo + n: mods[n] for n in range(D)}
            ds = {lo + n: diffs[n - 1] for n in range(1, D)}
            yield Complex(self.G, self.p, modules, ds)

    def run(self, targets_for: Callable, lo: int, accept: Callable[[Complex, ClassFunction], bool]):
        try:
            for config in self.configurations():
                feas = [self.feasible(config, h) for h in range(len(self.pclasses))]
                if any(not f for f in feas):
                    continue
                self.result.configurations += 1
                for tvec in targets_for(feas):
                    ranks = [feas[h][t] for h, t in enumerate(tvec)]
                    for X in self.realise(config, lo, ranks):
                        rep = marks(X)
                        if not rep.invertible:
                            raise RuntimeError("rank bookkeeping produced a non-invertible complex")
                        if accept(X, rep.class_function):
                            self.result.witness = X
                            return self.result
        except _Exhausted:
            pass
        return self.result


def realize_search(target: ClassFunction, budget: Budget | None = None) -> SearchResult:
    """Look for an invertible complex whose h-marks are ``target``.

    Windows of ``budget.degrees`` consecutive degrees containing every target
    value are tried from the highest start downwards.
    """
    budget = budget or Budget()
    G, p = target.group, target.p
    vals = list(target.values)
    top, bottom = max(vals), min(vals)
    combined = SearchResult(None, True)
    for lo in range(bottom, top - budget.degrees, -1):
        s = _Searcher(G, p, budget)
        rel = tuple(v - lo for v in vals)

        def targets_for(feas, rel=rel):
            if all(t in f for t, f in zip(rel, feas)):
                yield rel

        res = s.run(targets_for, lo, lambda X, h: h == target)
        combined.configurations += res.configurations
        combined.candidates += res.candidates
        combined.exhaustive &= res.exhaustive
        if res.witness is not None:
            combined.witness = res.witness
            combined.hits.append(target)
            return combined
    return combined


def search_predicate(
    G: FiniteGroup,
    p: int,
    predicate: Callable[[tuple[int, ...]], bool],
    budget: Budget | None = None,
    lo: int = 0,
    collect: bool = False,
) -> SearchResult:
    """Look for an invertible complex in degrees ``lo .. lo + degrees - 1`` whose h-marks satisfy ``predicate``.

    With ``collect`` the search runs to the end and ``hits`` lists every
    distinct class function realised; the witness is the first complex found.
    """
    budget = budget or Budget()
    s = _Searcher(G, p, budget)

    def targets_for(feas):
        for rel in itertools.product(*[sorted(f) for f in feas]):
            if predicate(tuple(v + lo for v in rel)):
                yield rel

    def accept(X, h):
        if h not in s.result.hits:
            s.result.hits.append(h)
        if s.result.witness is None:
            s.result.witness = X
        return not collect

    return s.run(targets_for, lo, accept)
