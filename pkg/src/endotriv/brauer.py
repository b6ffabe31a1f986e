"""Modular fixed points (Brauer quotients) of permutation modules and complexes.

``brauer_map`` is the production path: on a permutation module the Brauer
quotient at H is spanned by the H-fixed basis points, and a map is pushed
through by keeping only its fixed-to-fixed coefficients. ``brauer_map_oracle``
recomputes the same thing from the classical definition
``M(H) = M^H / sum_K tr_K^H(M^K)`` by row reduction and serves as its
independent check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fp
from .complexes import Complex, ComplexError
from .groups import (
    FiniteGroup,
    QuotientGroup,
    Subgroup,
    closure,
    normalizer,
    quotient,
    subgroup_as_group,
    weyl,
)
from .gsets import GSet, fixed_points, restrict
from .permmod import EquivMap, PermModule


class BrauerError(RuntimeError):
    """Internal failure: the Brauer construction produced an invalid object."""


def brauer_module(M: PermModule, H: Subgroup) -> tuple[PermModule, tuple[int, ...]]:
    """k[X] -> k[X^H] over the Weyl group, with the embedding of X^H into X."""
    Y, emb = fixed_points(M.basis, H)
    return PermModule(Y, M.p), emb


def brauer_map(f: EquivMap, H: Subgroup) -> EquivMap:
    src, ex = brauer_module(f.source, H)
    tgt, ey = brauer_module(f.target, H)
    return EquivMap(src, tgt, f.matrix[np.ix_(ey, ex)] if ex and ey else fp.zeros(len(ey), len(ex)), check=False)


# -- classical construction ------------------------------------------------------


def _subgroup_generators(H: Subgroup) -> list[int]:
    gens: list[int] = []
    span = frozenset([0])
    for h in H.elements:
        if h not in span:
            gens.append(h)
            span = closure(H.parent, gens)
    return gens


def maximal_subgroups(H: Subgroup) -> list[Subgroup]:
    proper = [S for S in H.parent.subgroups if S < H]
    return [S for S in proper if not any(S < T for T in proper)]


def fixed_subspace(M: PermModule, H: Subgroup) -> np.ndarray:
    """Columns spanning M^H, from (rho(h) - 1) v = 0 over generators h of H."""
    gens = _subgroup_generators(H)
    if not gens or M.dim == 0:
        return fp.identity(M.dim)
    stacked = np.vstack([M.rho(h) - fp.identity(M.dim) for h in gens])
    return fp.nullspace(stacked, M.p)


def trace_subspace(M: PermModule, H: Subgroup) -> np.ndarray:
    """Columns spanning the sum of tr_K^H(M^K) over maximal K < H."""
    p = M.p
    cols = [fp.zeros(M.dim, 0)]
    G = H.parent
    for K in maximal_subgroups(H):
        MK = fixed_subspace(M, K)
        # left coset representatives of K in H
        seen, reps = set(), []
        for h in H.elements:
            if h not in seen:
                reps.append(h)
                seen.update(int(G.table[h, k]) for k in K.elements)
        tr = sum(M.rho(h) for h in reps) % p
        cols.append(fp.matmul(tr, MK, p))
    return fp.column_basis(np.hstack(cols), p)


def brauer_quotient_basis(M: PermModule, H: Subgroup) -> tuple[np.ndarray, np.ndarray, tuple[int, ...]]:
    """(fixed-point vectors E, trace subspace T, fixed points), checking that E maps onto M^H/T bijectively."""
    p = M.p
    F = fixed_subspace(M, H)
    T = trace_subspace(M, H)
    _, emb = fixed_points(M.basis, H)
    E = fp.zeros(M.dim, len(emb))
    E[list(emb), np.arange(len(emb))] = 1
    rF, rT = fp.rank(F, p), fp.rank(T, p)
    if fp.rank(np.hstack([F, T]), p) != rF:
        raise BrauerError("traces are not H-fixed")
    if fp.rank(np.hstack([F, E]), p) != rF:
        raise BrauerError("fixed basis points are not H-fixed")
    if rF - rT != len(emb) or fp.rank(np.hstack([E, T]), p) != rF:
        raise BrauerError(
            f"quotient of dimension {rF - rT} is not spanned by the {len(emb)} fixed points"
        )
    return E, T, emb


def brauer_map_oracle(f: EquivMap, H: Subgroup) -> EquivMap:
    """Push f through M^H / traces and read it off in the fixed-point basis."""
    p = f.p
    Ex, _, ex = brauer_quotient_basis(f.source, H)
    Ey, Ty, ey = brauer_quotient_basis(f.target, H)
    images = fp.matmul(f.matrix, Ex, p)
    out = fp.zeros(len(ey), len(ex))
    if ex and ey:
        coords = fp.solve(np.hstack([Ey, Ty]), images, p)
        if coords is None:
            raise BrauerError("image of a fixed vector is not H-fixed")
        out = coords[: len(ey)]
    src, _ = brauer_module(f.source, H)
    tgt, _ = brauer_module(f.target, H)
    return EquivMap(src, tgt, out, check=False)


# -- complexes -----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BrauerResult:
    complex: Complex
    embeddings: dict
    weyl: QuotientGroup


def brauer_complex(X: Complex, H: Subgroup) -> BrauerResult:
    W = weyl(X.group, H)
    mods, embs = {}, {}
    for n, M in X.modules.items():
        mods[n], embs[n] = brauer_module(M, H)
    ds = {}
    for n, f in X.diffs.items():
        ex, ey = embs[n], embs[n - 1]
        ds[n] = f.matrix[np.ix_(ey, ex)] if ex and ey else fp.zeros(len(ey), len(ex))
    try:
        C = Complex(W.group, X.p, mods, ds, check=False)
    except ComplexError as exc:
        raise BrauerError(f"Brauer quotient is not a complex: {exc}") from exc
    return BrauerResult(C, embs, W)


# -- compatibility identifications ------------------------------------------------


def nesting_isomorphism(G: FiniteGroup, H: Subgroup, K: Subgroup):
    """For H normal in G and H <= K: data identifying (G/H)//(K/H) with G//K.

    Returns ``(Q, Kbar, phi)`` where Q is G/H, Kbar the image of K in it and
    ``phi[w]`` the element of weyl(Q.group, Kbar) matching coset ``w`` of weyl(G, K).
    """
    Q = quotient(G.whole, H)
    Kbar = Subgroup(tuple(sorted({int(Q.projection[k]) for k in K.elements})), Q.group)
    W2 = weyl(G, K)
    W1 = weyl(Q.group, Kbar)
    phi = np.array([int(W1.projection[Q.projection[r]]) for r in W2.representatives], dtype=np.int64)
    if sorted(phi.tolist()) != list(range(W1.group.order)):
        raise BrauerError("Weyl groups do not match under the quotient")
    return Q, Kbar, phi


def lift_to_quotient(X: Complex, H: Subgroup, Q: QuotientGroup) -> Complex:
    """Re-express brauer_complex(X, H) over ``Q.group`` (for H normal, weyl(G, H) and G/H agree)."""
    B = brauer_complex(X, H).complex
    W = weyl(X.group, H)
    if W.representatives != Q.representatives:
        raise BrauerError("Weyl group and quotient differ")
    mods = {n: PermModule(GSet(Q.group, M.basis.action), M.p) for n, M in B.modules.items()}
    return Complex(Q.group, X.p, mods, {n: f.matrix for n, f in B.diffs.items()}, check=False)


def nested_brauer(X: Complex, H: Subgroup, K: Subgroup) -> tuple[Complex, Complex, np.ndarray]:
    """(Psi^K(X), Psi^{K/H}(Psi^H(X)), phi) for H normal in G, H <= K."""
    Q, Kbar, phi = nesting_isomorphism(X.group, H, K)
    direct = brauer_complex(X, K).complex
    nested = brauer_complex(lift_to_quotient(X, H, Q), Kbar).complex
    return direct, nested, phi


def restrict_complex(X: Complex, S: Subgroup, R: FiniteGroup | None = None) -> Complex:
    """X viewed over S (as the standalone group R, built from S when not given)."""
    if R is None:
        R, _ = subgroup_as_group(S)
    mods = {}
    for n, M in X.modules.items():
        Y = restrict(M.basis, S, R)
        mods[n] = PermModule(Y, M.p)
    return Complex(R, X.p, mods, {n: f.matrix for n, f in X.diffs.items()}, check=False)


def restriction_isomorphism(G: FiniteGroup, H: Subgroup):
    """Data identifying weyl(G, H) with weyl(N_G(H), H) for the restricted action.

    Returns ``(Nsub, R, HR, phi)``: the normaliser as a subgroup of G, the same
    normaliser as a standalone group R, H inside R, and ``phi`` sending each
    element of weyl(G, H) to the matching element of weyl(R, HR).
    """
    Nsub = normalizer(G, H)
    R, elements = subgroup_as_group(Nsub)
    pos = {g: i for i, g in enumerate(elements)}
    HR = Subgroup(tuple(sorted(pos[h] for h in H.elements)), R)
    WG = weyl(G, H)
    WR = weyl(R, HR)
    phi = np.array([int(WR.projection[pos[r]]) for r in WG.representatives], dtype=np.int64)
    return Nsub, R, HR, phi


def complexes_match(A: Complex, B: Complex, phi: np.ndarray) -> bool:
    """A over W_A and B over W_B agree under the group isomorphism phi: W_A -> W_B."""
    a, b = A.trimmed(), B.trimmed()
    if list(a.degrees) != list(b.degrees):
        return False
    for n in a.degrees:
        xa, xb = a.modules[n].basis.action, b.modules[n].basis.action
        if xa.shape[1] != xb.shape[1] or not np.array_equal(xa, xb[phi]):
            return False
        if not np.array_equal(a.d(n), b.d(n)):
            return False
    return True
