"""Invariant suites run by ``endotriv check``.

Each check returns a ``Check`` record; a suite for one group is the list of
all of them. Everything is seeded so reruns print identical reports.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np
from sympy import Matrix

from .brauer import brauer_map, brauer_map_oracle
from .classfun import (
    ClassFunction,
    borel_smith_check,
    cfb_basis,
    membership,
    omega,
)
from .complexes import dual, shift, tensor, unit
from .groups import (
    FiniteGroup,
    Subgroup,
    class_index,
    conjugacy_classes_of_subgroups,
    index_divisibility_check,
    prime_power,
)
from .gsets import double_cosets, orbit_gset, orbits, product
from .permmod import PermModule, hom_basis, random_map
from .picard import generator_complex, marks, sphere_catalog, theta
from .spans import element, linearise, restriction_induction_span


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def default_prime(G: FiniteGroup) -> int:
    pp = prime_power(G.order)
    if pp is not None:
        return pp[0]
    return next(q for q in range(2, G.order + 1) if G.order % q == 0)


def check_subgroups(G: FiniteGroup) -> Check:
    subs = G.subgroups
    ok = all(G.order % S.order == 0 for S in subs)
    ok &= G.trivial in subs and G.whole in subs
    members = [S for c in conjugacy_classes_of_subgroups(G) for S in c.members]
    ok &= sorted(members, key=lambda S: S.key) == sorted(subs, key=lambda S: S.key)
    return Check("subgroup lattice", ok, f"{len(subs)} subgroups")


def check_mackey(G: FiniteGroup) -> Check:
    idx = class_index(G)
    bad = 0
    for K, H in itertools.product(G.subgroups, repeat=2):
        XK, XH = orbit_gset(G, K), orbit_gset(G, H)
        orbs = orbits(product(XK, XH))
        lhs = Counter(idx[L] for L, _ in orbs)
        rhs = Counter()
        for g in double_cosets(G, K, H):
            # stabiliser of (K, gH) is K meet gHg^-1
            conj = H.conjugate(g)
            rhs[idx[Subgroup(tuple(sorted(K.elset & conj.elset)), G)]] += 1
        dim = len(hom_basis(PermModule(XK, 2), PermModule(XH, 2)))
        if lhs != rhs or dim != len(orbs):
            bad += 1
    return Check("Mackey formula", bad == 0, f"{bad} failing pairs" if bad else "")


def check_cohomological_ideal(G: FiniteGroup, p: int) -> Check:
    bad = 0
    for H in G.subgroups:
        for K in G.subgroups:
            if K <= H:
                m = linearise(element(restriction_induction_span(G, K, H)), p).matrix
                expect = (H.order // K.order) * np.eye(m.shape[0], dtype=np.int64) % p
                bad += not np.array_equal(m, expect)
    return Check("cohomological ideal", bad == 0)


def check_brauer_oracle(G: FiniteGroup, p: int, random_maps: int = 0, seed: int = 0) -> Check:
    rng = np.random.default_rng(seed)
    reps = [c.representative for c in conjugacy_classes_of_subgroups(G)]
    n = 0
    for H in [c.representative for c in conjugacy_classes_of_subgroups(G, p)]:
        for K, L in itertools.product(reps, repeat=2):
            X, Y = PermModule(orbit_gset(G, K), p), PermModule(orbit_gset(G, L), p)
            basis = hom_basis(X, Y)
            maps = list(basis)
            maps += [random_map(X, Y, rng) for _ in range(random_maps)]
            for f in maps:
                n += 1
                if not np.array_equal(brauer_map(f, H).matrix, brauer_map_oracle(f, H).matrix):
                    return Check("Brauer oracle", False, f"mismatch at H={H.label}, {K.label} -> {L.label}")
    return Check("Brauer oracle", True, f"{n} maps")


def check_index_divisibility(G: FiniteGroup, p: int) -> Check:
    ok = all(index_divisibility_check(G, H, p) for H in G.subgroups if H.is_p_subgroup(p))
    return Check("index divisibility", ok)


def check_generators(G: FiniteGroup, p: int) -> Check:
    classes = conjugacy_classes_of_subgroups(G, p)
    top = max(c.order for c in classes)
    for c in classes:
        rep = marks(generator_complex(G, p, c))
        if rep.class_function != omega(G, p, c):
            return Check("generator marks", False, f"P={c.representative.label}")
        # [k(G/P) -> k] is invertible exactly when G/P has two points (a sign sphere)
        if rep.invertible != (c.order == top or G.order == 2 * c.order):
            return Check("generator marks", False, f"invertibility at P={c.representative.label}")
    return Check("generator marks", True, f"{len(classes)} classes")


def check_omega_basis(G: FiniteGroup, p: int) -> Check:
    classes = conjugacy_classes_of_subgroups(G, p)
    M = Matrix([list(omega(G, p, c).values) for c in classes])
    return Check("omega basis unimodular", abs(M.det()) == 1)


def check_lattice(G: FiniteGroup, p: int, samples: int = 50, seed: int = 0) -> Check:
    L = cfb_basis(G, p)
    rng = np.random.default_rng(seed)
    n = L.ambient
    agree = 0
    vecs = [tuple(int(v) for v in rng.integers(-4, 5, n)) for _ in range(samples)]
    vecs += [tuple(b) for b in L.basis] + [(1,) * n]
    for v in vecs:
        agree += borel_smith_check(ClassFunction(G, p, v))[0] == membership(v, L)
    return Check("Borel-Smith checker vs lattice", agree == len(vecs), f"rank {L.rank}, index {L.index}")


def _invertible_corpus(G: FiniteGroup, p: int) -> list:
    corpus = [unit(G, p), shift(unit(G, p), 1)]
    if G.order in (2, 4) and p == 2:
        corpus += [X for _, X in sphere_catalog(G)]
    return corpus


def check_lambda_arithmetic(G: FiniteGroup, p: int) -> Check:
    corpus = _invertible_corpus(G, p)
    lam = [theta(X) for X in corpus]
    for (X, a), (Y, b) in itertools.combinations_with_replacement(list(zip(corpus, lam)), 2):
        if theta(tensor(X, Y)) != a + b:
            return Check("lambda additivity and duality", False, "tensor")
    for X, a in zip(corpus, lam):
        if theta(dual(X)) != -a:
            return Check("lambda additivity and duality", False, "dual")
    L = cfb_basis(G, p)
    ok = all(membership(h, L) for h in lam)
    return Check("lambda additivity and duality", ok, f"{len(corpus)} invertible complexes")


def run_suite(G: FiniteGroup, p: int | None = None) -> list[Check]:
    p = p or default_prime(G)
    return [
        check_subgroups(G),
        check_mackey(G),
        check_cohomological_ideal(G, p),
        check_brauer_oracle(G, p),
        check_index_divisibility(G, p),
        check_generators(G, p),
        check_omega_basis(G, p),
        check_lattice(G, p),
        check_lambda_arithmetic(G, p),
    ]
