import itertools
from collections import Counter

import numpy as np
import pytest

from conftest import P_GROUPS
from endotriv.groups import GroupError, Subgroup, class_index, transporter
from endotriv.gsets import (
    GSet,
    disjoint_union,
    double_cosets,
    fixed_point_indices,
    fixed_points,
    orbit_gset,
    orbits,
    point,
    product,
    transitive_decomposition,
    gset_from_spec,
)


def test_orbit_sets(groups):
    C2 = groups("C2")
    X = orbit_gset(C2, C2.trivial)
    assert X.action.tolist() == [[0, 1], [1, 0]]
    assert point(C2).size == 1
    D8 = groups("D8")
    refl = [S for S in D8.subgroups if S.order == 2 and not S.is_normal_in(D8.whole)][0]
    assert orbit_gset(D8, refl).size == 4


def test_invalid_action_rejected(groups):
    G = groups("C4")
    with pytest.raises(GroupError):
        GSet(G, np.array([[0, 1], [1, 0], [1, 0], [1, 0]]))


def test_fixed_points_examples(groups):
    C4 = groups("C4")
    C2 = [S for S in C4.subgroups if S.order == 2][0]
    Y, emb = fixed_points(orbit_gset(C4, C2), C2)
    assert emb == (0, 1) and Y.group.order == 2
    X, emb = fixed_points(orbit_gset(C4, C4.trivial), C2)
    assert emb == ()
    D8 = groups("D8")
    refl = [S for S in D8.subgroups if S.order == 2 and not S.is_normal_in(D8.whole)][0]
    Y, emb = fixed_points(orbit_gset(D8, refl), refl)
    assert len(emb) == 2 and Y.group.order == 2


def test_double_cosets(groups):
    C4 = groups("C4")
    C2 = [S for S in C4.subgroups if S.order == 2][0]
    assert double_cosets(C4, C2, C2) == [0, 1]
    assert double_cosets(C4, C4.whole, C4.whole) == [0]
    assert len(double_cosets(C4, C4.trivial, C4.trivial)) == 4
    orbs = orbits(product(orbit_gset(C4, C2), orbit_gset(C4, C2)))
    assert len(orbs) == 2 and all(L == C2 for L, _ in orbs)


@pytest.mark.parametrize("name,p", P_GROUPS + [("D6", 3)])
def test_mackey_formula(groups, name, p):
    G = groups(name)
    idx = class_index(G)
    for K, H in itertools.product(G.subgroups, repeat=2):
        orbs = orbits(product(orbit_gset(G, K), orbit_gset(G, H)))
        got = Counter(idx[L] for L, _ in orbs)
        want = Counter()
        for g in double_cosets(G, K, H):
            # K^g meet H, with K^g = g^-1 K g
            Kg = K.conjugate(G.inverse[g])
            want[idx[Subgroup(tuple(sorted(Kg.elset & H.elset)), G)]] += 1
        assert got == want


@pytest.mark.parametrize("name,p", P_GROUPS)
def test_relative_normalizer_count(groups, name, p):
    G = groups(name)
    for P in G.subgroups:
        for H in G.subgroups:
            n = len(fixed_point_indices(orbit_gset(G, P), H))
            assert n * P.order == len(transporter(G, H, P))


def test_fixed_points_of_unions_and_products(groups):
    G = groups("D8")
    subs = G.subgroups
    X, Y = orbit_gset(G, subs[1]), orbit_gset(G, subs[3])
    for H in subs:
        fx, fy = fixed_point_indices(X, H), fixed_point_indices(Y, H)
        fu = fixed_point_indices(disjoint_union(X, Y), H)
        assert fu == fx + tuple(X.size + y for y in fy)
        fp_ = fixed_point_indices(product(X, Y), H)
        assert fp_ == tuple(x * Y.size + y for x in fx for y in fy)


def test_product_with_point(groups):
    G = groups("Q8")
    X = orbit_gset(G, G.subgroups[1])
    assert np.array_equal(product(X, point(G)).action, X.action)


def test_transitive_decomposition_reindexes(groups):
    G = groups("D8")
    X = product(orbit_gset(G, G.subgroups[2]), orbit_gset(G, G.subgroups[4]))
    subs, new = transitive_decomposition(X)
    Y = gset_from_spec(G, subs)
    assert sorted(new.tolist()) == list(range(X.size))
    for g in range(G.order):
        assert np.array_equal(new[X.action[g]], Y.action[g][new])
