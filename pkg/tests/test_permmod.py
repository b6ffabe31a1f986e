import numpy as np
import pytest

from conftest import P_GROUPS
from endotriv.groups import GroupError
from endotriv.gsets import double_cosets, orbit_gset
from endotriv.permmod import (
    EquivMap,
    PermModule,
    dual_map,
    evaluation,
    hom_basis,
    identity_map,
    is_equivariant,
    random_map,
    tensor,
    tensor_map,
    unit_module,
)


def mod(G, H, p):
    return PermModule(orbit_gset(G, H), p)


def test_unit_hom(groups):
    G = groups("D8")
    k = unit_module(G, 2)
    (b,) = hom_basis(k, k)
    assert b.matrix.tolist() == [[1]]


def test_c4_hom_basis(groups):
    G = groups("C4")
    C2 = G.subgroups[1]
    assert len(hom_basis(mod(G, C2, 2), mod(G, C2, 2))) == 2


@pytest.mark.parametrize("name,p", P_GROUPS)
def test_hom_dimension_is_double_cosets(groups, name, p):
    G = groups(name)
    for K in G.subgroups:
        for H in G.subgroups:
            basis = hom_basis(mod(G, K, p), mod(G, H, p))
            assert len(basis) == len(double_cosets(G, H, K))
            assert all(is_equivariant(b.source, b.target, b.matrix) for b in basis)
            stacked = np.stack([b.matrix.ravel() for b in basis])
            assert stacked.sum(axis=0).max() == 1  # disjoint supports, hence independent


def test_non_equivariant_rejected(groups):
    G = groups("C4")
    X = mod(G, G.trivial, 2)
    m = np.zeros((4, 4), dtype=np.int64)
    m[0, 0] = 1
    with pytest.raises(GroupError):
        EquivMap(X, X, m)


def test_hom_basis_closed_under_composition(groups):
    G = groups("D8")
    p = 2
    subs = G.subgroups
    for a, b, c in [(1, 3, 5), (2, 2, 4), (0, 6, 9)]:
        X, Y, Z = mod(G, subs[a], p), mod(G, subs[b], p), mod(G, subs[c], p)
        bz = np.stack([f.matrix.ravel() for f in hom_basis(X, Z)], axis=1)
        from endotriv import fp

        for f in hom_basis(X, Y):
            for g in hom_basis(Y, Z):
                assert fp.in_span(bz, (g @ f).matrix.ravel()[:, None], p)


def test_tensor(groups):
    G = groups("Q8")
    p = 2
    X, Y = mod(G, G.subgroups[1], p), mod(G, G.subgroups[2], p)
    T = tensor(X, Y)
    assert T.dim == X.dim * Y.dim
    assert np.array_equal(tensor(X, unit_module(G, p)).basis.action, X.basis.action)
    i = tensor_map(identity_map(X), identity_map(Y))
    assert np.array_equal(i.matrix, np.eye(T.dim, dtype=np.int64))
    rng = np.random.default_rng(0)
    f, g = random_map(X, X, rng), random_map(Y, Y, rng)
    t = tensor_map(f, g)
    assert is_equivariant(t.source, t.target, t.matrix)


def test_duality(groups):
    G = groups("D8")
    p = 2
    rng = np.random.default_rng(4)
    X, Y = mod(G, G.subgroups[2], p), mod(G, G.subgroups[4], p)
    assert np.array_equal(dual_map(identity_map(X)).matrix, identity_map(X).matrix)
    for _ in range(10):
        f = random_map(X, Y, rng)
        assert np.array_equal(dual_map(dual_map(f)).matrix, f.matrix)
        # ev_X o (f^* (x) id_X) = ev_Y o (id_Y* (x) f), both maps Y* (x) X -> k
        lhs = evaluation(X) @ tensor_map(dual_map(f), identity_map(X))
        rhs = evaluation(Y) @ tensor_map(identity_map(Y), f)
        assert np.array_equal(lhs.matrix, rhs.matrix)
