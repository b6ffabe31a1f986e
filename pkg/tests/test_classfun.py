import numpy as np
import pytest
from sympy import Matrix

from conftest import P_GROUPS
from endotriv.classfun import (
    ClassFunction,
    LatticeBasis,
    borel_smith_check,
    cfb_basis,
    constant,
    constraint_rows,
    integer_kernel,
    lattice_from_generators,
    lattices_equal,
    membership,
    omega,
)
from endotriv.groups import GroupError, conjugacy_classes_of_subgroups, is_subconjugate


def test_omega_examples(groups):
    V = groups("V4")
    cls = conjugacy_classes_of_subgroups(V, 2)
    assert omega(V, 2, cls[0]).values == (1, 0, 0, 0, 0)
    assert omega(V, 2, cls[-1]).values == (1, 1, 1, 1, 1)
    assert omega(V, 2, cls[1]).values == (1, 1, 0, 0, 0)


@pytest.mark.parametrize("name,p", P_GROUPS)
def test_omega_is_unitriangular_basis(groups, name, p):
    G = groups(name)
    cls = conjugacy_classes_of_subgroups(G, p)
    M = Matrix([list(omega(G, p, c).values) for c in cls])
    assert abs(M.det()) == 1
    # unit vectors are integer combinations of the omegas
    inv = M.inv()
    assert all(v.is_integer for v in inv)
    for i, c in enumerate(cls):
        for j, d in enumerate(cls):
            assert M[i, j] == int(is_subconjugate(G, d.representative, c.representative))


def test_arithmetic(groups):
    G = groups("D8")
    h = ClassFunction(G, 2, range(8))
    assert (h + (-h)).values == (0,) * 8
    assert (3 * h - h - h).values == h.values
    with pytest.raises(GroupError):
        ClassFunction(G, 2, (1, 2))
    with pytest.raises(GroupError):
        h + ClassFunction(groups("Q8"), 2, (0,) * 6)


def test_borel_smith_examples(groups):
    V = groups("V4")
    assert borel_smith_check(ClassFunction(V, 2, (4, 2, 2, 2, 1)))[0]
    C4 = groups("C4")
    ok, bad = borel_smith_check(ClassFunction(C4, 2, (1, 0, 0)))
    assert not ok and bad[0].condition == 2
    assert bad[0].N == C4.trivial and bad[0].H == C4.whole
    Q = groups("Q8")
    ok, bad = borel_smith_check(ClassFunction(Q, 2, (2, 0, 0, 0, 0, 0)))
    assert not ok and {v.condition for v in bad} == {3}  # 2 = 0 mod 2 but not mod 4


@pytest.mark.parametrize("name,p", P_GROUPS)
def test_constants_pass(groups, name, p):
    G = groups(name)
    L = cfb_basis(G, p)
    for c in (-3, 0, 1, 5):
        assert borel_smith_check(constant(G, p, c))[0]
        assert membership(constant(G, p, c), L)


@pytest.mark.parametrize(
    "name,p,rank,index",
    [("C2", 2, 2, 1), ("C4", 2, 3, 2), ("V4", 2, 4, 0), ("C3", 3, 2, 2), ("Q8", 2, 5, 0)],
)
def test_cfb_shapes(groups, name, p, rank, index):
    L = cfb_basis(groups(name), p)
    assert (L.rank, L.index) == (rank, index)


def test_cfb_c4_is_single_congruence(groups):
    G = groups("C4")
    L = cfb_basis(G, 2)
    want = lattice_from_generators([(2, 0, 0), (1, 1, 0), (0, 0, 1)], 3)
    assert lattices_equal(L, want)


def test_cfb_v4_is_kernel_of_one_equation(groups):
    # independent oracle: the kernel of h1 - h2 - h3 - h4 + 2 h5 (rank 4, saturated)
    G = groups("V4")
    L = cfb_basis(G, 2)
    row = Matrix([[1, -1, -1, -1, 2]])
    oracle = lattice_from_generators([tuple(int(x) for x in v) for v in row.nullspace()], 5)
    gens = [(1, 1, 0, 0, 0), (1, 0, 1, 0, 0), (1, 0, 0, 1, 0), (-2, 0, 0, 0, 1)]
    assert lattices_equal(L, lattice_from_generators(gens, 5))
    assert all(sum(a * b for a, b in zip(row, v)) == 0 for v in L.basis)
    assert oracle.rank == 4


def test_q8_constraints_include_mod4(groups):
    rows = constraint_rows(groups("Q8"), 2)
    assert ((1, -1, 0, 0, 0, 0), 4) in rows


@pytest.mark.parametrize("name,p", P_GROUPS)
def test_checker_agrees_with_lattice(groups, name, p):
    G = groups(name)
    L = cfb_basis(G, p)
    rng = np.random.default_rng(2024)
    n = L.ambient
    for _ in range(200):
        v = tuple(int(x) for x in rng.integers(-6, 7, n))
        assert borel_smith_check(ClassFunction(G, p, v))[0] == membership(v, L)
    for b in L.basis:
        assert borel_smith_check(ClassFunction(G, p, b))[0]


def test_membership_dimension_mismatch():
    L = LatticeBasis(((1, 0),), 2, 0)
    with pytest.raises(GroupError):
        membership((1, 2, 3), L)
    assert not membership((0, 1), L)
    assert membership((0, 0), L)


def test_integer_kernel():
    M = Matrix([[2, 4, 6], [1, 1, 1]])
    K = integer_kernel(M)
    assert len(K) == 1
    assert list(M * Matrix(K[0])) == [0, 0]
    assert abs(np.gcd.reduce(K[0])) == 1
