import itertools

import numpy as np
import pytest

from conftest import P_GROUPS
from endotriv.classfun import cfb_basis, constant, membership, omega, borel_smith_check
from endotriv.complexes import augmentation_complex, dual, homology_module, perturb_homotopy, random_complex, shift, tensor, unit
from endotriv.groups import GroupError, conjugacy_classes_of_subgroups
from endotriv.picard import (
    NotInvertibleError,
    generator_complex,
    invertible,
    marks,
    sphere_catalog,
    theta,
)


def test_shift_unit(groups):
    G = groups("D8")
    rep = marks(shift(unit(G, 2), 1))
    assert rep.invertible and rep.class_function == constant(G, 2, 1)
    assert theta(unit(G, 2)) == constant(G, 2, 0)
    for s in (-2, 3):
        assert theta(shift(unit(G, 2), s)) == constant(G, 2, s)


def test_sign_sphere_c2(groups):
    G = groups("C2")
    rep = marks(augmentation_complex(G, G.trivial, 2))
    assert rep.invertible and rep.class_function.values == (1, 0)
    assert [c.homology for c in rep.classes] == [{1: 1}, {0: 1}]


def test_c4_free_generator(groups):
    G = groups("C4")
    rep = marks(generator_complex(G, 2, G.trivial))
    assert rep.in_lambda and not rep.invertible
    assert rep.classes[0].homology == {1: 3}
    assert rep.witness == G.trivial
    with pytest.raises(NotInvertibleError):
        theta(generator_complex(G, 2, G.trivial))


@pytest.mark.parametrize("name,p", P_GROUPS)
def test_generators_realise_omega(groups, name, p):
    G = groups(name)
    for c in conjugacy_classes_of_subgroups(G, p):
        X = generator_complex(G, p, c)
        assert marks(X).class_function == omega(G, p, c)
    assert generator_complex(G, p, G.whole).same_as(shift(unit(G, p), 1))


def test_v4_generator_on_order_two(groups):
    G = groups("V4")
    cls = conjugacy_classes_of_subgroups(G, 2)
    rep = marks(generator_complex(G, 2, cls[1]))
    assert rep.class_function.values == (1, 1, 0, 0, 0)
    assert rep.classes[2].homology == {0: 1}  # [0 -> k] at another order-2 subgroup


def test_sphere_catalog(groups):
    C4 = groups("C4")
    spheres = dict(sphere_catalog(C4))
    assert theta(spheres["rotation"]).values == (2, 0, 0)
    assert theta(spheres["inflated_sign"]).values == (1, 1, 0)
    V = groups("V4")
    for i, (_, X) in enumerate(sphere_catalog(V)):
        want = [1, 0, 0, 0, 0]
        want[1 + i] = 1
        assert theta(X).values == tuple(want)
    with pytest.raises(GroupError):
        sphere_catalog(groups("D8"))


def _corpus(G):
    base = [unit(G, 2), shift(unit(G, 2), 1)] + [X for _, X in sphere_catalog(G)]
    return base + [dual(X) for X in base]


@pytest.mark.parametrize("name", ["C2", "C4", "V4"])
def test_lambda_additive_and_dual(groups, name):
    G = groups(name)
    corpus = _corpus(G)
    L = cfb_basis(G, 2)
    for X, Y in itertools.combinations_with_replacement(corpus, 2):
        T = tensor(X, Y)
        assert theta(T) == theta(X) + theta(Y)
        assert membership(theta(T), L)
    for X in corpus:
        assert theta(dual(X)) == -theta(X)


def test_lambda_additive_on_random_lambda_pairs(groups):
    # Lambda elements that are not invertible still have additive marks
    G = groups("D8")
    gens = [generator_complex(G, 2, c) for c in conjugacy_classes_of_subgroups(G, 2)]
    pairs = list(itertools.combinations_with_replacement(gens, 2))
    rng = np.random.default_rng(30)
    for i in rng.permutation(len(pairs))[:30]:
        X, Y = pairs[i]
        rx, ry, rt = marks(X), marks(Y), marks(tensor(X, Y))
        if rt.in_lambda:
            assert rt.class_function == rx.class_function + ry.class_function
        else:
            # only possible when a Sylow class picks up extra homology
            assert rx.in_lambda and ry.in_lambda


def test_marks_invariant_under_perturbation(groups):
    G = groups("Q8")
    rng = np.random.default_rng(3)
    for seed in range(10):
        X = random_complex(G, 2, rng)
        a, b = marks(X), marks(perturb_homotopy(X, seed))
        assert [c.homology for c in a.classes] == [c.homology for c in b.classes]


@pytest.mark.parametrize("name", ["C4", "V4"])
def test_zero_marks_give_trivial_homology(groups, name):
    G = groups(name)
    for X in _corpus(G):
        T = tensor(X, dual(X))
        rep = marks(T)
        assert rep.invertible and rep.class_function == constant(G, 2, 0)
        h = homology_module(T, 0)
        assert h.dim == 1 and all(m.tolist() == [[1]] for m in h.action.values())


def test_non_p_group_marks(groups):
    G = groups("D6")
    rep = marks(shift(unit(G, 3), 2))
    assert rep.invertible and rep.class_function.values == (2, 2)
    assert invertible(unit(G, 2))
