import numpy as np
import pytest

from endotriv.complexes import (
    Complex,
    ComplexError,
    augmentation_complex,
    dual,
    homology_dims,
    homology_module,
    perturb_homotopy,
    random_complex,
    shift,
    tensor,
    unit,
)
from endotriv.gsets import orbit_gset
from endotriv.permmod import PermModule


def rand(G, p, seed, **kw):
    return random_complex(G, p, np.random.default_rng(seed), **kw)


def test_homology_examples(groups):
    C2, C4 = groups("C2"), groups("C4")
    assert homology_dims(unit(C2, 2)) == {0: 1}
    assert homology_dims(augmentation_complex(C2, C2.trivial, 2)) == {1: 1}
    assert homology_dims(augmentation_complex(C4, C4.trivial, 2)) == {1: 3}


def test_homology_module_examples(groups):
    C2 = groups("C2")
    h = homology_module(unit(C2, 2), 0)
    assert h.dim == 1 and all(m.tolist() == [[1]] for m in h.action.values())
    h = homology_module(augmentation_complex(C2, C2.trivial, 2), 1)
    assert h.dim == 1 and all(m.tolist() == [[1]] for m in h.action.values())
    assert h.basis[:, 0].tolist() == [1, 1]
    assert homology_module(unit(C2, 2), 5).dim == 0


def test_d_squared_checked(groups):
    G = groups("C2")
    X = PermModule(orbit_gset(G, G.trivial), 2)
    with pytest.raises(ComplexError):
        Complex(G, 2, {2: X, 1: X, 0: X}, {2: np.eye(2, dtype=int), 1: np.eye(2, dtype=int)})
    with pytest.raises(ComplexError):
        Complex(G, 2, {1: X, 0: X}, {1: np.array([[1, 0], [0, 0]])})


def test_shift(groups):
    G = groups("D8")
    X = rand(G, 2, 0)
    assert shift(X, 0).same_as(X)
    assert shift(shift(X, 1), -1).same_as(X)
    s = shift(unit(G, 2), 1)
    assert s.dims() == {1: 1}


def test_tensor_unit_and_dims(groups):
    G = groups("C9")
    X, Y = rand(G, 3, 1), rand(G, 3, 2, lo=-1)
    assert tensor(X, unit(G, 3)).same_as(X)
    T = tensor(X, Y)
    for n in T.degrees:
        assert T.module(n).dim == sum(X.module(i).dim * Y.module(n - i).dim for i in X.degrees)


@pytest.mark.parametrize("name,p", [("D8", 2), ("C3xC3", 3), ("C4", 2), ("Q8", 2)])
def test_kunneth_and_euler(groups, name, p):
    G = groups(name)
    rng = np.random.default_rng(11)
    for _ in range(50 // 4 + 1):
        X = random_complex(G, p, rng)
        Y = random_complex(G, p, rng, lo=-1)
        T = tensor(X, Y)  # d o d = 0 is verified at construction
        hx, hy, ht = homology_dims(X), homology_dims(Y), homology_dims(T)
        want = {}
        for i, a in hx.items():
            for j, b in hy.items():
                want[i + j] = want.get(i + j, 0) + a * b
        assert ht == want
        for C in (X, Y, T):
            assert C.euler() == sum((-1) ** n * d for n, d in homology_dims(C).items())


def test_dual(groups):
    G = groups("D8")
    assert dual(unit(G, 2)).same_as(unit(G, 2))
    for seed in range(20):
        X = rand(G, 2, seed)
        assert dual(dual(X)).same_as(X)
        assert dual(shift(X, 3)).same_as(shift(dual(X), -3))
        assert homology_dims(dual(X)) == {-n: d for n, d in homology_dims(X).items()}


def test_perturb_homotopy(groups):
    G = groups("Q8")
    for seed in range(10):
        X = rand(G, 2, seed)
        Y = perturb_homotopy(X, seed)
        assert homology_dims(Y) == homology_dims(X)
        assert sum(Y.dims().values()) > sum(X.dims().values())
