import pytest

from endotriv.classfun import ClassFunction, borel_smith_check, cfb_basis, constant, lattice_from_generators, lattices_equal
from endotriv.groups import GroupError, conjugacy_classes_of_subgroups
from endotriv.picard import marks, theta
from endotriv.search import Budget, realize_search, search_predicate


def test_constant_one_found_immediately(groups):
    G = groups("C4")
    res = realize_search(constant(G, 2, 1))
    assert res.found and res.candidates == 0
    assert res.witness.trimmed().dims() == {1: 1}


def test_c4_inflated_sign_within_two_terms(groups):
    G = groups("C4")
    target = ClassFunction(G, 2, (1, 1, 0))
    res = realize_search(target, Budget(degrees=2))
    assert res.found and res.exhaustive
    assert theta(res.witness) == target
    assert len(res.witness.trimmed().degrees) == 2


def test_c4_rotation_sphere_marks(groups):
    G = groups("C4")
    target = ClassFunction(G, 2, (2, 0, 0))
    res = realize_search(target, Budget(degrees=3))
    assert res.found and theta(res.witness) == target


def test_non_borel_smith_target_not_found(groups):
    G = groups("C4")
    res = realize_search(ClassFunction(G, 2, (1, 0, 0)), Budget(degrees=3))
    assert not res.found and res.exhaustive


def test_q8_mod4_target_not_found(groups):
    G = groups("Q8")
    cls = conjugacy_classes_of_subgroups(G, 2)
    subs = tuple(c.representative for c in cls if c.order in (1, 2, 8))
    res = realize_search(ClassFunction(G, 2, (1, 0, 0, 0, 0, 0)), Budget(3, 2, subs))
    assert not res.found and res.exhaustive


def test_target_wider_than_window(groups):
    G = groups("C2")
    res = realize_search(ClassFunction(G, 2, (5, 0)), Budget(degrees=3))
    assert not res.found and res.exhaustive and res.configurations == 0


def test_candidate_cap_marks_search_partial(groups):
    G = groups("D8")
    res = realize_search(ClassFunction(G, 2, (2, 0, 1, 1, 0, 0, 0, 0)), Budget(degrees=3, max_candidates=10))
    assert not res.exhaustive


@pytest.mark.parametrize("name", ["C4", "V4"])
def test_every_hit_is_borel_smith_and_hits_generate_cfb(groups, name):
    G = groups(name)
    res = search_predicate(G, 2, lambda h: True, Budget(degrees=3), collect=True)
    assert res.exhaustive and res.hits
    for h in res.hits:
        assert borel_smith_check(h)[0]
    L = cfb_basis(G, 2)
    diffs = [tuple(a - b for a, b in zip(h.values, res.hits[0].values)) for h in res.hits]
    assert lattices_equal(lattice_from_generators(diffs + [(1,) * L.ambient], L.ambient), L)


def test_witnesses_are_verified(groups):
    G = groups("V4")
    target = ClassFunction(G, 2, (2, 1, 1, 2, 1))
    res = realize_search(target, Budget(degrees=3))
    assert res.found
    rep = marks(res.witness)
    assert rep.invertible and rep.class_function == target


def test_non_p_group_search(groups):
    G = groups("D6")
    res = realize_search(constant(G, 3, 1), Budget(degrees=2))
    assert res.found and theta(res.witness) == constant(G, 3, 1)


def test_budget_parse(groups):
    G = groups("Q8")
    b = Budget.parse("degrees=2,summands=1,classes=0:1:5,candidates=99", G, seed=4)
    assert (b.degrees, b.summands, b.max_candidates, b.seed) == (2, 1, 99, 4)
    assert [S.order for S in b.subgroups] == [1, 2, 8]
    assert Budget.parse("", G) == Budget()
    with pytest.raises(GroupError):
        Budget.parse("depth=3", G)
    with pytest.raises(GroupError):
        Budget.parse("classes=0:99", G)
