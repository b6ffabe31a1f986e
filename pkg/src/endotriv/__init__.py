"""Permutation complexes over finite groups, their Brauer quotients and h-marks."""

from .classfun import ClassFunction, LatticeBasis, borel_smith_check, cfb_basis, membership, omega
from .complexes import Complex, dual, shift, tensor, unit
from .groups import FiniteGroup, Subgroup, build_group, conjugacy_classes_of_subgroups
from .picard import MarksReport, generator_complex, invertible, marks, sphere_catalog, theta
from .search import Budget, realize_search, search_predicate

__all__ = [
    "Budget",
    "ClassFunction",
    "Complex",
    "FiniteGroup",
    "LatticeBasis",
    "MarksReport",
    "Subgroup",
    "borel_smith_check",
    "build_group",
    "cfb_basis",
    "conjugacy_classes_of_subgroups",
    "dual",
    "generator_complex",
    "invertible",
    "marks",
    "membership",
    "omega",
    "realize_search",
    "search_predicate",
    "shift",
    "sphere_catalog",
    "tensor",
    "theta",
    "unit",
]
