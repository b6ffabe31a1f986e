"""h-marks of complexes, the invertibility test, and the generator complexes.

For every conjugacy class of p-subgroups H we take the Brauer quotient of a
complex at H and look at the homology of the underlying complex of vector
spaces. A complex is invertible exactly when each of these homologies is
one-dimensional; its degree then gives the value of the class function
``theta(X)`` at H.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .brauer import brauer_complex
from .classfun import ClassFunction, borel_smith_check
from .complexes import Complex, augmentation_complex, homology_dims, shift, unit
from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    SubgroupClass,
    conjugacy_classes_of_subgroups,
    sylow_classes,
)
from .gsets import orbit_gset
from .permmod import PermModule, augmentation


class NotInvertibleError(ValueError):
    pass


class InternalError(RuntimeError):
    """A computed invariant broke a property that must always hold."""


@dataclass(frozen=True)
class ClassMarks:
    subgroup: Subgroup
    homology: dict  # degree -> dimension, nonzero entries only
    sylow: bool

    @property
    def total(self) -> int:
        return sum(self.homology.values())

    @property
    def degree(self) -> int | None:
        return next(iter(self.homology)) if len(self.homology) == 1 else None


@dataclass(frozen=True)
class MarksReport:
    group: FiniteGroup
    p: int
    classes: tuple[ClassMarks, ...]

    @property
    def in_lambda(self) -> bool:
        for c in self.classes:
            if c.degree is None:
                return False
            if c.sylow and c.total != 1:
                return False
        return True

    @property
    def invertible(self) -> bool:
        return self.witness is None

    @property
    def witness(self) -> Subgroup | None:
        """First class (canonical order) whose homology is not one-dimensional."""
        for c in self.classes:
            if c.total != 1:
                return c.subgroup
        return None

    @property
    def class_function(self) -> ClassFunction | None:
        if not self.in_lambda:
            return None
        return ClassFunction(self.group, self.p, tuple(c.degree for c in self.classes))

    def lines(self) -> list[str]:
        out = []
        for i, c in enumerate(self.classes):
            hom = ", ".join(f"{n}:{d}" for n, d in sorted(c.homology.items())) or "zero"
            tag = " (Sylow)" if c.sylow else ""
            out.append(f"[{i}] {c.subgroup.label}{tag}: homology {{{hom}}}")
        out.append(f"in_lambda: {str(self.in_lambda).lower()}")
        out.append(f"invertible: {str(self.invertible).lower()}")
        if self.witness is not None:
            out.append(f"witness: {self.witness.label}")
        cf = self.class_function
        if cf is not None:
            out.append(f"lambda: {list(cf.values)}")
        return out


def marks(X: Complex) -> MarksReport:
    G, p = X.group, X.p
    syl = set(sylow_classes(G, p))
    out = []
    for i, cls in enumerate(conjugacy_classes_of_subgroups(G, p)):
        H = cls.representative
        B = brauer_complex(X, H).complex
        out.append(ClassMarks(H, dict(sorted(homology_dims(B).items())), i in syl))
    return MarksReport(G, p, tuple(out))


def invertible(X: Complex) -> bool:
    return marks(X).invertible


def theta(X: Complex) -> ClassFunction:
    rep = marks(X)
    if not rep.invertible:
        raise NotInvertibleError(f"homology at {rep.witness.label} is not one-dimensional")
    h = rep.class_function
    ok, bad = borel_smith_check(h)
    if not ok:
        raise InternalError(f"h-marks {list(h.values)} violate Borel-Smith: {bad[0]}")
    return h


def _rep(G: FiniteGroup, P) -> Subgroup:
    return P.representative if isinstance(P, SubgroupClass) else P


def generator_complex(G: FiniteGroup, p: int, P: SubgroupClass | Subgroup) -> Complex:
    """X_P: shift(unit, 1) when P contains a Sylow subgroup, else [k(G/P) -> k] in degrees 1, 0."""
    H = _rep(G, P)
    if not H.is_p_subgroup(p):
        raise GroupError(f"{H.label} is not a p-subgroup")
    if H.order == max(c.order for c in conjugacy_classes_of_subgroups(G, p)):
        return shift(unit(G, p), 1)
    return augmentation_complex(G, H, p)


# -- hand-built representation spheres -----------------------------------------------


def _iso_type(G: FiniteGroup) -> str:
    if G.order == 2:
        return "C2"
    if G.order == 4:
        return "C4" if G.exponent == 4 else "V4"
    raise GroupError(f"no sphere catalog for a group of order {G.order}")


def sphere_catalog(G: FiniteGroup) -> list[tuple[str, Complex]]:
    """Named reduced cellular chain complexes of representation spheres (mod 2)."""
    kind = _iso_type(G)
    p = 2
    classes = conjugacy_classes_of_subgroups(G, p)
    if kind == "C2":
        return [("sign", augmentation_complex(G, G.trivial, p))]
    if kind == "V4":
        mids = [c.representative for c in classes if c.order == 2]
        return [(f"sign_{K.label}", augmentation_complex(G, K, p)) for K in mids]
    (C2,) = [c.representative for c in classes if c.order == 2]
    g = next(x for x in range(G.order) if G.element_order(x) == 4)
    free = PermModule(orbit_gset(G, G.trivial), p)
    aug = augmentation(free)
    one_minus_g = (np.eye(free.dim, dtype=np.int64) - free.rho(g)) % p
    rotation = Complex(
        G, p, {2: free, 1: free, 0: aug.target}, {2: one_minus_g, 1: aug.matrix}
    )
    return [("inflated_sign", augmentation_complex(G, C2, p)), ("rotation", rotation)]
