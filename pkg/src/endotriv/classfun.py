"""Integral class functions on p-subgroups and the Borel-Smith lattice.

Coordinates follow ``conjugacy_classes_of_subgroups(G, p)``: entry ``i`` of a
class function is its value on the i-th p-subgroup class in canonical order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp

from .groups import (
    FiniteGroup,
    GroupError,
    SectionKind,
    Subgroup,
    SubgroupClass,
    class_index,
    conjugacy_classes_of_subgroups,
    is_subconjugate,
    section_type,
)


@dataclass(frozen=True, eq=False)
class ClassFunction:
    group: FiniteGroup
    p: int
    values: tuple[int, ...]

    def __post_init__(self):
        n = len(conjugacy_classes_of_subgroups(self.group, self.p))
        vals = tuple(int(v) for v in self.values)
        if len(vals) != n:
            raise GroupError(f"expected {n} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    def _other(self, other: "ClassFunction") -> tuple[int, ...]:
        if other.group is not self.group or other.p != self.p:
            raise GroupError("class functions on different groups")
        return other.values

    def __eq__(self, other) -> bool:
        if isinstance(other, ClassFunction):
            return self.group is other.group and self.p == other.p and self.values == other.values
        return tuple(other) == self.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, self.p, tuple(a + b for a, b in zip(self.values, self._other(other))))

    def __neg__(self) -> "ClassFunction":
        return ClassFunction(self.group, self.p, tuple(-a for a in self.values))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        return self + (-other)

    def __mul__(self, n: int) -> "ClassFunction":
        return ClassFunction(self.group, self.p, tuple(n * a for a in self.values))

    __rmul__ = __mul__

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __repr__(self) -> str:
        return f"ClassFunction({self.group.name}, p={self.p}, {list(self.values)})"

    def at(self, H: Subgroup) -> int:
        return self.values[class_index(self.group, self.p)[H]]


def constant(G: FiniteGroup, p: int, c: int) -> ClassFunction:
    n = len(conjugacy_classes_of_subgroups(G, p))
    return ClassFunction(G, p, (c,) * n)


def omega(G: FiniteGroup, p: int, P: SubgroupClass | Subgroup) -> ClassFunction:
    """1 on the classes subconjugate to P, 0 elsewhere."""
    rep = P.representative if isinstance(P, SubgroupClass) else P
    return ClassFunction(
        G, p,
        tuple(int(is_subconjugate(G, c.representative, rep)) for c in conjugacy_classes_of_subgroups(G, p)),
    )


# -- Borel-Smith conditions ------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    condition: int
    N: Subgroup
    H: Subgroup
    detail: str


def _intermediate(N: Subgroup, H: Subgroup) -> list[Subgroup]:
    return [K for K in H.parent.subgroups if N < K < H]


def borel_smith_sections(G: FiniteGroup, p: int, all_pairs: bool = False) -> Iterator[tuple]:
    """Yield ``(N, H, section, intermediates)`` for the sections the conditions see.

    H runs over class representatives of p-subgroups (or over all p-subgroups
    when ``all_pairs``), N over the subgroups normal in H.
    """
    if all_pairs:
        Hs = [H for H in G.subgroups if H.is_p_subgroup(p)]
    else:
        Hs = [c.representative for c in conjugacy_classes_of_subgroups(G, p)]
    for H in Hs:
        for N in G.subgroups:
            if N < H and N.is_normal_in(H):
                sec = section_type(N, H)
                if sec.kind is not SectionKind.OTHER:
                    yield N, H, sec, _intermediate(N, H)


def borel_smith_check(h: ClassFunction) -> tuple[bool, list[Violation]]:
    G, p = h.group, h.p
    bad: list[Violation] = []
    for N, H, sec, mids in borel_smith_sections(G, p):
        kind = sec.kind
        if kind is SectionKind.ELEM_ABELIAN_RANK2 and sec.prime == p:
            total = h.at(N) - sum(h.at(K) for K in mids) + p * h.at(H)
            if total:
                bad.append(Violation(1, N, H, f"h(N) - sum h(K) + p h(H) = {total}"))
        elif kind is SectionKind.CYCLIC_P_ODD and sec.prime == p:
            if (h.at(N) - h.at(H)) % 2:
                bad.append(Violation(2, N, H, f"h(N)={h.at(N)} and h(H)={h.at(H)} differ mod 2"))
        elif kind is SectionKind.CYCLIC4:
            (K,) = mids
            if (h.at(N) - h.at(K)) % 2:
                bad.append(Violation(2, N, H, f"h(N)={h.at(N)} and h(K)={h.at(K)} differ mod 2"))
        elif kind is SectionKind.QUATERNION8:
            (K,) = [K for K in mids if K.order == 2 * N.order]
            if (h.at(N) - h.at(K)) % 4:
                bad.append(Violation(3, N, H, f"h(N)={h.at(N)} and h(K)={h.at(K)} differ mod 4"))
    return not bad, bad


def constraint_rows(G: FiniteGroup, p: int, all_pairs: bool = False) -> list[tuple[tuple[int, ...], int]]:
    """Distinct ``(row, modulus)`` pairs; modulus 0 marks an equation row . h = 0."""
    idx = class_index(G, p)
    n = len(conjugacy_classes_of_subgroups(G, p))
    rows: set[tuple[tuple[int, ...], int]] = set()
    for N, H, sec, mids in borel_smith_sections(G, p, all_pairs):
        r = [0] * n
        if sec.kind is SectionKind.ELEM_ABELIAN_RANK2 and sec.prime == p:
            r[idx[N]] += 1
            for K in mids:
                r[idx[K]] -= 1
            r[idx[H]] += p
            m = 0
        elif sec.kind is SectionKind.CYCLIC_P_ODD and sec.prime == p:
            r[idx[N]] += 1
            r[idx[H]] -= 1
            m = 2
        elif sec.kind is SectionKind.CYCLIC4:
            r[idx[N]] += 1
            r[idx[mids[0]]] -= 1
            m = 2
        elif sec.kind is SectionKind.QUATERNION8:
            (K,) = [K for K in mids if K.order == 2 * N.order]
            r[idx[N]] += 1
            r[idx[K]] -= 1
            m = 4
        else:
            continue
        if not any(r if m == 0 else (v % m for v in r)):
            continue
        # normalise the sign so that conjugate sections give identical rows
        first = next((v for v in r if v), 0)
        if first < 0:
            r = [-v for v in r]
        rows.add((tuple(r), m))
    return sorted(rows, key=lambda rm: (rm[1], rm[0]))


# -- lattices ------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeBasis:
    basis: tuple[tuple[int, ...], ...]
    ambient: int
    index: int  # [Z^n : L] when full rank, else 0

    @property
    def rank(self) -> int:
        return len(self.basis)


def lattice_from_generators(gens, ambient: int) -> LatticeBasis:
    """Canonical (Hermite) basis of the lattice spanned by integer vectors."""
    gens = [list(g) for g in gens if any(g)]
    if not gens:
        return LatticeBasis((), ambient, 0 if ambient else 1)
    H = hermite_normal_form(Matrix(gens).T)
    cols = [tuple(int(v) for v in H[:, j]) for j in range(H.shape[1]) if any(H[:, j])]
    basis = tuple(cols)
    index = 0
    if len(basis) == ambient:
        index = abs(int(Matrix(basis).det()))
    return LatticeBasis(basis, ambient, index)


def integer_kernel(M: Matrix) -> list[list[int]]:
    """A Z-basis of {x in Z^c : M x = 0} via the Smith decomposition D = S M T."""
    rows, cols = M.shape
    if rows == 0:
        return [[int(i == j) for i in range(cols)] for j in range(cols)]
    D, _, T = smith_normal_decomp(M)
    nz = [j for j in range(cols) if any(D[i, j] for i in range(rows))]
    return [[int(v) for v in T[:, j]] for j in range(cols) if j not in nz]


def cfb_basis(G: FiniteGroup, p: int) -> LatticeBasis:
    """The lattice of class functions satisfying every Borel-Smith condition.

    Congruences ``r.h = 0 mod m`` become equations ``r.h + m t = 0`` in an
    auxiliary integer variable; the lattice is the projection of the integer
    kernel of the extended system onto the h coordinates (injective, since
    t is determined by h).
    """
    n = len(conjugacy_classes_of_subgroups(G, p))
    cons = constraint_rows(G, p)
    congr = [(r, m) for r, m in cons if m]
    aux = len(congr)
    rows = []
    for r, m in cons:
        ext = [0] * aux
        if m:
            ext[congr.index((r, m))] = m
        rows.append(list(r) + ext)
    M = Matrix(rows) if rows else Matrix.zeros(0, n + aux)
    kernel = integer_kernel(M)
    return lattice_from_generators([v[:n] for v in kernel], n)


def membership(h: ClassFunction | tuple, L: LatticeBasis) -> bool:
    vals = list(h.values if isinstance(h, ClassFunction) else h)
    if len(vals) != L.ambient:
        raise GroupError(f"dimension mismatch: {len(vals)} vs {L.ambient}")
    if not any(vals):
        return True
    if not L.basis:
        return False
    B = Matrix(L.basis).T
    try:
        sol, params = B.gauss_jordan_solve(Matrix(vals))
    except ValueError:
        return False
    return all(v.is_integer for v in sol)


def lattices_equal(a: LatticeBasis, b: LatticeBasis) -> bool:
    return a.ambient == b.ambient and a.rank == b.rank and all(membership(v, b) for v in a.basis) and all(
        membership(v, a) for v in b.basis
    )
