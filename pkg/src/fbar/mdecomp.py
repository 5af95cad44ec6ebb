"""The index set M(H), the functions f_{H'} and the decomposition of phi.

M(H) consists of pairs (s, rho): s runs over conjugacy-class
representatives of H and rho over the irreducible characters of the
centralizer Z_H(s).  For a subgroup H', f_{H'}(s, rho) is the multiplicity
of rho in the permutation module of Z_H(s) on the s-fixed cosets
(H/H')^s = {hH' : h^-1 s h in H'}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .chartab import CharacterTable, character_table, inner_product
from .cyclotomic import Cyclotomic
from .errors import (
    ConsistencyError,
    InconsistentSystem,
    MembershipError,
    NonNaturalSolution,
    RankDeficient,
)
from .groups import CosetSpace, Group, Perm, Subgroup, centralizer, conjugate, left_cosets
from .linalg import ColumnSolver


@dataclass(frozen=True)
class MPoint:
    class_index: int
    irrep_index: int


class MSet:
    """M(H) in canonical order: class order, then character-table order."""

    def __init__(self, group: Group):
        self.group = group
        self.classes = group.conjugacy_classes
        self.centralizers: list[Subgroup] = [centralizer(group, c.representative) for c in self.classes]
        self.tables: list[CharacterTable] = [character_table(Z) for Z in self.centralizers]
        self.points: tuple[MPoint, ...] = tuple(
            MPoint(ci, ri) for ci, T in enumerate(self.tables) for ri in range(len(T))
        )
        self.position = {p: i for i, p in enumerate(self.points)}

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def representative(self, p: MPoint) -> Perm:
        return self.classes[p.class_index].representative

    def character(self, p: MPoint):
        return self.tables[p.class_index].rows[p.irrep_index]

    def is_trivial_irrep(self, p: MPoint) -> bool:
        return p.irrep_index == 0

    def label(self, p: MPoint) -> str:
        return f"{self.representative(p).cycle_string()}|{p.irrep_index}"

    def describe(self) -> list[dict]:
        out = []
        for p in self.points:
            T = self.tables[p.class_index]
            out.append(
                {
                    "class": self.representative(p).cycle_string(),
                    "class_index": p.class_index,
                    "irrep": p.irrep_index,
                    "centralizer_order": T.group.order,
                    "irrep_degree": T.degrees[p.irrep_index],
                }
            )
        return out


def m_set(H: Group) -> MSet:
    cached = getattr(H, "_mset", None)
    if cached is None:
        cached = MSet(H)
        H._mset = cached
    return cached


@dataclass(frozen=True)
class ClassFn:
    """A rational-valued function on M(H)."""

    mset: MSet
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.mset):
            raise MembershipError(f"{len(self.values)} values for an M-set of size {len(self.mset)}")

    def __getitem__(self, p: MPoint):
        return self.values[self.mset.position[p]]

    def is_zero(self) -> bool:
        return not any(self.values)

    @classmethod
    def from_mapping(cls, mset: MSet, values: Mapping[MPoint, object]) -> "ClassFn":
        return cls(mset, tuple(values[p] for p in mset.points))


def fixed_cosets(H: Group, Hp: Group, s: Perm, cosets: CosetSpace | None = None) -> list[int]:
    """Indices of the cosets hH' with s hH' = hH'."""
    H.require(s)
    cosets = cosets or left_cosets(H, Hp)
    inner = Hp.element_set
    return [k for k, h in enumerate(cosets.reps) if h.inverse() * s * h in inner]


def _fixed_point_character(cosets: CosetSpace, fixed: Sequence[int], Z: Group) -> list[int]:
    return [sum(1 for k in fixed if cosets.act(c.representative, k) == k) for c in Z.conjugacy_classes]


def _as_natural(m, context: str) -> int:
    if not isinstance(m, (int, Fraction)) or Fraction(m).denominator != 1 or m < 0:
        raise ConsistencyError(f"multiplicity {m!r} is not a natural number ({context})")
    return int(m)


def f_value(H: Group, Hp: Group, p: MPoint) -> int:
    M = m_set(H)
    s = M.representative(p)
    Z = M.centralizers[p.class_index]
    cosets = left_cosets(H, Hp)
    perm_char = _fixed_point_character(cosets, fixed_cosets(H, Hp, s, cosets), Z)
    m = inner_product(perm_char, M.character(p), Z)
    return _as_natural(m, f"f at {M.label(p)}")


def f_value_transported(H: Group, Hp: Group, p: MPoint, g: Perm) -> int:
    """f_{H'} at (g s g^-1, rho o Ad(g^-1)), summed element by element.

    Used to check independence of the class representative.
    """
    M = m_set(H)
    s = M.representative(p)
    gi = g.inverse()
    s2 = g * s * gi
    Z = M.centralizers[p.class_index]
    Z2 = conjugate(Z, g, H)
    table = M.tables[p.class_index]
    cosets = left_cosets(H, Hp)
    fixed = fixed_cosets(H, Hp, s2, cosets)
    acc = Cyclotomic(1, [0])
    for z in Z2.elements:
        pts = sum(1 for k in fixed if cosets.act(z, k) == k)
        if pts:
            acc = acc + table.value(p.irrep_index, gi * z * g).conjugate() * pts
    if not acc.is_rational():
        raise ConsistencyError("transported multiplicity is not rational")
    return _as_natural(Fraction(acc.to_rational()) / Z2.order, "transported f")


def f_vector(H: Group, Hp: Group) -> ClassFn:
    M = m_set(H)
    cosets = left_cosets(H, Hp)
    values = []
    for ci, cls in enumerate(M.classes):
        Z = M.centralizers[ci]
        fixed = fixed_cosets(H, Hp, cls.representative, cosets)
        perm_char = _fixed_point_character(cosets, fixed, Z)
        for ri, row in enumerate(M.tables[ci].rows):
            m = inner_product(perm_char, row, Z)
            values.append(_as_natural(m, f"f at class {ci}, irrep {ri}"))
    return ClassFn(M, tuple(values))


@dataclass(frozen=True)
class FMatrix:
    mset: MSet
    family: tuple
    names: tuple
    columns: tuple  # of ClassFn

    @cached_property
    def solver(self) -> ColumnSolver:
        return ColumnSolver([c.values for c in self.columns])

    @cached_property
    def rows(self) -> list[list[int]]:
        return [[col.values[i] for col in self.columns] for i in range(len(self.mset))]

    def __len__(self) -> int:
        return len(self.columns)

    def combine(self, n: Sequence[int]) -> ClassFn:
        if len(n) != len(self.columns):
            raise MembershipError("coefficient count differs from the family size")
        vals = tuple(sum(c * col.values[i] for c, col in zip(n, self.columns)) for i in range(len(self.mset)))
        return ClassFn(self.mset, vals)

    def with_extra_column(self, col: ClassFn, name: str) -> "FMatrix":
        return FMatrix(self.mset, self.family + (None,), self.names + (name,), self.columns + (col,))


def f_matrix(H: Group, family: Sequence[Subgroup], names: Sequence[str] | None = None) -> FMatrix:
    names = tuple(names) if names is not None else tuple(K.kind or f"H{i}" for i, K in enumerate(family))
    for K in family:
        if not K.element_set <= H.element_set:
            raise MembershipError(f"{K!r} is not a subgroup of {H!r}")
    return FMatrix(m_set(H), tuple(family), names, tuple(f_vector(H, K) for K in family))


@dataclass(frozen=True)
class RankReport:
    rank: int
    columns: int

    @property
    def full_column_rank(self) -> bool:
        return self.rank == self.columns


def check_independence(F: FMatrix) -> RankReport:
    return RankReport(F.solver.rank, len(F.columns))


def decompose(phi: ClassFn, F: FMatrix) -> dict[str, int]:
    """The unique natural numbers n with phi = sum n_H' f_H'."""
    if phi.mset is not F.mset and len(phi.mset) != len(F.mset):
        raise MembershipError("phi and the f-matrix live on different M-sets")
    report = check_independence(F)
    if not report.full_column_rank:
        raise RankDeficient(f"f-matrix has rank {report.rank} < {report.columns} columns")
    x = F.solver.solve(phi.values)
    if x is None:
        raise InconsistentSystem("phi is not a rational combination of the f-functions")
    bad = [(name, v) for name, v in zip(F.names, x) if v.denominator != 1 or v < 0]
    if bad:
        raise NonNaturalSolution(f"solution has non-natural entries {[(n, str(v)) for n, v in bad]}", x)
    return {name: int(v) for name, v in zip(F.names, x)}


def random_round_trip(F: FMatrix, trials: int = 100, high: int = 5, seed: int = 0) -> int:
    """Check decompose(F n) == n on random n; returns the number of trials."""
    rng = random.Random(seed)
    for _ in range(trials):
        n = [rng.randint(0, high) for _ in F.columns]
        got = decompose(F.combine(n), F)
        if [got[name] for name in F.names] != n:
            raise ConsistencyError(f"round trip failed for n = {n}")
    return trials
