"""Finite permutation groups stored by full element enumeration.

Points are 0-based.  Permutations compose right-to-left,
``(p * q)[i] == p[q[i]]``, so groups act on the left.  Every canonical
choice (class representatives, coset representatives, element order)
derives from the lexicographic order on image tuples.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import MembershipError, SizeLimitError, ValidationError

MAX_SYMMETRIC_DEGREE = 8
MAX_F2_DIM = 6


class Perm(tuple):
    """A permutation of ``range(n)`` given by its image tuple."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Perm":
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        p = cls(images)
        if sorted(p) != list(range(n)):
            raise ValidationError(f"cycles {cycles!r} do not define a permutation")
        return p

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: "Perm") -> "Perm":  # type: ignore[override]
        return Perm(self[i] for i in other)

    def inverse(self) -> "Perm":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(len(self)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm{self.cycle_string()}"


def parse_cycles(text: str, degree: int) -> Perm:
    """Inverse of :meth:`Perm.cycle_string`."""
    text = text.strip()
    if text in ("", "()"):
        return Perm.identity(degree)
    if not (text.startswith("(") and text.endswith(")")):
        raise ValidationError(f"bad cycle notation {text!r}")
    cycles = []
    for chunk in text[1:-1].split(")("):
        try:
            pts = [int(x) for x in chunk.replace(",", " ").split()]
        except ValueError:
            raise ValidationError(f"bad cycle notation {text!r}") from None
        if any(p < 0 or p >= degree for p in pts) or len(set(pts)) != len(pts):
            raise ValidationError(f"bad cycle {chunk!r} for degree {degree}")
        cycles.append(pts)
    return Perm.from_cycles(degree, cycles)


def _closure(degree: int, gens: Iterable[Perm]) -> list[Perm]:
    gens = [g for g in set(gens) if not g.is_identity()]
    ident = Perm.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def greedy_generators(degree: int, elements: Sequence[Perm]) -> list[Perm]:
    """Scan ``elements`` in order, keeping each one not yet generated."""
    gens: list[Perm] = []
    reached = {Perm.identity(degree)}
    for g in sorted(elements):
        if g not in reached:
            gens.append(g)
            reached = set(_closure(degree, gens))
    return gens


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Perm
    elements: frozenset

    @property
    def size(self) -> int:
        return len(self.elements)


class Group:
    """A finite permutation group with its complete sorted element list."""

    def __init__(
        self,
        degree: int,
        elements: Sequence[Perm],
        generators: Sequence[Perm] = (),
        kind: Optional[str] = None,
    ):
        self.degree = degree
        self.elements: tuple[Perm, ...] = tuple(sorted(elements))
        self.generators: tuple[Perm, ...] = tuple(generators)
        self.kind = kind

    @classmethod
    def generated(cls, degree: int, gens: Iterable[Perm], kind: Optional[str] = None) -> "Group":
        gens = [Perm(g) for g in gens]
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValidationError(f"images {list(g)} are not a permutation of degree {degree}")
        return cls(degree, _closure(degree, gens), gens, kind)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.index

    def __repr__(self) -> str:
        tag = f" {self.kind}" if self.kind else ""
        return f"<Group{tag} degree={self.degree} order={self.order}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, Group) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    @cached_property
    def index(self) -> dict[Perm, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @cached_property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(1, *(g.order() for g in self.elements))

    def is_abelian(self) -> bool:
        gens = self.generators or self.elements
        return all(a * b == b * a for a in gens for b in gens)

    def require(self, g: Perm) -> Perm:
        if g not in self.index:
            raise MembershipError(f"{g!r} is not an element of {self!r}")
        return g

    @cached_property
    def conjugacy_classes(self) -> tuple[ConjugacyClass, ...]:
        """Classes ordered by (element order, class size, representative)."""
        remaining = set(self.elements)
        classes = []
        for g in self.elements:
            if g not in remaining:
                continue
            cls = frozenset(h * g * h.inverse() for h in self.elements)
            remaining -= cls
            classes.append(ConjugacyClass(min(cls), cls))
        classes.sort(key=lambda c: (c.representative.order(), c.size, c.representative))
        return tuple(classes)

    @cached_property
    def class_of(self) -> dict[Perm, int]:
        """Map each element to the index of its conjugacy class."""
        return {g: i for i, c in enumerate(self.conjugacy_classes) for g in c.elements}


def conjugacy_classes(G: Group) -> tuple[ConjugacyClass, ...]:
    return G.conjugacy_classes


class Subgroup(Group):
    """A subgroup recorded together with its parent group."""

    def __init__(self, parent: Group, elements: Sequence[Perm], generators: Sequence[Perm] = (), kind=None):
        super().__init__(parent.degree, elements, generators, kind)
        self.parent = parent

    def __repr__(self) -> str:
        tag = f" {self.kind}" if self.kind else ""
        return f"<Subgroup{tag} order={self.order} of {self.parent!r}>"

    def is_normal(self) -> bool:
        return all(g * h * g.inverse() in self.index for g in self.parent.generators or self.parent.elements for h in self.elements)


def make_symmetric(n: int) -> Group:
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise SizeLimitError(f"symmetric group degree must be in [1, {MAX_SYMMETRIC_DEGREE}], got {n}")
    elements = [Perm(p) for p in itertools.permutations(range(n))]
    gens = []
    if n >= 2:
        gens.append(Perm.from_cycles(n, [[0, 1]]))
    if n >= 3:
        gens.append(Perm.from_cycles(n, [list(range(n))]))
    return Group(n, elements, gens, kind=f"S{n}")


def make_elementary_abelian2(d: int) -> Group:
    """F_2^d realised on 2d points; basis vector i swaps points 2i and 2i+1.

    ``generators`` is the ordered basis.  The trivial group (d=0) lives on
    one point.
    """
    if not 0 <= d <= MAX_F2_DIM:
        raise SizeLimitError(f"F2 dimension must be in [0, {MAX_F2_DIM}], got {d}")
    degree = max(1, 2 * d)
    gens = [Perm.from_cycles(degree, [[2 * i, 2 * i + 1]]) for i in range(d)]
    elements = [vector_to_perm(mask, d) for mask in range(2**d)]
    return Group(degree, elements, gens, kind=f"F2^{d}")


def vector_to_perm(mask: int, d: int) -> Perm:
    """Element of F_2^d (bit i = coordinate of basis vector i) as a permutation."""
    degree = max(1, 2 * d)
    images = list(range(degree))
    for i in range(d):
        if mask >> i & 1:
            images[2 * i], images[2 * i + 1] = 2 * i + 1, 2 * i
    return Perm(images)


def perm_to_vector(p: Perm, d: int) -> int:
    mask = 0
    for i in range(d):
        if p[2 * i] == 2 * i + 1:
            mask |= 1 << i
    return mask


def subgroup_generated(G: Group, gens: Iterable[Perm], kind: Optional[str] = None) -> Subgroup:
    gens = [G.require(Perm(g)) for g in gens]
    return Subgroup(G, _closure(G.degree, gens), gens, kind)


def subgroup_from_elements(G: Group, elements: Iterable[Perm], kind: Optional[str] = None) -> Subgroup:
    """Wrap a closed subset of ``G``; raises if it is not a subgroup."""
    elems = sorted(set(Perm(e) for e in elements))
    for e in elems:
        G.require(e)
    es = set(elems)
    if G.identity not in es or any(a * b.inverse() not in es for a in elems for b in elems):
        raise ValidationError("element set is not closed under the group law")
    return Subgroup(G, elems, greedy_generators(G.degree, elems), kind=kind)


def as_subgroup(G: Group, H: Group) -> Subgroup:
    if isinstance(H, Subgroup) and H.parent == G:
        return H
    if not H.element_set <= G.element_set:
        raise MembershipError(f"{H!r} is not contained in {G!r}")
    sub = Subgroup(G, H.elements, H.generators, H.kind)
    return sub


def whole(G: Group) -> Subgroup:
    return Subgroup(G, G.elements, G.generators, G.kind)


def trivial_subgroup(G: Group) -> Subgroup:
    return Subgroup(G, [G.identity], kind="1")


def centralizer(G: Group, s: Perm) -> Subgroup:
    G.require(s)
    return Subgroup(G, [g for g in G.elements if g * s == s * g])


def conjugate(H: Group, g: Perm, parent: Optional[Group] = None) -> Subgroup:
    """The subgroup g H g^-1."""
    gi = g.inverse()
    parent = parent if parent is not None else getattr(H, "parent", H)
    return Subgroup(parent, [g * h * gi for h in H.elements])


def conjugate_subgroup_witness(G: Group, A: Group, B: Group) -> Optional[Perm]:
    """Smallest g in G with g A g^-1 = B, or None."""
    if len(A) != len(B):
        return None
    target = B.element_set
    for g in G.elements:
        gi = g.inverse()
        # generators suffice: the image is a subgroup of the same order
        if all(g * a * gi in target for a in A.generators or A.elements):
            return g
    return None


def intersect(A: Subgroup, B: Subgroup) -> Subgroup:
    if A.parent != B.parent:
        raise MembershipError("subgroups have different parents")
    return Subgroup(A.parent, sorted(A.element_set & B.element_set))


class CosetSpace:
    """Left cosets hH' of a subgroup, with minimal representatives."""

    def __init__(self, G: Group, H: Group):
        if not H.element_set <= G.element_set:
            raise MembershipError(f"{H!r} is not a subgroup of {G!r}")
        self.parent = G
        self.subgroup = H
        coset_of: dict[Perm, int] = {}
        reps: list[Perm] = []
        for g in G.elements:  # sorted, so the first hit is the minimum
            if g in coset_of:
                continue
            k = len(reps)
            reps.append(g)
            for h in H.elements:
                coset_of[g * h] = k
        self.reps: tuple[Perm, ...] = tuple(reps)
        self._coset_of = coset_of

    def __len__(self) -> int:
        return len(self.reps)

    def coset_index(self, g: Perm) -> int:
        return self._coset_of[g]

    def act(self, g: Perm, k: int) -> int:
        """Index of g·(rep_k H')."""
        return self._coset_of[g * self.reps[k]]


def left_cosets(G: Group, H: Group) -> CosetSpace:
    return CosetSpace(G, H)
