"""Finite G-sets assembled from transitive pieces G/H'.

Points are indexed globally in (piece, copy, coset representative)
order, and the action is left multiplication on cosets.  The full action
table is computed up front.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .chartab import character_table, inner_product
from .errors import ConsistencyError, MembershipError, ValidationError
from .groups import (
    CosetSpace,
    Group,
    Perm,
    Subgroup,
    conjugate_subgroup_witness,
    left_cosets,
)
from .mdecomp import ClassFn, MSet, fixed_cosets, m_set


@dataclass(frozen=True)
class YPoint:
    piece: int
    copy: int
    coset: int


class GSet:
    def __init__(self, group: Group, subgroups: Sequence[Subgroup], copies: Sequence[int], names: Sequence[str] | None = None):
        if len(subgroups) != len(copies):
            raise ValidationError("one copy count per subgroup is required")
        if any(n < 0 for n in copies):
            raise ValidationError(f"copy counts must be natural numbers, got {list(copies)}")
        self.group = group
        self.subgroups = list(subgroups)
        self.copies = [int(n) for n in copies]
        self.names = list(names) if names is not None else [H.kind or f"H{i}" for i, H in enumerate(subgroups)]
        self.cosets: list[CosetSpace] = [left_cosets(group, H) for H in subgroups]
        points = []
        offsets = []
        for i, (cs, n) in enumerate(zip(self.cosets, self.copies)):
            offsets.append([])
            for c in range(n):
                offsets[i].append(len(points))
                points.extend(YPoint(i, c, k) for k in range(len(cs)))
        self.points: tuple[YPoint, ...] = tuple(points)
        self._offsets = offsets
        # action[g_index][y] = g.y
        table = []
        for g in group.elements:
            row = [0] * len(points)
            for y, pt in enumerate(points):
                row[y] = offsets[pt.piece][pt.copy] + self.cosets[pt.piece].act(g, pt.coset)
            table.append(row)
        self.action: list[list[int]] = table

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        return f"<GSet of {self.group!r}: {len(self)} points, pieces {self.piece_sizes()}>"

    def act(self, g: Perm, y: int) -> int:
        return self.action[self.group.index[g]][y]

    def base_point(self, piece: int, copy: int = 0) -> int:
        return self._offsets[piece][copy]

    def coset_rep(self, y: int) -> Perm:
        pt = self.points[y]
        return self.cosets[pt.piece].reps[pt.coset]

    def piece_sizes(self) -> list[tuple[str, int, int]]:
        return [(name, n, len(cs)) for name, n, cs in zip(self.names, self.copies, self.cosets)]

    def check_action_laws(self) -> None:
        """Identity and compatibility laws over all group elements and points."""
        G = self.group
        ident = G.index[G.identity]
        if self.action[ident] != list(range(len(self))):
            raise ConsistencyError("identity does not act trivially")
        for gi, g in enumerate(G.elements):
            row_g = self.action[gi]
            if sorted(row_g) != list(range(len(self))):
                raise ConsistencyError(f"{g!r} does not act bijectively")
            for hi, h in enumerate(G.elements):
                gh = self.action[G.index[g * h]]
                row_h = self.action[hi]
                if any(gh[y] != row_g[row_h[y]] for y in range(len(self))):
                    raise ConsistencyError(f"(gh).y != g.(h.y) for g={g!r}, h={h!r}")

    @cached_property
    def orbit_reps(self) -> list[int]:
        seen = set()
        reps = []
        for y in range(len(self)):
            if y not in seen:
                reps.append(y)
                seen.update(row[y] for row in self.action)
        return reps


def build_gset(group: Group, subgroups: Sequence[Subgroup], copies: Sequence[int], names=None) -> GSet:
    return GSet(group, subgroups, copies, names)


def build_yprime(group: Group, family: Sequence[Subgroup], n: Mapping[str, int] | Sequence[int], names=None) -> GSet:
    """Disjoint union of n[H'] copies of group/H' over the family."""
    names = list(names) if names is not None else [H.kind or f"H{i}" for i, H in enumerate(family)]
    if isinstance(n, Mapping):
        missing = set(names) - set(n)
        if missing:
            raise ValidationError(f"no multiplicity given for {sorted(missing)}")
        counts = [n[name] for name in names]
    else:
        counts = list(n)
    return GSet(group, family, counts, names)


def stabilizer_of_point(Y: GSet, y: int) -> Subgroup:
    if not 0 <= y < len(Y):
        raise MembershipError(f"point {y} is not in a G-set of size {len(Y)}")
    G = Y.group
    return Subgroup(G, [g for gi, g in enumerate(G.elements) if Y.action[gi][y] == y])


def check_stabilizer_conjecture(Y: GSet, catalogue: Sequence[Subgroup]) -> bool:
    """Every point stabilizer is conjugate to a catalogue member."""
    G = Y.group
    seen: dict[tuple, bool] = {}
    for y in range(len(Y)):
        stab = stabilizer_of_point(Y, y)
        key = stab.elements
        if key not in seen:
            seen[key] = any(conjugate_subgroup_witness(G, stab, H) is not None for H in catalogue)
        if not seen[key]:
            return False
    return True


def fixed_points(Y: GSet, s: Perm) -> list[int]:
    row = Y.action[Y.group.index[s]]
    return [y for y in range(len(Y)) if row[y] == y]


def burnside_fixed_counts(Y: GSet) -> list[int]:
    """|Y^s| per conjugacy class, cross-checked against the coset count formula."""
    G = Y.group
    out = []
    for c in G.conjugacy_classes:
        s = c.representative
        direct = len(fixed_points(Y, s))
        formula = sum(n * len(fixed_cosets(G, H, s, cs)) for H, n, cs in zip(Y.subgroups, Y.copies, Y.cosets))
        if direct != formula:
            raise ConsistencyError(f"fixed-point count mismatch at {s!r}: {direct} vs {formula}")
        out.append(direct)
    return out


def fixed_point_multiplicities(Y: GSet, mset: MSet | None = None) -> ClassFn:
    """(s, rho) -> multiplicity of rho in C[Y^s] as a Z(s)-module, via the action table."""
    G = Y.group
    M = mset or m_set(G)
    values = []
    for ci, cls in enumerate(M.classes):
        fixed = fixed_points(Y, cls.representative)
        Z = M.centralizers[ci]
        perm_char = []
        for zc in Z.conjugacy_classes:
            row = Y.action[G.index[zc.representative]]
            perm_char.append(sum(1 for y in fixed if row[y] == y))
        for row in character_table(Z).rows:
            m = inner_product(perm_char, row, Z)
            if not isinstance(m, int) or m < 0:
                raise ConsistencyError(f"non-natural multiplicity {m!r}")
            values.append(m)
    return ClassFn(M, tuple(values))


def describe(Y: GSet) -> dict:
    pieces = []
    for i, (name, n, cs) in enumerate(zip(Y.names, Y.copies, Y.cosets)):
        H = Y.subgroups[i]
        gens = list(H.generators) if H.generators else [g for g in H.elements if not g.is_identity()]
        pieces.append(
            {
                "subgroup": name,
                "copies": n,
                "orbit_size": len(cs),
                "stabilizer_order": H.order,
                "stabilizer_generators": [g.cycle_string() for g in gens],
            }
        )
    return {"size": len(Y), "pieces": pieces}
