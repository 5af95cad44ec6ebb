"""Subgroup catalogues for the possible component groups.

Points are 0-based, so letters 1..n in the usual notation become 0..n-1 here and the
involution defining D8 (1<->4, 2<->3) is ``(0 3)(1 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import f2_families as f2
from .errors import ValidationError
from .groups import (
    Group,
    Perm,
    Subgroup,
    centralizer,
    conjugate_subgroup_witness,
    make_elementary_abelian2,
    make_symmetric,
    perm_to_vector,
    subgroup_from_elements,
    subgroup_generated,
    vector_to_perm,
)

VARIANTS = ("S3", "S4", "S5", "F2")

EXPECTED_ORDERS = {
    ("S3", False): [1, 2, 6],
    ("S3", True): [2, 6],
    ("S4", False): [2, 6, 24, 4, 8],
    ("S5", False): [2, 6, 24, 120, 4, 12, 8],
}

D8_INVOLUTION = ((0, 3), (1, 2))


@dataclass(frozen=True)
class GroupKind:
    variant: str
    g2: bool = False
    d: int = 0
    exceptional_512_4096: bool = False
    mode: str = "zero-inclusive"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValidationError(f"unknown group kind {self.variant!r}")
        if self.g2 and self.variant != "S3":
            raise ValidationError("the G2 flag only applies to S3")
        if self.variant != "F2" and self.d:
            raise ValidationError("d only applies to the F2 kind")
        if self.exceptional_512_4096 and not (self.variant == "F2" and self.d == 1):
            raise ValidationError("the 512/4096 exception only applies to F2 with d = 1")
        if self.variant == "F2" and not 0 <= self.d <= f2.MAX_DIM:
            raise ValidationError(f"F2 dimension must be in [0, {f2.MAX_DIM}]")

    @classmethod
    def parse(cls, text: str, **flags) -> "GroupKind":
        """``S3``, ``S4``, ``S5``, ``F2``, or a shorthand like ``F2:3``."""
        if text.startswith("F2"):
            rest = text[2:].lstrip(":^")
            d = int(rest) if rest else flags.pop("d", 0)
            return cls("F2", d=d, **flags)
        return cls(text, **flags)

    @property
    def label(self) -> str:
        if self.variant == "F2":
            return f"F2^{self.d}" + (" (512/4096 exception)" if self.exceptional_512_4096 else "")
        return self.variant + (" (G2)" if self.g2 else "")

    @cached_property
    def group(self) -> Group:
        if self.variant == "F2":
            return make_elementary_abelian2(self.d)
        return make_symmetric(int(self.variant[1]))


def _cyc(n: int, *cycles) -> Perm:
    return Perm.from_cycles(n, [list(c) for c in cycles])


def _symmetric_on_prefix(G: Group, k: int, name: str) -> Subgroup:
    n = G.degree
    gens = []
    if k >= 2:
        gens.append(_cyc(n, (0, 1)))
    if k >= 3:
        gens.append(_cyc(n, tuple(range(k))))
    return subgroup_generated(G, gens, kind=name)


def d8_in_s4() -> Subgroup:
    S4 = make_symmetric(4)
    return centralizer(S4, _cyc(4, *D8_INVOLUTION))


def _symmetric_catalogue(kind: GroupKind) -> list[Subgroup]:
    G = kind.group
    n = G.degree
    s2 = _symmetric_on_prefix(G, 2, "S2")
    s3 = _symmetric_on_prefix(G, 3, "S3")
    if n == 3:
        if kind.g2:
            return [s2, s3]
        return [subgroup_generated(G, [], kind="1"), s2, s3]
    s4 = _symmetric_on_prefix(G, 4, "S4")
    s2s2 = subgroup_generated(G, [_cyc(n, (0, 1)), _cyc(n, (2, 3))], kind="S2xS2")
    d8 = subgroup_from_elements(G, [Perm(tuple(p) + tuple(range(4, n))) for p in d8_in_s4().elements], kind="D8")
    if n == 4:
        return [s2, s3, s4, s2s2, d8]
    s5 = _symmetric_on_prefix(G, 5, "S5")
    s2s3 = subgroup_generated(G, [_cyc(n, (0, 1)), _cyc(n, (2, 3, 4)), _cyc(n, (2, 3))], kind="S2xS3")
    return [s2, s3, s4, s5, s2s2, s2s3, d8]


def subspace_subgroup(G: Group, S: f2.Subspace2) -> Subgroup:
    """The subgroup of F_2^d given by a subspace."""
    d = S.ambient_dim
    gens = [vector_to_perm(r, d) for r in S.rows]
    return subgroup_generated(G, gens, kind=str(S))


def cf_e(kind: GroupKind) -> list[Subgroup]:
    if kind.variant != "F2":
        return _symmetric_catalogue(kind)
    G = kind.group
    if kind.exceptional_512_4096:
        return [subgroup_generated(G, [], kind="1")]
    family = f2.cf_enumerate(f2.OrderedBasis.standard(kind.d), kind.mode)
    return [subspace_subgroup(G, S) for S in family]


def family_names(family: list[Subgroup]) -> list[str]:
    return [H.kind or f"H{i}" for i, H in enumerate(family)]


def verify_catalogue(kind: GroupKind) -> dict:
    """Structural checks on the catalogue; failures are listed, not raised."""
    G = kind.group
    fam = cf_e(kind)
    failures = []
    for H in fam:
        es = H.element_set
        if G.identity not in es or any(a * b.inverse() not in es for a in H.elements for b in H.elements):
            failures.append(f"{H.kind}: not closed")
        if G.order % H.order:
            failures.append(f"{H.kind}: order does not divide |G|")
    orders = [H.order for H in fam]
    key = (kind.variant, kind.g2)
    if key in EXPECTED_ORDERS and orders != EXPECTED_ORDERS[key]:
        failures.append(f"orders {orders} differ from {EXPECTED_ORDERS[key]}")
    if kind.variant in ("S4", "S5"):
        d8 = next(H for H in fam if H.kind == "D8")
        cent = centralizer(G, _cyc(G.degree, *D8_INVOLUTION))
        if d8.element_set != cent.element_set:
            failures.append("D8 differs from the centralizer of (0 3)(1 2)")
    conjugate_pairs = []
    for i in range(len(fam)):
        for j in range(i + 1, len(fam)):
            if conjugate_subgroup_witness(G, fam[i], fam[j]) is not None:
                conjugate_pairs.append((fam[i].kind, fam[j].kind))
    if conjugate_pairs:
        failures.append(f"conjugate members: {conjugate_pairs}")
    if kind.variant == "F2" and not kind.exceptional_512_4096:
        subspaces = f2.cf_enumerate(f2.OrderedBasis.standard(kind.d), kind.mode)
        from_groups = {f2.span([perm_to_vector(g, kind.d) for g in H.elements], kind.d) for H in fam}
        if from_groups != set(subspaces) or len(fam) != len(subspaces):
            failures.append("subgroups do not match the subspace family")
    return {
        "kind": kind.label,
        "members": [{"name": H.kind, "order": H.order} for H in fam],
        "orders": orders,
        "failures": failures,
        "ok": not failures,
    }
