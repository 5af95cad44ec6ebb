"""JSON documents: group specifications, phi files, and rendered tables."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .catalogue import GroupKind
from .errors import ValidationError
from .groups import (
    MAX_SYMMETRIC_DEGREE,
    Group,
    Perm,
    Subgroup,
    make_elementary_abelian2,
    make_symmetric,
    parse_cycles,
    subgroup_generated,
)
from .mdecomp import ClassFn, MSet, MPoint

SCHEMA_VERSION = "fbar/1"


def group_from_spec(spec: Any) -> Group:
    """{"type": "S", "n": 4} | {"type": "F2", "d": 3} | {"type": "perm", "degree": k, "generators": [...]}"""
    if not isinstance(spec, dict) or "type" not in spec:
        raise ValidationError(f"group spec must be an object with a 'type' field, got {spec!r}")
    kind = spec["type"]
    try:
        if kind == "S":
            return make_symmetric(int(spec["n"]))
        if kind == "F2":
            return make_elementary_abelian2(int(spec["d"]))
        if kind == "perm":
            degree = int(spec["degree"])
            if not 1 <= degree <= MAX_SYMMETRIC_DEGREE:
                raise ValidationError(f"perm group degree must be in [1, {MAX_SYMMETRIC_DEGREE}]")
            gens = [_perm(g, degree) for g in spec.get("generators", [])]
            return Group.generated(degree, gens, kind="perm")
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed group spec {spec!r}: {exc}") from None
    raise ValidationError(f"unknown group type {kind!r}")


def _perm(g: Any, degree: int) -> Perm:
    """A generator given in cycle notation or as an image list."""
    if isinstance(g, str):
        return parse_cycles(g, degree)
    if isinstance(g, list) and all(isinstance(x, int) for x in g):
        if sorted(g) != list(range(degree)):
            raise ValidationError(f"images {g} are not a permutation of degree {degree}")
        return Perm(g)
    raise ValidationError(f"generator {g!r} must be a cycle string or a list of images")


def family_from_document(doc: Any, G: Group) -> tuple[list[Subgroup], list[str]]:
    """{"subgroups": [{"name": ..., "generators": ["(0 1)", ...]}, ...]} inside ``G``."""
    if not isinstance(doc, dict) or not isinstance(doc.get("subgroups"), list) or not doc["subgroups"]:
        raise ValidationError("family document needs a non-empty 'subgroups' list")
    if "group" in doc and group_from_spec(doc["group"]).elements != G.elements:
        raise ValidationError("family document group does not match the requested group")
    family, names = [], []
    for i, entry in enumerate(doc["subgroups"]):
        if not isinstance(entry, dict) or not isinstance(entry.get("generators", []), list):
            raise ValidationError(f"subgroup entry {entry!r} needs a generators list")
        name = str(entry.get("name", f"H{i}"))
        if name in names:
            raise ValidationError(f"duplicate subgroup name {name!r}")
        gens = [_perm(g, G.degree) for g in entry.get("generators", [])]
        family.append(subgroup_generated(G, gens, kind=name))
        names.append(name)
    return family, names


def spec_of_kind(kind: GroupKind) -> dict:
    if kind.variant == "F2":
        return {"type": "F2", "d": kind.d}
    return {"type": "S", "n": int(kind.variant[1])}


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from None


def phi_from_document(doc: Any, mset: MSet) -> ClassFn:
    """Validate a phi document against ``mset`` and return the class function.

    Each entry names a class by the cycle notation of its canonical
    representative (as printed by ``mset``) and an irrep index into that
    representative's centralizer table.
    """
    if not isinstance(doc, dict) or not isinstance(doc.get("values"), list):
        raise ValidationError("phi document needs a 'values' list")
    G = mset.group
    if "group" in doc and group_from_spec(doc["group"]).elements != G.elements:
        raise ValidationError("phi document group does not match the requested group")
    by_rep = {c.representative.cycle_string(): i for i, c in enumerate(mset.classes)}
    values: dict[MPoint, int] = {}
    for entry in doc["values"]:
        try:
            cls, irrep, value = entry["class"], entry["irrep"], entry["value"]
        except (KeyError, TypeError):
            raise ValidationError(f"phi entry {entry!r} needs class, irrep and value") from None
        if cls not in by_rep:
            raise ValidationError(f"{cls!r} is not a canonical class representative")
        if not isinstance(irrep, int) or not isinstance(value, int) or isinstance(value, bool):
            raise ValidationError(f"phi entry {entry!r}: irrep and value must be integers")
        p = MPoint(by_rep[cls], irrep)
        if p not in mset.position:
            raise ValidationError(f"irrep index {irrep} out of range for class {cls}")
        if p in values:
            raise ValidationError(f"duplicate phi entry for {cls} irrep {irrep}")
        values[p] = value
    missing = [mset.label(p) for p in mset.points if p not in values]
    if missing:
        raise ValidationError(f"phi document misses M-points {missing}")
    return ClassFn.from_mapping(mset, values)


def phi_document(phi: ClassFn, group_spec: dict | None = None) -> dict:
    M = phi.mset
    doc: dict[str, Any] = {"schema": SCHEMA_VERSION}
    if group_spec is not None:
        doc["group"] = group_spec
    doc["values"] = [
        {"class": M.representative(p).cycle_string(), "irrep": p.irrep_index, "value": int(v)}
        for p, v in zip(M.points, phi.values)
    ]
    return doc


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def table(headers: list[str], rows: list[list[Any]], title: str | None = None) -> str:
    """Aligned-column text with a schema line."""
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = [f"# schema {SCHEMA_VERSION}"]
    if title:
        lines.append(f"# {title}")
    for k, r in enumerate(cells):
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
