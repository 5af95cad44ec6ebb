"""Command-line entry point.

Exit status: 0 on success, 1 when a verification check fails, 2 on solver
errors, 3 on validation errors (bad flags, unreadable or malformed files).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from . import f2_families as f2
from .catalogue import GroupKind, cf_e, family_names, verify_catalogue
from .chartab import character_table
from .errors import ConsistencyError, SolverError, ValidationError
from .formats import (
    SCHEMA_VERSION,
    dumps,
    family_from_document,
    group_from_spec,
    phi_document,
    phi_from_document,
    read_json,
    spec_of_kind,
    table,
)
from .kconv import algebra, verify_dimension_identity
from .mdecomp import check_independence, decompose, f_matrix, m_set
from .suite import run_suite
from .yprime import build_yprime, check_stabilizer_conjecture, describe, fixed_point_multiplicities

EXIT_OK, EXIT_CHECK_FAILED, EXIT_SOLVER, EXIT_VALIDATION = 0, 1, 2, 3
CHECKS = ("unit", "assoc", "dual", "dims")


@dataclass
class RunConfig:
    subcommand: str
    kind: GroupKind | None = None
    group_file: str | None = None
    family_file: str | None = None
    phi: str | None = None
    n: list[int] | None = None
    d: int | None = None
    mode: str = "zero-inclusive"
    fmt: str = "json"
    checks: tuple[str, ...] = ()
    triples: int = 200
    seed: int = 0
    threads: int = 1
    output: str | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # flag misuse is a validation error
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _kind_options(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--kind", required=required, help="S3, S4, S5, F2 or F2:<d>")
    p.add_argument("--d", type=int, help="dimension for the F2 kind")
    p.add_argument("--g2", action="store_true", help="S3 catalogue variant without the trivial group")
    p.add_argument("--exceptional-512-4096", action="store_true", help="F2 dimension-1 exception: catalogue {1}")
    p.add_argument("--mode", choices=f2.MODES, default="zero-inclusive")


def _family_option(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help="JSON family file replacing the catalogue of --kind")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fbar", description="Subgroup catalogues, f-function decompositions and convolution algebras of finite component groups.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", dest="fmt", choices=("json", "table"), default="json")
        p.add_argument("--output", "-o", help="write here instead of stdout")
        return p

    p = add("cf-enum", "enumerate the F2 subspace family for the standard basis")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mode", choices=f2.MODES, default="zero-inclusive")

    _kind_options(add("catalogue", "subgroup catalogue with generators and orders"))

    p = add("mset", "labelled points of M(H)")
    _kind_options(p, required=False)
    p.add_argument("--group", dest="group_file", help="JSON group spec file instead of --kind")

    p = add("chartab", "character table of the group")
    _kind_options(p, required=False)
    p.add_argument("--group", dest="group_file", help="JSON group spec file instead of --kind")

    p = add("fmatrix", "the f-functions of the catalogue as columns")
    _kind_options(p)
    _family_option(p)

    p = add("decompose", "write phi as a natural combination of f-functions")
    _kind_options(p)
    _family_option(p)
    p.add_argument("--phi", required=True)

    p = add("phi", "emit the phi document F.n for given multiplicities")
    _kind_options(p)
    _family_option(p)
    p.add_argument("--n", required=True, help="comma-separated multiplicities in catalogue order")

    p = add("yprime", "build Y' from phi (or from --n) and check it")
    _kind_options(p)
    _family_option(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--phi")
    src.add_argument("--n", help="comma-separated multiplicities in catalogue order")

    p = add("kconv", "convolution algebra of Y' x Y' and its structural checks")
    _kind_options(p)
    _family_option(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--phi")
    src.add_argument("--n", help="comma-separated multiplicities in catalogue order")
    p.add_argument("--check", action="append", choices=CHECKS + ("all", "none"), default=None)
    p.add_argument("--triples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)

    p = add("verify", "run the full invariant suite")
    p.add_argument("--threads", type=int, default=1)
    return parser


def _counts(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValidationError(f"--n must be comma-separated integers, got {text!r}") from None


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Turn parsed arguments into a validated RunConfig; no computation happens here."""
    cfg = RunConfig(args.subcommand, fmt=args.fmt, output=args.output)
    if getattr(args, "kind", None) is not None:
        text = args.kind
        if args.d is not None and text.startswith("F2") and text[2:].lstrip(":^"):
            raise ValidationError("give the F2 dimension either in --kind or in --d, not both")
        flags = {"g2": args.g2, "exceptional_512_4096": args.exceptional_512_4096, "mode": args.mode}
        if args.d is not None:
            if not text.startswith("F2"):
                raise ValidationError("--d only applies to --kind F2")
            flags["d"] = args.d
        try:
            cfg.kind = GroupKind.parse(text, **flags)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad --kind {text!r}: {exc}") from None
    elif cfg.subcommand not in ("cf-enum", "verify"):
        if getattr(args, "g2", False) or getattr(args, "exceptional_512_4096", False) or getattr(args, "d", None) is not None:
            raise ValidationError("catalogue flags need --kind")
    if cfg.subcommand == "cf-enum":
        if not 0 <= args.d <= f2.MAX_DIM:
            raise ValidationError(f"--d must be in [0, {f2.MAX_DIM}]")
        cfg.d, cfg.mode = args.d, args.mode
    if cfg.subcommand in ("mset", "chartab"):
        group_file = getattr(args, "group_file", None)
        if (cfg.kind is None) == (group_file is None):
            raise ValidationError(f"{cfg.subcommand} needs exactly one of --kind and --group")
        cfg.group_file = group_file
    cfg.phi = getattr(args, "phi", None)
    cfg.family_file = getattr(args, "family", None)
    if getattr(args, "n", None) is not None:
        cfg.n = _counts(args.n)
    if cfg.subcommand == "kconv":
        chosen = args.check or ["all"]
        if "none" in chosen and len(chosen) > 1:
            raise ValidationError("--check none cannot be combined with other checks")
        cfg.checks = CHECKS if "all" in chosen else tuple(c for c in CHECKS if c in chosen)
        if args.triples < 0:
            raise ValidationError("--triples must be non-negative")
        cfg.triples, cfg.seed = args.triples, args.seed
    if cfg.subcommand in ("kconv", "verify"):
        if args.threads < 1:
            raise ValidationError("--threads must be at least 1")
        cfg.threads = args.threads
    return cfg


# -- subcommands ---------------------------------------------------------
# Each returns (document, table text, exit status).


def _emit(cfg: RunConfig, doc: dict, text: str) -> str:
    if cfg.fmt == "json":
        return dumps({"schema": SCHEMA_VERSION, "command": cfg.subcommand, **doc})
    return text


def _cf_enum(cfg: RunConfig):
    basis = f2.OrderedBasis.standard(cfg.d)
    included, excluded = f2.cf_membership_report(basis, cfg.mode)
    doc = {
        "d": cfg.d,
        "mode": cfg.mode,
        "included_count": len(included),
        "excluded_count": len(excluded),
        "included": [S.render() for S in included],
        "excluded": [S.render() for S in excluded],
    }
    rows = [["included", S.dim, str(S)] for S in included] + [["excluded", S.dim, str(S)] for S in excluded]
    text = table(["status", "dim", "subspace"], rows, f"F2^{cfg.d} {cfg.mode}: {len(included)} included, {len(excluded)} excluded")
    return doc, text, EXIT_OK


def _gens(H) -> list[str]:
    gens = H.generators if H.generators else [g for g in H.elements if not g.is_identity()]
    return [g.cycle_string() for g in gens]


def _catalogue(cfg: RunConfig):
    kind = cfg.kind
    fam = cf_e(kind)
    report = verify_catalogue(kind)
    members = [{"name": H.kind, "order": H.order, "generators": _gens(H)} for H in fam]
    doc = {"kind": kind.label, "group": spec_of_kind(kind), "members": members, "failures": report["failures"]}
    rows = [[m["name"], m["order"], " ".join(m["generators"]) or "()"] for m in members]
    text = table(["subgroup", "order", "generators"], rows, f"catalogue for {kind.label}")
    return doc, text, EXIT_OK if report["ok"] else EXIT_CHECK_FAILED


def _group(cfg: RunConfig):
    if cfg.kind is not None:
        return cfg.kind.group, spec_of_kind(cfg.kind)
    spec = read_json(cfg.group_file)
    return group_from_spec(spec), spec


def _mset(cfg: RunConfig):
    G, spec = _group(cfg)
    M = m_set(G)
    points = [{"label": M.label(p), **row} for p, row in zip(M.points, M.describe())]
    doc = {"group": spec, "size": len(M), "points": points}
    rows = [[i, d["class"], d["irrep"], d["centralizer_order"], d["irrep_degree"]] for i, d in enumerate(points)]
    text = table(["#", "class", "irrep", "|Z(s)|", "deg"], rows, f"M-set of size {len(M)}")
    return doc, text, EXIT_OK


def _chartab(cfg: RunConfig):
    G, spec = _group(cfg)
    T = character_table(G)
    T.check_orthogonality()
    data = T.to_json()
    doc = {"group": spec, **data}
    rows = [[i] + [str(v) for v in row] for i, row in enumerate(T.rows)]
    text = table(["irrep"] + data["classes"], rows, f"character table, conductor {T.conductor}")
    return doc, text, EXIT_OK


def _family(cfg: RunConfig):
    G = cfg.kind.group
    if cfg.family_file is not None:
        fam, names = family_from_document(read_json(cfg.family_file), G)
    else:
        fam = cf_e(cfg.kind)
        names = family_names(fam)
    return G, fam, names, f_matrix(G, fam, names)


def _fmatrix(cfg: RunConfig):
    _, _, names, F = _family(cfg)
    M = F.mset
    rep = check_independence(F)
    doc = {
        "kind": cfg.kind.label,
        "columns": list(names),
        "rank": rep.rank,
        "rows": [{"point": M.label(p), "values": row} for p, row in zip(M.points, F.rows)],
    }
    rows = [[M.label(p)] + row for p, row in zip(M.points, F.rows)]
    text = table(["point"] + list(names), rows, f"f-matrix for {cfg.kind.label}, rank {rep.rank}")
    return doc, text, EXIT_OK


def _n_or_phi(cfg: RunConfig, F, names):
    if cfg.n is not None:
        if len(cfg.n) != len(names):
            raise ValidationError(f"--n needs {len(names)} entries ({', '.join(names)}), got {len(cfg.n)}")
        if any(v < 0 for v in cfg.n):
            raise ValidationError("--n entries must be natural numbers")
        return dict(zip(names, cfg.n)), F.combine(cfg.n)
    phi = phi_from_document(read_json(cfg.phi), F.mset)
    return decompose(phi, F), phi


def _decompose(cfg: RunConfig):
    _, _, names, F = _family(cfg)
    n, _ = _n_or_phi(cfg, F, names)
    doc = {"kind": cfg.kind.label, "n": n}
    text = table(["subgroup", "n"], [[k, v] for k, v in n.items()], f"decomposition over {cfg.kind.label}")
    return doc, text, EXIT_OK


def _phi(cfg: RunConfig):
    _, _, names, F = _family(cfg)
    _, phi = _n_or_phi(cfg, F, names)
    doc = phi_document(phi, spec_of_kind(cfg.kind))
    M = F.mset
    text = table(["class", "irrep", "value"], [[M.representative(p).cycle_string(), p.irrep_index, v] for p, v in zip(M.points, phi.values)])
    if cfg.fmt == "json":
        return doc, None, EXIT_OK  # a plain phi document, readable by --phi
    return doc, text, EXIT_OK


def _yprime(cfg: RunConfig):
    G, fam, names, F = _family(cfg)
    n, phi = _n_or_phi(cfg, F, names)
    Y = build_yprime(G, fam, n, names)
    Y.check_action_laws()
    back = fixed_point_multiplicities(Y, F.mset)
    stab = check_stabilizer_conjecture(Y, fam)
    match = back.values == phi.values
    doc = {"kind": cfg.kind.label, "n": n, **describe(Y), "action_laws": True, "phi_recovered": match, "stabilizers_in_catalogue": stab}
    rows = [[p["subgroup"], p["copies"], p["orbit_size"], p["stabilizer_order"]] for p in doc["pieces"]]
    text = table(["subgroup", "copies", "orbit", "|stab|"], rows, f"Y' of size {len(Y)}; phi recovered: {match}; stabilizers in catalogue: {stab}")
    return doc, text, EXIT_OK if match and stab else EXIT_CHECK_FAILED


def _kconv(cfg: RunConfig):
    G, fam, names, F = _family(cfg)
    n, phi = _n_or_phi(cfg, F, names)
    Y = build_yprime(G, fam, n, names)
    A = algebra(Y, threads=cfg.threads)
    results: dict[str, object] = {}
    for check in cfg.checks:
        try:
            if check == "unit":
                A.check_unit()
                results["unit"] = True
            elif check == "assoc":
                results["associativity_triples"] = A.check_associativity(cfg.triples, seed=cfg.seed)
            elif check == "dual":
                A.check_anti_automorphism()
                results["dual_swap_anti_automorphism"] = True
            elif check == "dims":
                rep = verify_dimension_identity(A, phi)
                results.update(rep["checks"])
                results["sum_phi_squared"] = rep["sum_phi_squared"]
                results["nonzero_phi"] = rep["nonzero_phi"]
                results["center_dim"] = rep["center_dim"]
        except ConsistencyError as exc:
            results[check] = f"failed: {exc}"
    ok = all(v is not False and not (isinstance(v, str) and v.startswith("failed")) for v in results.values())
    doc = {"kind": cfg.kind.label, "n": n, "points": len(Y), "orbits": len(A.charts), "dim": A.dim, "checks": results}
    rows = [["dim", A.dim], ["orbits", len(A.charts)]] + [[k, v] for k, v in results.items()]
    text = table(["quantity", "value"], rows, f"convolution algebra for {cfg.kind.label}, n = {list(n.values())}")
    return doc, text, EXIT_OK if ok else EXIT_CHECK_FAILED


def _verify(cfg: RunConfig):
    results = run_suite(cfg.threads)
    doc = {"checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results], "ok": all(r.ok for r in results)}
    text = table(["check", "status"], [[r.name, "PASS" if r.ok else "FAIL"] for r in results], "invariant suite")
    return doc, text, EXIT_OK if doc["ok"] else EXIT_CHECK_FAILED


COMMANDS: dict[str, Callable] = {
    "cf-enum": _cf_enum,
    "catalogue": _catalogue,
    "mset": _mset,
    "chartab": _chartab,
    "fmatrix": _fmatrix,
    "decompose": _decompose,
    "phi": _phi,
    "yprime": _yprime,
    "kconv": _kconv,
    "verify": _verify,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a validated config; returns (exit status, output text)."""
    doc, text, status = COMMANDS[cfg.subcommand](cfg)
    if text is None:
        return status, dumps(doc)
    return status, _emit(cfg, doc, text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        status, out = run(cfg)
    except ValidationError as exc:
        print(f"fbar: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SolverError as exc:
        print(f"fbar: solver error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ConsistencyError as exc:
        print(f"fbar: consistency check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    if cfg.output:
        try:
            with open(cfg.output, "w") as fh:
                fh.write(out)
        except OSError as exc:
            print(f"fbar: invalid input: cannot write {cfg.output}: {exc.strerror}", file=sys.stderr)
            return EXIT_VALIDATION
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
