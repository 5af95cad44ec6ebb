"""The invariant suite behind ``fbar verify``.

Every check returns a :class:`CheckResult`; details are plain data so the
report renders identically from run to run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import f2_families as f2
from .catalogue import GroupKind, cf_e, family_names, verify_catalogue
from .chartab import character_table
from .errors import FbarError
from .groups import Subgroup, make_symmetric, subgroup_generated, whole
from .kconv import algebra, verify_dimension_identity
from .mdecomp import check_independence, f_matrix, m_set, random_round_trip
from .yprime import build_yprime, check_stabilizer_conjecture, fixed_point_multiplicities

STANDARD_KINDS = (
    GroupKind("S3"),
    GroupKind("S3", g2=True),
    GroupKind("S4"),
    GroupKind("S5"),
    *(GroupKind("F2", d=d) for d in range(5)),
    GroupKind("F2", d=1, exceptional_512_4096=True),
)

YPRIME_CASES = ((GroupKind("S3"), (1, 1, 1)), (GroupKind("S4"), (1, 0, 1, 2, 0)))


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)


def _run(name: str, fn: Callable[[], dict]) -> CheckResult:
    try:
        detail = fn()
    except FbarError as exc:
        return CheckResult(name, False, {"error": f"{type(exc).__name__}: {exc}"})
    ok = bool(detail.pop("ok", True))
    return CheckResult(name, ok, detail)


def _f2_content() -> dict:
    sizes = {}
    for d in range(4):
        sizes[d] = len(f2.cf_enumerate(f2.OrderedBasis.standard(d)))
    _, excluded = f2.cf_membership_report(f2.OrderedBasis.standard(3))
    want = {f2.span([0b101], 3), f2.span([0b011, 0b110], 3)}
    return {
        "sizes": [sizes[d] for d in range(4)],
        "excluded_d3": [str(S) for S in excluded],
        "ok": [sizes[d] for d in range(4)] == [1, 2, 5, 14] and set(excluded) == want,
    }


def _f2_dual() -> dict:
    bad = []
    for mode in f2.MODES:
        for d in range(6):
            basis = f2.OrderedBasis.standard(d)
            memo = set(f2.cf_enumerate(basis, mode))
            if memo != set(f2.cf_enumerate(basis, mode, "naive")) or memo != set(
                f2.cf_enumerate(basis, mode, "naive", seed=d)
            ):
                bad.append(f"{mode} d={d}")
    return {"disagreements": bad, "ok": not bad}


def _catalogue() -> dict:
    reports = [verify_catalogue(k) for k in STANDARD_KINDS]
    return {
        "kinds": {r["kind"]: r["orders"] for r in reports},
        "failures": [f for r in reports for f in r["failures"]],
        "ok": all(r["ok"] for r in reports),
    }


MSET_SIZES = {"S3": 8, "S4": 21, "S5": 39, **{f"F2^{d}": 4**d for d in range(5)}}


def _tables() -> dict:
    sizes = {}
    for kind in STANDARD_KINDS:
        if kind.g2 or kind.exceptional_512_4096:
            continue
        M = m_set(kind.group)
        for Z in M.centralizers:
            character_table(Z).check_orthogonality()
        sizes[kind.label] = len(M)
    return {"mset_sizes": sizes, "ok": sizes == MSET_SIZES}


def _fmatrix() -> dict:
    ranks = {}
    problems = []
    for kind in STANDARD_KINDS:
        G = kind.group
        fam = cf_e(kind)
        F = f_matrix(G, fam, family_names(fam))
        M = F.mset
        ident = M.position[next(p for p in M.points if p.class_index == 0 and p.irrep_index == 0)]
        for name, col in zip(F.names, F.columns):
            if any(not isinstance(v, int) or v < 0 for v in col.values):
                problems.append(f"{kind.label} {name}: entries not natural")
            if col.values[ident] != 1:
                problems.append(f"{kind.label} {name}: f(1, trivial) != 1")
            if fam[F.names.index(name)].order == G.order:
                if list(col.values) != [int(p.irrep_index == 0) for p in M.points]:
                    problems.append(f"{kind.label} {name}: whole-group column is not the trivial indicator")
        rep = check_independence(F)
        ranks[kind.label] = [rep.rank, rep.columns]
        if not rep.full_column_rank:
            problems.append(f"{kind.label}: rank {rep.rank} < {rep.columns}")
        random_round_trip(F, trials=100, high=5, seed=len(fam))
    return {"ranks": ranks, "problems": problems, "ok": not problems}


def _yprime_cases():
    for kind, n in YPRIME_CASES:
        G = kind.group
        fam = cf_e(kind)
        names = family_names(fam)
        F = f_matrix(G, fam, names)
        Y = build_yprime(G, fam, n, names)
        yield kind, n, fam, F, Y


def _yprime() -> dict:
    out = {}
    ok = True
    for kind, n, fam, F, Y in _yprime_cases():
        Y.check_action_laws()
        phi = fixed_point_multiplicities(Y, F.mset)
        match = phi.values == F.combine(list(n)).values
        stab = check_stabilizer_conjecture(Y, fam)
        out[f"{kind.label} n={list(n)}"] = {"size": len(Y), "phi_matches": match, "stabilizers_in_catalogue": stab}
        ok = ok and match and stab
    return {"cases": out, "ok": ok}


def _regular(G) -> Subgroup:
    return subgroup_generated(G, [], kind="1")


def _kconv(threads: int) -> dict:
    out = {}
    ok = True
    cases = [(f"{k.label} n={list(n)}", Y, F.combine(list(n))) for k, n, _, F, Y in _yprime_cases()]
    S3 = make_symmetric(3)
    cases.append(("S3 point", build_yprime(S3, [whole(S3)], [1], ["S3"]), None))
    C2 = make_symmetric(2)
    cases.append(("C2 regular", build_yprime(C2, [_regular(C2)], [1]), None))
    cases.append(("S3 regular", build_yprime(S3, [_regular(S3)], [1]), None))
    for label, Y, phi in cases:
        A = algebra(Y, threads=threads)
        A.check_unit()
        A.check_associativity(200, seed=0)
        A.check_anti_automorphism()
        if phi is None:
            phi = fixed_point_multiplicities(Y)
        rep = verify_dimension_identity(A, phi)
        out[label] = {"dim": rep["dim"], "center_dim": rep["center_dim"], "checks": rep["checks"]}
        ok = ok and rep["ok"]
    return {"cases": out, "ok": ok}


def run_suite(threads: int = 1) -> list[CheckResult]:
    return [
        _run("f2_family_content", _f2_content),
        _run("f2_memo_vs_naive", _f2_dual),
        _run("catalogue", _catalogue),
        _run("character_tables_and_msets", _tables),
        _run("fmatrix_rank_and_round_trip", _fmatrix),
        _run("yprime_consistency", _yprime),
        _run("convolution_algebra", lambda: _kconv(threads)),
    ]
