import json
import subprocess
import sys

import pytest

from fbar.cli import main
from fbar.formats import SCHEMA_VERSION


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_exit(capsys, *argv):
    """For argparse-level failures, which exit through SystemExit."""
    with pytest.raises(SystemExit) as info:
        main(list(argv))
    out, err = capsys.readouterr()
    return info.value.code, out, err


def test_cf_enum_d3(capsys):
    code, out, _ = run(capsys, "cf-enum", "--d", "3")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == SCHEMA_VERSION
    assert doc["included_count"] == 14 and doc["excluded_count"] == 2
    assert doc["excluded"] == [["101"], ["101", "011"]]


def test_cf_enum_strict_table(capsys):
    code, out, _ = run(capsys, "cf-enum", "--d", "2", "--mode", "strict-literal", "--format", "table")
    assert code == 0
    assert out.startswith(f"# schema {SCHEMA_VERSION}\n")
    assert "2 included, 3 excluded" in out


def test_mset_s4(capsys):
    code, out, _ = run(capsys, "mset", "--kind", "S4")
    doc = json.loads(out)
    assert code == 0 and doc["size"] == 21 and len(doc["points"]) == 21
    assert doc["points"][0]["label"] == "()|0"


def test_mset_from_group_file(capsys, fixture_path):
    code, out, _ = run(capsys, "mset", "--group", fixture_path("group_a4_perm.json"))
    assert code == 0 and json.loads(out)["size"] == 14
    code, out, _ = run(capsys, "chartab", "--group", fixture_path("group_c5_images.json"))
    assert code == 0 and json.loads(out)["conductor"] == 5


def test_catalogue_output(capsys):
    code, out, _ = run(capsys, "catalogue", "--kind", "S4")
    doc = json.loads(out)
    assert [(m["name"], m["order"]) for m in doc["members"]] == [("S2", 2), ("S3", 6), ("S4", 24), ("S2xS2", 4), ("D8", 8)]
    assert doc["members"][4]["generators"] == ["(1 2)", "(0 1)(2 3)"]
    code, out, _ = run(capsys, "catalogue", "--kind", "F2", "--d", "1", "--exceptional-512-4096")
    assert [m["name"] for m in json.loads(out)["members"]] == ["1"]


def test_decompose_column(capsys, fixture_path):
    code, out, _ = run(capsys, "decompose", "--kind", "S3", "--phi", fixture_path("phi_s3_column_S3.json"))
    assert code == 0 and json.loads(out)["n"] == {"1": 0, "S2": 0, "S3": 1}


def test_phi_then_decompose_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "phi", "--kind", "S4", "--n", "3,1,0,2,5")
    path = tmp_path / "phi.json"
    path.write_text(out)
    code, out, _ = run(capsys, "decompose", "--kind", "S4", "--phi", str(path))
    assert json.loads(out)["n"] == {"S2": 3, "S3": 1, "S4": 0, "S2xS2": 2, "D8": 5}


def test_yprime_and_kconv(capsys, fixture_path):
    code, out, _ = run(capsys, "yprime", "--kind", "S3", "--phi", fixture_path("phi_s3_n111.json"))
    doc = json.loads(out)
    assert code == 0 and doc["size"] == 10 and doc["phi_recovered"] and doc["stabilizers_in_catalogue"]
    code, out, _ = run(capsys, "kconv", "--kind", "S4", "--phi", fixture_path("phi_s4_n10120.json"))
    doc = json.loads(out)
    assert code == 0 and doc["dim"] == 94 and doc["checks"]["center_dim"] == 10
    assert all(doc["checks"][k] is True for k in ("unit", "dim_equals_sum_phi_squared", "trace_form_nondegenerate"))
    code, out, _ = run(capsys, "kconv", "--kind", "S3", "--n", "1,1,1", "--check", "unit")
    assert code == 0 and json.loads(out)["checks"] == {"unit": True}


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "fmatrix", "--kind", "S3", "-o", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["rank"] == 3


SOLVER_ERRORS = [
    (("decompose", "--kind", "S3", "--phi", "phi_inconsistent.json"), "InconsistentSystem"),
    (("decompose", "--kind", "S3", "--phi", "phi_nonnatural.json"), "NonNaturalSolution"),
    (("decompose", "--kind", "S3", "--family", "family_s3_rank_deficient.json", "--phi", "phi_s3_n111.json"), "RankDeficient"),
]

VALIDATION_ERRORS = [
    (("decompose", "--kind", "S3", "--phi", "does_not_exist.json"), "cannot read"),
    (("decompose", "--kind", "S3", "--phi", "phi_not_json.json"), "is not valid JSON"),
    (("decompose", "--kind", "S3", "--phi", "phi_no_values.json"), "needs a 'values' list"),
    (("decompose", "--kind", "S3", "--phi", "phi_missing_point.json"), "misses M-points"),
    (("decompose", "--kind", "S3", "--phi", "phi_duplicate_point.json"), "duplicate phi entry"),
    (("decompose", "--kind", "S3", "--phi", "phi_noncanonical_class.json"), "not a canonical class representative"),
    (("decompose", "--kind", "S3", "--phi", "phi_irrep_out_of_range.json"), "out of range"),
    (("decompose", "--kind", "S3", "--phi", "phi_non_integer_value.json"), "must be integers"),
    (("decompose", "--kind", "S3", "--phi", "phi_wrong_group.json"), "does not match the requested group"),
    (("decompose", "--kind", "S3", "--phi", "phi_unknown_group_type.json"), "unknown group type"),
    (("decompose", "--kind", "S3", "--family", "family_bad_generator.json", "--phi", "phi_s3_n111.json"), "bad cycle"),
    (("mset", "--group", "group_too_large.json"), "degree must be in"),
    (("catalogue", "--kind", "S4", "--g2"), "G2 flag only applies"),
    (("catalogue", "--kind", "F2", "--d", "2", "--exceptional-512-4096"), "only applies to F2 with d = 1"),
    (("catalogue", "--kind", "S3", "--d", "2"), "--d only applies"),
    (("catalogue", "--kind", "F2:2", "--d", "2"), "either in --kind or in --d"),
    (("catalogue", "--kind", "Q8"), "unknown group kind"),
    (("cf-enum", "--d", "9"), "--d must be in"),
    (("kconv", "--kind", "S3", "--n", "1,1"), "--n needs 3 entries"),
    (("kconv", "--kind", "S3", "--n", "1,x,1"), "comma-separated integers"),
    (("kconv", "--kind", "S3", "--n", "1,1,1", "--check", "none", "--check", "unit"), "cannot be combined"),
    (("kconv", "--kind", "S3", "--n", "1,1,1", "--threads", "0"), "--threads must be at least 1"),
    (("mset", "--kind", "S3", "--group", "group_s4.json"), "exactly one of --kind and --group"),
]


def _resolve(args, fixture_path):
    return [fixture_path(a) if a.endswith(".json") else a for a in args]


@pytest.mark.parametrize("args,kind", SOLVER_ERRORS, ids=[k for _, k in SOLVER_ERRORS])
def test_solver_errors_exit_2(capsys, fixture_path, args, kind):
    code, out, err = run(capsys, *_resolve(args, fixture_path))
    assert code == 2 and out == ""
    assert f"solver error ({kind})" in err


@pytest.mark.parametrize("args,message", VALIDATION_ERRORS, ids=[m for _, m in VALIDATION_ERRORS])
def test_validation_errors_exit_3(capsys, fixture_path, args, message):
    code, out, err = run(capsys, *_resolve(args, fixture_path))
    assert code == 3 and out == ""
    assert message in err


def test_diagnostics_are_distinct(capsys, fixture_path):
    seen = set()
    for args, _ in SOLVER_ERRORS + VALIDATION_ERRORS:
        _, _, err = run(capsys, *_resolve(args, fixture_path))
        assert err not in seen
        seen.add(err)


@pytest.mark.parametrize("argv", [["cf-enum"], ["mset", "--kind", "S3", "--format", "xml"], ["bogus"], ["decompose", "--kind", "S3"]])
def test_argparse_misuse_exit_3(capsys, argv):
    code, _, err = run_exit(capsys, *argv)
    assert code == 3 and "error:" in err


def test_every_fixture_is_used(fixture_path):
    from conftest import FIXTURES

    used = {a for args, _ in SOLVER_ERRORS + VALIDATION_ERRORS for a in args if a.endswith(".json")}
    used |= {"phi_s3_column_S3.json", "phi_s3_n111.json", "phi_s4_n10120.json", "group_a4_perm.json", "group_c5_images.json"}
    assert {p.name for p in FIXTURES.glob("*.json")} <= used


def test_output_is_byte_identical_across_runs():
    cmd = [sys.executable, "-m", "fbar.cli", "kconv", "--kind", "S4", "--n", "1,0,1,2,0"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    again = subprocess.run(cmd, capture_output=True, check=True).stdout
    threaded = subprocess.run(cmd + ["--threads", "3"], capture_output=True, check=True).stdout
    assert first == again == threaded
