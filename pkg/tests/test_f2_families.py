import pytest

from fbar import f2_families as f2
from fbar.errors import SizeLimitError, ValidationError


def strs(family):
    return sorted(S.render() for S in family)


@pytest.mark.parametrize("mode", f2.MODES)
def test_sizes_match_oracle(mode, frozen):
    sizes = [len(f2.cf_enumerate(f2.OrderedBasis.standard(d), mode)) for d in range(6)]
    assert sizes == frozen["f2"][mode]["sizes"]


@pytest.mark.parametrize("mode", f2.MODES)
@pytest.mark.parametrize("d", range(5))
def test_members_match_oracle(mode, d, frozen):
    included, excluded = f2.cf_membership_report(f2.OrderedBasis.standard(d), mode)
    assert strs(included) == frozen["f2"][mode]["members"][str(d)]
    assert strs(excluded) == frozen["f2"][mode]["excluded"][str(d)]


def test_zero_inclusive_small_cases():
    basis = lambda d: f2.OrderedBasis.standard(d)
    assert [str(S) for S in f2.cf_enumerate(basis(0))] == ["<>"]
    for d in (1, 2):
        assert len(f2.cf_enumerate(basis(d))) == len(f2.all_subspaces(d))
    _, excluded = f2.cf_membership_report(basis(3))
    assert {str(S) for S in excluded} == {"<101>", "<101,011>"}


def test_strict_literal_drops_zero():
    fam = f2.cf_enumerate(f2.OrderedBasis.standard(2), "strict-literal")
    assert {str(S) for S in fam} == {"<10,01>", "<11>"}


@pytest.mark.parametrize("mode", f2.MODES)
@pytest.mark.parametrize("d", range(6))
def test_memo_and_naive_agree(mode, d):
    basis = f2.OrderedBasis.standard(d)
    memo = set(f2.cf_enumerate(basis, mode, "memo"))
    assert memo == set(f2.cf_enumerate(basis, mode, "naive"))
    for seed in range(3):
        assert memo == set(f2.cf_enumerate(basis, mode, "naive", seed=seed))


@pytest.mark.parametrize("d", range(1, 6))
def test_full_space_and_coordinate_subspaces_included(d):
    basis = f2.OrderedBasis.standard(d)
    fam = set(f2.cf_enumerate(basis))
    assert f2.span(basis.vectors, d) in fam
    for i in range(d):
        for j in range(i, d):
            assert f2.coordinate_subspace(range(i, j + 1), basis) in fam


def test_all_subspaces_count():
    for d in range(6):
        assert len(f2.all_subspaces(d)) == f2.gaussian_binomial_total(d)
        assert len(set(f2.all_subspaces(d))) == f2.gaussian_binomial_total(d)


def test_nonstandard_basis():
    # image of the standard family under a change of basis
    basis = f2.OrderedBasis(3, (0b011, 0b110, 0b100))
    fam = f2.cf_enumerate(basis)
    assert len(fam) == 14
    assert f2.span([0b011 ^ 0b100], 3) not in set(fam)


def test_validation():
    with pytest.raises(ValidationError):
        f2.OrderedBasis(2, (0b01, 0b01))
    with pytest.raises(ValidationError):
        f2.cf_enumerate(f2.OrderedBasis.standard(1), "loose")
    with pytest.raises(SizeLimitError):
        f2.all_subspaces(7)
    with pytest.raises(ValidationError):
        f2.string_to_bits("012")


def test_rendering():
    S = f2.span([0b110, 0b011], 3)
    assert S.render() == ["101", "011"]
    assert f2.string_to_bits("101") == 0b101
    assert 0b101 in S and 0b100 not in S
