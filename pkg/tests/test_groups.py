import pytest

from fbar.errors import MembershipError, SizeLimitError, ValidationError
from fbar.groups import (
    Perm,
    centralizer,
    conjugacy_classes,
    conjugate,
    conjugate_subgroup_witness,
    greedy_generators,
    intersect,
    left_cosets,
    make_elementary_abelian2,
    make_symmetric,
    parse_cycles,
    perm_to_vector,
    subgroup_from_elements,
    subgroup_generated,
    trivial_subgroup,
    vector_to_perm,
)


def cyc(n, *cycles):
    return Perm.from_cycles(n, [list(c) for c in cycles])


def test_composition_is_right_to_left():
    a, b = cyc(3, (0, 1)), cyc(3, (1, 2))
    assert (a * b)[1] == a[b[1]] == 2
    assert a * b == cyc(3, (0, 1, 2))


def test_inverse_power_order():
    c = cyc(5, (0, 1, 2, 3, 4))
    assert c * c.inverse() == Perm.identity(5)
    assert c**5 == Perm.identity(5)
    assert c**-1 == c.inverse()
    assert c.order() == 5
    assert cyc(6, (0, 1), (2, 3, 4)).order() == 6


def test_cycle_string_round_trip():
    for g in make_symmetric(4):
        assert parse_cycles(g.cycle_string(), 4) == g
    assert Perm.identity(3).cycle_string() == "()"


@pytest.mark.parametrize("text", ["0 1", "(0 9)", "(0 0)", "(a b)"])
def test_parse_cycles_rejects(text):
    with pytest.raises(ValidationError):
        parse_cycles(text, 3)


@pytest.mark.parametrize("n,order,classes", [(1, 1, [1]), (3, 6, [1, 3, 2]), (4, 24, [1, 3, 6, 8, 6])])
def test_symmetric_class_sizes(n, order, classes):
    G = make_symmetric(n)
    assert G.order == order
    assert [c.size for c in conjugacy_classes(G)] == classes


def test_class_order_and_identity_first():
    G = make_symmetric(5)
    reps = [c.representative for c in G.conjugacy_classes]
    assert reps[0].is_identity()
    keys = [(r.order(), c.size, r) for r, c in zip(reps, G.conjugacy_classes)]
    assert keys == sorted(keys)
    assert all(c.representative == min(c.elements) for c in G.conjugacy_classes)


def test_size_limits():
    with pytest.raises(SizeLimitError):
        make_symmetric(9)
    with pytest.raises(SizeLimitError):
        make_elementary_abelian2(7)


def test_centralizer_orders():
    S4 = make_symmetric(4)
    assert centralizer(S4, cyc(4, (0, 3), (1, 2))).order == 8
    assert centralizer(make_symmetric(5), cyc(5, (0, 1, 2, 3, 4))).order == 5


def test_membership_errors():
    S3 = make_symmetric(3)
    with pytest.raises(MembershipError):
        centralizer(S3, cyc(4, (0, 3)))
    with pytest.raises(MembershipError):
        intersect(subgroup_generated(S3, []), subgroup_generated(make_symmetric(4), []))


def test_cosets_partition_group():
    S4 = make_symmetric(4)
    H = subgroup_generated(S4, [cyc(4, (0, 1)), cyc(4, (2, 3))])
    cs = left_cosets(S4, H)
    assert len(cs) == 6
    assert all(r == min(r * h for h in H) for r in cs.reps)
    seen = set()
    for r in cs.reps:
        block = {r * h for h in H}
        assert not block & seen
        seen |= block
    assert seen == S4.element_set
    for g in S4:
        for k, r in enumerate(cs.reps):
            assert cs.coset_index(min(g * r * h for h in H)) == cs.act(g, k)


def test_conjugate_witness():
    S3 = make_symmetric(3)
    A = subgroup_generated(S3, [cyc(3, (0, 1))])
    B = subgroup_generated(S3, [cyc(3, (1, 2))])
    g = conjugate_subgroup_witness(S3, A, B)
    assert g is not None and conjugate(A, g, S3).element_set == B.element_set
    C3 = subgroup_generated(S3, [cyc(3, (0, 1, 2))])
    assert conjugate_subgroup_witness(S3, A, C3) is None


def test_intersection():
    S4 = make_symmetric(4)
    A = subgroup_generated(S4, [cyc(4, (0, 1)), cyc(4, (0, 1, 2))])
    B = subgroup_generated(S4, [cyc(4, (1, 2)), cyc(4, (1, 2, 3))])
    assert intersect(A, B).order == 2


def test_subgroup_from_elements_checks_closure():
    S3 = make_symmetric(3)
    with pytest.raises(ValidationError):
        subgroup_from_elements(S3, [Perm.identity(3), cyc(3, (0, 1, 2))])
    H = subgroup_from_elements(S3, [Perm.identity(3), cyc(3, (0, 1, 2)), cyc(3, (0, 2, 1))])
    assert H.order == 3 and H.is_normal()


def test_greedy_generators_generate():
    S4 = make_symmetric(4)
    for c in S4.conjugacy_classes:
        Z = centralizer(S4, c.representative)
        gens = greedy_generators(4, Z.elements)
        assert subgroup_generated(S4, gens).element_set == Z.element_set


def test_f2_realisation():
    for d in range(4):
        G = make_elementary_abelian2(d)
        assert G.order == 2**d and G.is_abelian()
        for v in range(2**d):
            assert perm_to_vector(vector_to_perm(v, d), d) == v
    assert make_elementary_abelian2(0).degree == 1


def test_trivial_subgroup():
    assert trivial_subgroup(make_symmetric(4)).order == 1
