import pytest

from fuscat.cyclo import I, zeta
from fuscat.covers import (CONDUCTOR_AXIOM, COVER_LABELS, chi20_cover_candidates, cover_s_matrix,
                           derive_cover_shape, flipped_cover_check, gauss_cancellation, isomorphism_classes,
                           lagrangian_match, match_published, obstruction_report_chi2n0, published_rows,
                           rank2_pointed, twist_exponent_choices, xi_from_theta_x)
from fuscat.modular import check_modular_axioms
from fuscat.tambara import BraidingError, ising
from fuscat.verify import cover_base


@pytest.fixture(scope="module", params=["i", "-i"])
def block(request):
    b = cover_base(request.param)
    return request.param, b, chi20_cover_candidates(b)


def test_eight_modular_candidates(block):
    label, b, cands = block
    assert len(cands) == 8
    for c in cands:
        assert c.rank == len(COVER_LABELS) == 11
        assert c.premodular.dim == 32
        assert check_modular_axioms(c.premodular).ok
        assert gauss_cancellation(c)


def test_twist_rows_match_published_multiset(block):
    label, b, cands = block
    assert match_published(cands, label)
    assert sorted(c.exponents for c in cands) == sorted(published_rows(label))


def test_s_matrix_block_form(block):
    label, b, cands = block
    for c in cands:
        assert c.S == cover_s_matrix(b.theta_x, c.eps)
        assert c.theta[4] == b.theta_x


def test_distinct_with_base_fixed(block):
    label, b, cands = block
    assert len(isomorphism_classes(cands, fixed_base=True)) == 8


def test_component_permutations_identify_candidates(block):
    # the base twists are all trivial, so permuting the three nontrivial components is a symmetry
    label, b, cands = block
    assert len(isomorphism_classes(cands)) == 4


def test_lagrangian_is_of_quaternion_type(block):
    label, b, cands = block
    rep = lagrangian_match(cands[0])
    assert rep.found
    assert rep.extraspecial == (2, 1)
    assert rep.group_type == "Q8"


def test_twist_choices():
    assert twist_exponent_choices(I) == [1, 5]
    assert twist_exponent_choices(-I) == [3, 7]
    assert xi_from_theta_x(I) == zeta(8)


def test_flipped_twists_break_unitarity():
    rep = flipped_cover_check(cover_base("i"))
    assert rep["unitary"] is False


def test_rejects_wrong_base():
    with pytest.raises(BraidingError):
        chi20_cover_candidates(ising(1))


def test_rank2_pointed():
    P = rank2_pointed(I)
    assert list(P.theta) == [1, I]


def test_shape_options_n1():
    shape = derive_cover_shape(1)
    assert all(s.ok for s in shape.steps)
    assert [o["d_y^2"] for o in shape.options] == [4, 8]
    assert [o["excluded"] for o in shape.options] == [False, True]


def test_obstruction_branches():
    assert obstruction_report_chi2n0(1).conclusion == "not obstructed; candidates exist"
    rep = obstruction_report_chi2n0(2)
    assert rep.conclusion == "obstructed (conductor axiom)"
    assert rep.steps[-1].status == "axiom"
    assert all(s.ok for s in rep.shape.steps)
    assert CONDUCTOR_AXIOM["status"] == "assumed"
