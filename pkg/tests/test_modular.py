import json

import pytest

from fuscat.cyclo import SQRT2, I, ZERO, zeta
from fuscat.extraspecial import double_untwisted
from fuscat.fusion import all_subrings, subring_generated
from fuscat.modular import (ModularError, Premodular, centralizer, check_modular_axioms, condensation_dims,
                            conductor, data_isomorphic, dimension_identity, fs_indicator, gauss_central_charge,
                            is_nondegenerate, load_premodular, muger_centralizes, rational_divisibility_check,
                            s_from_balancing, sqrt_dim, symmetric_center, tannakian_and_lagrangian)
from fuscat.products import ising_premodular, ising_product


@pytest.fixture(scope="module")
def toric():
    return double_untwisted("Z2")


def test_toric_code_oracle(toric):
    assert list(toric.theta) == [1, 1, 1, -1]
    assert toric.S == [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]
    assert check_modular_axioms(toric).ok
    assert conductor(toric) == 2
    assert gauss_central_charge(toric).xi == 1


def test_ising_oracle():
    P = ising_premodular(1)
    assert P.S == [[1, 1, SQRT2], [1, 1, -SQRT2], [SQRT2, -SQRT2, ZERO]]
    assert P.theta[2] == zeta(16, 15)
    assert gauss_central_charge(P).xi == zeta(16, 15)
    assert conductor(P) == 16
    assert sqrt_dim(P.dim) == 2
    assert fs_indicator(P, 2) == 1
    assert fs_indicator(ising_premodular(3), 2) == -1


def test_balancing_formula_matches_supplied_s(toric):
    assert s_from_balancing(toric.ring, toric.theta) == toric.S


def test_rejects_bad_twists(toric):
    with pytest.raises(ModularError):
        Premodular(toric.ring, [I, 1, 1, 1])
    with pytest.raises(ModularError):
        Premodular(toric.ring, [1, 1, 1])


def test_degenerate_data():
    P = Premodular(double_untwisted("Z2").ring, [1, 1, 1, 1])
    rep = check_modular_axioms(P)
    assert not is_nondegenerate(P)
    assert symmetric_center(P).indices == (0, 1, 2, 3)
    assert not rep.ok


def test_muger_centralizer(toric):
    assert muger_centralizes(toric, 0, 3)
    assert not muger_centralizes(toric, 1, 2)
    assert centralizer(toric, [0, 1]).indices == (0, 1)


def test_lagrangians_of_toric_code(toric):
    lag = [s.indices for s in all_subrings(toric.ring) if tannakian_and_lagrangian(toric, s).is_lagrangian]
    assert lag == [(0, 1), (0, 2)]
    cd = condensation_dims(toric, subring_generated(toric.ring, [1]))
    assert cd.quotient_dim == 1


def test_dimension_identity_on_doubles():
    for name in ("Z2", "S3"):
        D = double_untwisted(name)
        assert all(dimension_identity(D, s) for s in all_subrings(D.ring))


def test_central_charge_multiplicative():
    a, b = ising_premodular(1), ising_premodular(7)
    P = ising_product((1, 7))
    assert gauss_central_charge(P).xi == gauss_central_charge(a).xi * gauss_central_charge(b).xi


def test_data_isomorphism():
    assert data_isomorphic(ising_premodular(1), ising_premodular(1)) is not None
    assert data_isomorphic(ising_premodular(1), ising_premodular(3)) is None
    assert data_isomorphic(ising_product((1, 7)), ising_product((7, 1))) is not None


def test_divisibility():
    assert rational_divisibility_check([1, 1, 2])
    assert not rational_divisibility_check([1, 1, 2, SQRT2])


def test_json_round_trip(tmp_path, toric):
    path = tmp_path / "toric.json"
    path.write_text(json.dumps(toric.to_json()))
    again = load_premodular(str(path))
    assert again.S == toric.S and again.theta == toric.theta
