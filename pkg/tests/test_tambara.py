import pytest

from fuscat.cyclo import SQRT2, I, conj, zeta
from fuscat.modular import check_modular_axioms, is_nondegenerate, symmetric_center
from fuscat.tambara import (CHI21_TABLE, NONSYMMETRIC_CHI20_TABLE, SYMMETRIC_CHI20_TABLE, BraidingData,
                            BraidingError, all_braidings, bicharacter, braided_autos, braiding_equivalent,
                            element_label, enumerate_braiding_classes, gl2, i_power, inv_sqrt_pow2, is_symmetric,
                            ising, ising_catalog, make_braiding, polarizes, quadratic_forms, table_braidings,
                            to_premodular, ty_symmetric_center)


def test_bicharacters():
    hyperbolic = bicharacter(2, 0)
    diagonal = bicharacter(2, 1)
    assert hyperbolic(1, 1) == 1 and hyperbolic(1, 2) == -1
    assert diagonal(1, 1) == -1 and diagonal(1, 2) == 1
    with pytest.raises((BraidingError, ValueError)):
        bicharacter(1, 0)


def test_quadratic_forms_polarize():
    for k in (0, 1):
        chi = bicharacter(2, k)
        forms = quadratic_forms(chi)
        assert len(forms) == 4
        assert all(polarizes(chi, f) for f in forms)


def test_braiding_counts():
    assert len(all_braidings(1, 1)) == 8
    assert len(all_braidings(2, 0)) == 16
    assert len(all_braidings(2, 1)) == 16
    counts = [len(enumerate_braiding_classes(n, k)) for n, k in [(1, 1), (2, 0), (2, 1)]]
    assert counts == [8, 8, 12]


def test_ising_catalog_values():
    cat = ising_catalog()
    assert [b.alpha for b in cat] == [zeta(16, j) for j in range(1, 16, 2)]
    b = ising(3)
    assert b.tau == -SQRT2 / 2 and b.q[1] == -I
    for b in cat:
        assert b.theta_x == b.tau_sign * conj(b.alpha)
        assert b.alpha ** 2 == b.tau * b.gauss_sum()


@pytest.mark.parametrize("j", range(1, 16, 2))
def test_ising_braidings_are_modular(j):
    P = to_premodular(ising(j))
    assert check_modular_axioms(P).ok
    assert is_nondegenerate(P)


def test_gl2_and_automorphisms():
    assert len(gl2(2)) == 6
    assert len(braided_autos(ising(1))) == 1


def test_equivalence_is_data_level():
    assert braiding_equivalent(ising(1), ising(1)) is not None
    assert braiding_equivalent(ising(1), ising(3)) is None
    b = make_braiding(2, 1, 1, [i_power(e) for e in (0, 1, 3, 0)], 1)
    swapped = make_braiding(2, 1, 1, [i_power(e) for e in (0, 3, 1, 0)], 1)
    assert braiding_equivalent(b, swapped) == (2, 1)


def test_symmetric_classes():
    classes = enumerate_braiding_classes(2, 0)
    sym = [c for c in classes if is_symmetric(c.representative)]
    assert len(sym) == 4
    assert all(not is_symmetric(c.representative) for c in enumerate_braiding_classes(2, 1))


@pytest.mark.parametrize("n,k", [(1, 1), (2, 0), (2, 1), (3, 1)])
def test_symmetric_center_matches_balancing(n, k):
    for c in enumerate_braiding_classes(n, k):
        b = c.representative
        assert ty_symmetric_center(b).indices == symmetric_center(to_premodular(b)).indices


def test_published_rows_are_valid_braidings():
    assert len(table_braidings(0, SYMMETRIC_CHI20_TABLE)) == 4
    assert len(table_braidings(0, NONSYMMETRIC_CHI20_TABLE)) == 4
    assert len(table_braidings(1, CHI21_TABLE)) == 12


def test_helpers():
    assert i_power(3) == -I
    assert element_label(3, 2) == "g1+g2"
    assert inv_sqrt_pow2(3) == SQRT2 / 4


def test_json_round_trip():
    b = ising(5)
    again = BraidingData.from_json(b.to_json())
    assert (again.tau, again.q, again.alpha) == (b.tau, b.q, b.alpha)
