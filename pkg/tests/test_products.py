import itertools
from fractions import Fraction

import pytest

from fuscat.cyclo import I, zeta
from fuscat.modular import check_modular_axioms, data_isomorphic, gauss_central_charge
from fuscat.products import (ISING_PRODUCT_TABLE, ODD, build_cover_chi_n1, classify_ising_products,
                             deligne_product, extract_ty_braiding, generated_by_max_dim, integral_subcat,
                             ising_index, ising_parameters, ising_premodular, ising_product, parse_pairs,
                             trivial_premodular, verify_ising_factorization)
from fuscat.tambara import braiding_equivalent, enumerate_braiding_classes


def test_deligne_product_shape():
    P = ising_product((1, 7))
    assert P.rank == 9
    assert P.dim == 16
    assert check_modular_axioms(P).ok
    assert deligne_product(trivial_premodular(), ising_premodular(1)).rank == 3


def test_integral_subcategory_of_ising_square():
    Q = integral_subcat(ising_product((1, 7)))
    assert Q.rank == 5
    assert sorted(int(d.to_fraction()) for d in Q.dims) == [1, 1, 1, 1, 2]
    assert generated_by_max_dim(ising_product((1, 7))).rank == 5


def test_extraction_recovers_product_data():
    e = extract_ty_braiding(integral_subcat(ising_product((1, 7))))
    b = e.braiding
    assert b.tau == Fraction(1, 2) and b.alpha == -1
    assert list(b.q) == [1, I, -I, 1]


def test_ising_parameters():
    p = ising_parameters(ising_premodular(1), 2)
    assert p["alpha"] == zeta(16) and p["q"] == I and p["nu"] == 1


@pytest.mark.parametrize("pair", list(itertools.combinations_with_replacement(ODD, 2)))
def test_every_pair_factorizes(pair):
    r = verify_ising_factorization(pair)
    assert r.tau_ok and r.alpha_ok and r.q_ok
    assert r.witness is not None


def test_triples_factorize():
    for triple in [(1, 3, 5), (7, 7, 7), (1, 9, 15)]:
        r = verify_ising_factorization(triple)
        assert r.tau_ok and r.alpha_ok and r.q_ok


def test_central_charge_rows():
    rep = classify_ising_products()
    assert len(rep.rows) == 8
    assert rep.product_class_count == 20
    assert rep.integral_class_count == 12
    for row in rep.rows:
        assert sorted(row.pairs) == sorted(parse_pairs(ISING_PRODUCT_TABLE[row.xi_exponent][0]))
        for j, k in row.pairs:
            assert gauss_central_charge(ising_product((j, k))).xi == row.xi


def test_swapped_factors_are_isomorphic():
    assert data_isomorphic(ising_product((1, 3)), ising_product((3, 1))) is not None


def test_parse_pairs():
    assert parse_pairs("(1,7),(3,15)") == [(1, 7), (3, 15)]


def test_ising_index():
    assert ising_index(1, 1) == [1, 9]
    assert ising_index(-1, 3) == [3, 11]


@pytest.mark.parametrize("cls", enumerate_braiding_classes(2, 1), ids=lambda c: c.representative.name or "chi21")
def test_covers_of_chi21(cls):
    b = cls.representative
    c = build_cover_chi_n1(b)
    assert c.ok
    tau = c.tau_factors()
    assert tau[0] * tau[1] == b.tau
    assert braiding_equivalent(c.report.recovered, b) is not None
