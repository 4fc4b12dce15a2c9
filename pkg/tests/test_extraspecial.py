import pytest

from fuscat.extraspecial import (catalog_names, dimension_checks, double_report, double_untwisted, extraspecial_ring,
                                 is_extraspecial_charring, load_group, rep_ring, seed_verifications)
from fuscat.fusion import invertibles_group, is_isomorphic_ring, validate_ring
from fuscat.modular import check_modular_axioms

CASES = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)]


@pytest.mark.parametrize("p,n", CASES)
def test_ring_axioms(p, n):
    R = extraspecial_ring(p, n)
    assert validate_ring(R).ok
    assert R.rank == p ** (2 * n) + p - 1
    assert R.dim == p ** (2 * n + 1)
    assert invertibles_group(R).group.order == p ** (2 * n)
    assert is_extraspecial_charring(R) == (p, n)


@pytest.mark.parametrize("p,n", CASES)
def test_dimension_checks(p, n):
    rep = dimension_checks(p, n)
    assert rep.ok
    assert rep.values["fpdim"] == p ** (2 * n + 1)
    assert rep.values["quotient"] == p


def test_invalid_parameters():
    with pytest.raises(ValueError):
        extraspecial_ring(4, 1)
    with pytest.raises(ValueError):
        extraspecial_ring(2, 0)


def test_small_group_character_rings():
    assert is_isomorphic_ring(extraspecial_ring(2, 1), rep_ring(load_group("D4"))) is not None
    assert is_isomorphic_ring(extraspecial_ring(2, 1), rep_ring(load_group("Q8"))) is not None
    assert is_extraspecial_charring(rep_ring(load_group("S3"))) is None


@pytest.mark.parametrize("name", ["S3", "A4", "D4", "Q8", "Z2", "E2"])
def test_catalog_groups_are_consistent(name):
    G = load_group(name)
    G.validate()
    assert validate_ring(rep_ring(G)).ok


@pytest.mark.parametrize("name,rank,dim", [("Z2", 4, 4), ("E2", 16, 16), ("S3", 8, 36), ("D4", 22, 64),
                                           ("Q8", 22, 64), ("A4", 14, 144)])
def test_doubles_are_modular(name, rank, dim):
    D = double_untwisted(name)
    assert D.rank == rank and D.dim == dim
    assert check_modular_axioms(D).ok
    rep = double_report(name)
    assert rep["balancing"] and rep["xi"] == "1"


def test_unknown_group():
    assert "S3" in catalog_names()
    with pytest.raises(KeyError):
        load_group("S7")


def test_seed_subrings():
    res = seed_verifications()
    assert res["ok"]
    for row in res["S3"]:
        assert row["rank"] == 3 and row["rep_fusion"] and row["center_dim"] == "2"
    a4 = res["A4"]
    rows = a4 if isinstance(a4, list) else [a4]
    assert any(r["rank"] == 4 and sorted(r["dims"]) == ["1", "1", "1", "3"] and r["center_rank"] == 3 for r in rows)
