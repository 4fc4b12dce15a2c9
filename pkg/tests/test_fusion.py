import json

import numpy as np
import pytest

from fuscat.cyclo import SQRT2, Cyc
from fuscat.extraspecial import load_group, rep_ring
from fuscat.fusion import (FusionError, FusionRing, adjoint_subring, all_subrings, decompose_abelian,
                           distinguished_subrings, fp_dims, invertibles_group, is_isomorphic_ring, load_ring,
                           pointed_ring, recognize_sqrt2, subring_generated, universal_grading, validate_ring)
from fuscat.tambara import ty_ring


def ising_ring():
    N = np.zeros((3, 3, 3), dtype=np.int64)
    for x in range(3):
        N[0, x, x] = N[x, 0, x] = 1
    N[1, 1, 0] = 1
    N[1, 2, 2] = N[2, 1, 2] = 1
    N[2, 2, 0] = N[2, 2, 1] = 1
    return FusionRing(["1", "psi", "sigma"], N)


def test_ising_ring_dimensions_and_grading():
    R = ising_ring()
    assert validate_ring(R).ok
    assert list(R.fpdim) == [1, 1, SQRT2]
    assert R.dim == 4
    G = universal_grading(R)
    assert G.group.order == 2
    assert G.component_of[0] == G.component_of[1] != G.component_of[2]
    assert adjoint_subring(R).indices == (0, 1)


def test_ty_ring_structure():
    R = ty_ring(2)
    assert R.labels == ("e", "g1", "g2", "g1+g2", "x")
    assert R.fuse(4, 4) == {0: 1, 1: 1, 2: 1, 3: 1}
    assert fp_dims(R) == [1, 1, 1, 1, 2]
    d = distinguished_subrings(R)
    assert d.pointed.indices == d.adjoint.indices == (0, 1, 2, 3)
    assert len(all_subrings(R)) == 6


def test_rep_s3():
    R = rep_ring(load_group("S3"))
    assert validate_ring(R).ok
    assert sorted(d.key() for d in R.fpdim) == sorted(Cyc.rational(v).key() for v in (1, 1, 2))
    assert invertibles_group(R).group.order == 2
    two = next(x for x in range(3) if R.fpdim[x] == 2)
    assert R.fuse(two, two) == {x: 1 for x in range(3)}
    assert subring_generated(R, [two]).indices == (0, 1, 2)


def test_d4_and_q8_share_fusion_rules_with_ty():
    assert is_isomorphic_ring(rep_ring(load_group("D4")), ty_ring(2)) is not None
    assert is_isomorphic_ring(rep_ring(load_group("Q8")), rep_ring(load_group("D4"))) is not None
    assert is_isomorphic_ring(rep_ring(load_group("S3")), ty_ring(1)) is None


def test_pointed_ring():
    R = pointed_ring(list(range(4)), lambda a, b: (a + b) % 4)
    assert validate_ring(R).ok
    assert invertibles_group(R).group.invariants == (4,)
    assert R.dual[1] == 3


def test_decompose_abelian():
    grp, coords = decompose_abelian(list(range(6)), lambda a, b: (a + b) % 6, 0)
    assert grp.order == 6 and len(set(coords.values())) == 6


def test_recognize_sqrt2():
    assert recognize_sqrt2(2 ** 0.5 * 3 / 2) == SQRT2 * 3 / 2
    assert recognize_sqrt2(1.6180339887) is None


def test_fibonacci_dimension_is_out_of_scope():
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = N[1, 1, 0] = N[1, 1, 1] = 1
    R = FusionRing(["1", "tau"], N)
    with pytest.raises(FusionError):
        fp_dims(R)
    assert not validate_ring(R).checks["fpdim"]


def test_broken_associativity_is_reported():
    N = np.zeros((3, 3, 3), dtype=np.int64)
    for x in range(3):
        N[0, x, x] = N[x, 0, x] = 1
    N[1, 1, 0] = N[2, 2, 0] = 1
    N[1, 2, 1] = N[2, 1, 1] = 1
    rep = validate_ring(FusionRing(["e", "a", "b"], N, fpdim=[1, 1, 1]))
    assert not rep.ok
    assert rep.counterexamples


def test_negative_structure_constants_rejected():
    N = np.zeros((1, 1, 1), dtype=np.int64)
    N[0, 0, 0] = -1
    with pytest.raises(FusionError):
        FusionRing(["e"], N)


def test_json_round_trip(tmp_path):
    R = ty_ring(2)
    path = tmp_path / "ring.json"
    path.write_text(json.dumps(R.to_json()))
    S = load_ring(str(path))
    assert S.labels == R.labels and (S.N == R.N).all() and S.fpdim == R.fpdim
