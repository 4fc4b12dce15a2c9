"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

import contextlib
import io
import itertools
import json
import random
import time

import pytest

from fuscat.cli import run
from fuscat.covers import COVER_TWIST_TABLE, chi20_cover_candidates, cover_s_matrix, isomorphism_classes
from fuscat.cyclo import format_cyc, parse_cyc, zeta
from fuscat.extraspecial import dimension_checks, double_untwisted, extraspecial_ring, seed_verifications
from fuscat.fusion import validate_ring
from fuscat.modular import check_modular_axioms
from fuscat.products import ISING_PRODUCT_TABLE, ODD, parse_pairs, verify_ising_factorization
from fuscat.tambara import (CHI21_TABLE, ISING_TABLE, NONSYMMETRIC_CHI20_TABLE, SYMMETRIC_CHI20_TABLE,
                            braiding_equivalent)
from fuscat.verify import check_properties, classify_table_rows, cover_base


@contextlib.contextmanager
def criterion(capsys, number, title, limit=None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
    except Exception as exc:
        with capsys.disabled():
            print(f"\nFAIL criterion {number}: {title} ({str(exc).splitlines()[0]})")
        raise
    with capsys.disabled():
        print(f"\nPASS criterion {number}: {title} ({time.perf_counter() - start:.2f}s)")


def cli_json(*argv):
    out = io.StringIO()
    code = run([*argv, "--format", "json"], stdout=out)
    return code, json.loads(out.getvalue())


def test_criterion_1_ising_table(capsys):
    with criterion(capsys, 1, "ising list reproduces the 8 Ising braidings", limit=1.0):
        code, data = cli_json("ising", "list")
        assert code == 0
        rows = data["braidings"]
        assert len(rows) == 8
        for row in rows:
            j = int(row["name"][1:])
            tau_sign, delta, eps, qg = ISING_TABLE[j]
            assert row["tau_sign"] == tau_sign
            assert parse_cyc(row["q"][1]) == parse_cyc(qg)
            assert parse_cyc(row["alpha"]) == zeta(16, j)
            assert (row["delta"], row["eps"]) == (delta, eps)


def test_criterion_2_ty_classes(capsys):
    with criterion(capsys, 2, "ty enum --n 2 gives 4 + 4 chi^0 and 12 chi^1 classes", limit=5.0):
        code, data = cli_json("ty", "enum", "--n", "2")
        assert code == 0
        chi20, chi21 = data["chi20"], data["chi21"]
        assert sum(c["symmetric"] for c in chi20) == 4
        assert sum(not c["symmetric"] for c in chi20) == 4
        assert len(chi21) == 12
        assert sum(c["members"] for c in chi20) == 16 and sum(c["members"] for c in chi21) == 16
        for k, table in [(0, SYMMETRIC_CHI20_TABLE + NONSYMMETRIC_CHI20_TABLE), (1, CHI21_TABLE)]:
            hits = [h for _, _, h in classify_table_rows(k, table)]
            assert all(h is not None for h in hits), "published row without a computed class"
            assert len({h[0] for h in hits}) == len(table), "two published rows hit the same class"


def test_criterion_3_chi20_covers(capsys):
    with criterion(capsys, 3, "cover chi20 yields 16 modular, pairwise non-isomorphic candidates", limit=30.0):
        everything = []
        for label in ("i", "-i"):
            code, data = cli_json("cover", "chi20", f"--alpha={label}")
            assert code == 0
            rows = data["candidates"]
            assert len(rows) == 8
            assert all(r["modular"]["ok"] for r in rows)
            assert all(r["modular"]["checks"]["unitary"] and r["modular"]["checks"]["verlinde_integral"]
                       for r in rows)
            assert sorted(tuple(r["exponents"]) for r in rows) == sorted(COVER_TWIST_TABLE[data["theta_x"]])
            cands = chi20_cover_candidates(cover_base(label))
            for c in cands:
                assert c.S == cover_s_matrix(c.theta[4], c.eps)
            everything += cands
        classes = isomorphism_classes(everything)
        assert len(classes) == 16, f"{len(classes)} data-isomorphism classes among 16 candidates"


def test_criterion_4_ising_products(capsys):
    with criterion(capsys, 4, "classify ising-products: 8 xi rows, 20 product and 12 integral classes",
                   limit=120.0):
        code, data = cli_json("classify", "ising-products")
        assert code == 0
        rows = data["rows"]
        assert len(rows) == 8
        for row in rows:
            published_pairs = parse_pairs(row["published"][0])
            assert sorted(map(tuple, row["pairs"])) == sorted(published_pairs)
            assert len(row["product_classes"]) == len(parse_pairs(row["published"][1]))
            assert len(row["integral_classes"]) == len(parse_pairs(row["published"][2]))
        assert {format_cyc(zeta(8, e)) for e in ISING_PRODUCT_TABLE} == {row["xi"] for row in rows}
        assert data["product_classes"] == 20
        assert data["integral_classes"] == 12


def test_criterion_5_factorizations(capsys):
    with criterion(capsys, 5, "extraction recovers product braiding data for 36 pairs and 20 triples"):
        rng = random.Random(0)
        cases = list(itertools.combinations_with_replacement(ODD, 2))
        cases += [tuple(rng.choice(ODD) for _ in range(3)) for _ in range(20)]
        failures = []
        for idx in cases:
            r = verify_ising_factorization(idx)
            if not (r.tau_ok and r.alpha_ok and r.q_ok and braiding_equivalent(r.recovered, r.expected)):
                failures.append(idx)
        assert len(cases) == 56
        assert failures == []


def test_criterion_6_obstruction(capsys):
    with criterion(capsys, 6, "cover obstruct verifies every arithmetic step and cites the conductor axiom"):
        code, data = cli_json("cover", "obstruct", "--n", "2")
        assert code == 0
        steps = {s["name"]: s for s in data["shape"]["steps"] + data["steps"]}
        for name in ("zero S block", "multiplicity", "orbit sizes", "16th-root twists", "integrality"):
            assert steps[name]["ok"] and steps[name]["status"] == "verified", name
        final = data["steps"][-1]
        assert final["status"] == "axiom" and data["axiom"]["citation"]
        assert data["conclusion"] == "obstructed (conductor axiom)"
        code, data = cli_json("cover", "obstruct", "--n", "1")
        assert code == 0 and data["conclusion"] == "not obstructed; candidates exist"


def test_criterion_7_extraspecial(capsys):
    with criterion(capsys, 7, "extraspecial rings satisfy the ring axioms and dimension identities"):
        for p, n in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)]:
            assert validate_ring(extraspecial_ring(p, n)).ok
            rep = dimension_checks(p, n)
            assert rep.ok
            assert rep.values["fpdim"] == p ** (2 * n + 1)
            assert rep.values["quotient"] == p


def test_criterion_8_doubles(capsys):
    with criterion(capsys, 8, "seeded subrings of D(S3) and D(A4), doubles modular"):
        res = seed_verifications()
        s3 = res["S3"]
        assert s3 and all(r["rank"] == 3 and r["rep_fusion"] and r["center_dim"] == "2" for r in s3)
        a4 = res["A4"] if isinstance(res["A4"], list) else [res["A4"]]
        assert any(r["rank"] == 4 and sorted(r["dims"]) == ["1", "1", "1", "3"] and r["center_rank"] == 3
                   for r in a4)
        for name in ("S3", "A4"):
            rep = check_modular_axioms(double_untwisted(name))
            assert rep.checks["unitary"] and rep.checks["verlinde_integral"]


def test_criterion_9_properties(capsys):
    with criterion(capsys, 9, "property suites report zero violations"):
        out = check_properties(seed=0, samples=1000)
        assert out.failures == []
        assert out.detail["field_samples"] >= 1000
