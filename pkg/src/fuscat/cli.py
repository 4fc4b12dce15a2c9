"""Command-line front end: ``fuscat <command> [options]``.

Every command builds a :class:`Result` holding one or more tables plus a JSON
payload; ``--format`` picks how it is printed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .cyclo import Cyc, format_cyc, sqrt_root_of_unity

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Table:
    headers: list[str]
    rows: list[list]
    title: str = ""


@dataclass
class Result:
    tables: list[Table] = field(default_factory=list)
    payload: dict = field(default_factory=dict)
    ok: bool = True
    notes: list[str] = field(default_factory=list)


def _cell(v) -> str:
    if isinstance(v, Cyc):
        return format_cyc(v)
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return ""
    return str(v)


def render(res: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(res.payload, indent=2, default=_cell) + "\n"
    out = io.StringIO()
    for t in res.tables:
        if fmt == "csv":
            if t.title:
                out.write(f"# {t.title}\n")
            w = csv.writer(out, lineterminator="\n")
            w.writerow(t.headers)
            w.writerows([[_cell(c) for c in row] for row in t.rows])
        else:
            if t.title:
                out.write(f"### {t.title}\n\n")
            out.write("| " + " | ".join(t.headers) + " |\n")
            out.write("|" + "---|" * len(t.headers) + "\n")
            for row in t.rows:
                out.write("| " + " | ".join(_cell(c) for c in row) + " |\n")
        out.write("\n")
    for note in res.notes:
        out.write(("# " if fmt == "csv" else "") + note + "\n")
    return out.getvalue()


# ---------------------------------------------------------------------------
# commands


def _epsilon(b) -> int:
    return 1 if b.alpha == sqrt_root_of_unity(b.tau * b.gauss_sum()) else -1


def _deltas(b) -> list[int]:
    from .tambara import i_power

    out = []
    for j in range(b.n):
        g = 1 << j
        root = i_power(1) if b.chi(g, g) == -1 else Cyc.rational(1)
        out.append(1 if b.q[g] == root else -1)
    return out


def cmd_ising_list(args) -> Result:
    from .verify import ising_rows

    rows = ising_rows()
    table = Table(["", "tau", "delta", "eps", "q(e)", "q(g)", "alpha"],
                  [[r["name"], r["tau"], r["delta"], r["eps"], r["q"][0], r["q"][1], r["alpha"]] for r in rows],
                  "Ising braidings")
    payload = {"braidings": [dict(r["braiding"].to_json(), name=r["name"], delta=r["delta"], eps=r["eps"],
                                  theta_x=str(r["theta_x"])) for r in rows]}
    return Result([table], payload)


def _braiding_row(name, b, witness=None) -> list:
    from .tambara import is_symmetric

    d = _deltas(b)
    return [name, b.tau, *d, _epsilon(b), *b.q, b.alpha, b.theta_x, is_symmetric(b),
            " ".join(map(str, witness)) if witness else ""]


def _braiding_headers(n: int) -> list[str]:
    from .tambara import element_label

    return (["", "tau"] + [f"delta{j + 1}" for j in range(n)] + ["eps"]
            + [f"q({element_label(g, n)})" for g in range(1 << n)] + ["alpha", "theta_x", "symmetric", "witness"])


def cmd_ty_enum(args) -> Result:
    from .tambara import (CHI21_TABLE, NONSYMMETRIC_CHI20_TABLE, SYMMETRIC_CHI20_TABLE, enumerate_braiding_classes,
                          is_symmetric)
    from .verify import classify_table_rows

    n = args.n
    ks = [args.k] if args.k is not None else ([0, 1] if n % 2 == 0 else [1])
    res = Result()
    for k in ks:
        if k == 0 and n % 2:
            raise UsageError("chi^0 braidings need even n")
        classes = enumerate_braiding_classes(n, k)
        res.payload[f"chi{n}{k}"] = [{"representative": c.representative.to_json(), "members": len(c.members),
                                      "symmetric": is_symmetric(c.representative)} for c in classes]
        if n == 2 and args.sort == "published":
            groups = ([("Symmetric chi_2^0 braidings", SYMMETRIC_CHI20_TABLE),
                       ("Nonsymmetric chi_2^0 braidings", NONSYMMETRIC_CHI20_TABLE)] if k == 0
                      else [("chi_2^1 braidings", CHI21_TABLE)])
            for title, rows in groups:
                matched = classify_table_rows(k, rows)
                res.ok &= all(h is not None for _, _, h in matched)
                res.tables.append(Table(_braiding_headers(n),
                                        [_braiding_row(name, b, h[1] if h else None) for name, b, h in matched],
                                        title))
        else:
            res.tables.append(Table(_braiding_headers(n),
                                    [_braiding_row(f"#{i}", c.representative) for i, c in enumerate(classes)],
                                    f"chi_{n}^{k} braidings ({len(classes)} classes)"))
    return res


def cmd_ty_center(args) -> Result:
    from .modular import symmetric_center
    from .tambara import enumerate_braiding_classes, to_premodular, ty_ring, ty_symmetric_center

    n = args.n
    ks = [args.k] if args.k is not None else ([0, 1] if n % 2 == 0 else [1])
    rows, payload = [], []
    for k in ks:
        for i, c in enumerate(enumerate_braiding_classes(n, k)):
            b = c.representative
            center = ty_symmetric_center(b)
            computed = symmetric_center(to_premodular(b))
            agree = center.indices == computed.indices
            res_labels = [ty_ring(n).labels[x] for x in center.indices]
            rows.append([f"chi_{n}^{k} #{i}", b.tau, b.alpha, ", ".join(res_labels), center.dim, agree])
            payload.append({"k": k, "braiding": b.to_json(), "center": res_labels, "agrees": agree})
    ok = all(r[-1] for r in rows)
    return Result([Table(["class", "tau", "alpha", "symmetric center", "FPdim", "balancing agrees"], rows,
                         "Symmetric centers")], {"centers": payload}, ok)


def cmd_modular_check(args) -> Result:
    from .modular import check_modular_axioms, is_nondegenerate, load_premodular

    try:
        P = load_premodular(args.input)
    except FileNotFoundError:
        raise UsageError(f"no such file: {args.input}")
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read premodular data from {args.input}: {exc}")
    rep = check_modular_axioms(P)
    rows = [[name, ok, rep.counterexamples.get(name, "")] for name, ok in rep.checks.items()]
    rows.append(["nondegenerate", is_nondegenerate(P), ""])
    payload = dict(rep.to_json(), rank=P.rank, dim=str(P.dim))
    return Result([Table(["check", "ok", "counterexample"], rows, f"Modular axioms (rank {P.rank})")], payload, rep.ok)


def _parse_factors(text: str) -> tuple[int, ...]:
    out = []
    for part in text.split(","):
        part = part.strip().upper().lstrip("I")
        if not part.isdigit() or int(part) % 2 == 0:
            raise UsageError(f"factors must look like I1,I7 with odd indices, got {text!r}")
        out.append(int(part) % 16)
    return tuple(out)


def cmd_product(args) -> Result:
    from .modular import gauss_central_charge
    from .products import extract_ty_braiding, integral_subcat, ising_product

    idx = _parse_factors(args.factors)
    P = ising_product(idx)
    res = Result()
    g = gauss_central_charge(P)
    res.payload = {"factors": list(idx), "rank": P.rank, "dim": str(P.dim), "xi": str(g.xi),
                   "labels": list(P.labels), "dims": [str(d) for d in P.dims], "theta": [str(t) for t in P.theta]}
    res.tables.append(Table(["object", "dim", "theta"], [[P.labels[x], P.dims[x], P.theta[x]] for x in range(P.rank)],
                            f"{P.name}: rank {P.rank}, dim {format_cyc(P.dim)}, xi {format_cyc(g.xi)}"))
    if args.integral:
        sub = integral_subcat(P)
        ext = extract_ty_braiding(sub)
        b = ext.braiding
        res.payload["integral"] = {"labels": list(sub.labels), "braiding": b.to_json(), "method": ext.method}
        res.tables.append(Table(_braiding_headers(b.n), [_braiding_row(f"({P.name})_Q", b)],
                                "Recovered braiding on the integral subcategory"))
    return res


def cmd_classify(args) -> Result:
    from .products import ISING_PRODUCT_TABLE, classify_ising_products

    rep = classify_ising_products()

    def fmt(pairs):
        return ",".join(f"({j},{k})" for j, k in pairs)

    rows, payload = [], []
    for row in rep.rows:
        xi = format_cyc(row.xi)
        prod = [c[0] for c in row.product_classes]
        integ = [c[0] for c in row.integral_classes]
        rows.append([xi, fmt(row.pairs), fmt(prod), fmt(integ)])
        payload.append({"xi": xi, "pairs": row.pairs, "product_classes": row.product_classes,
                        "integral_classes": row.integral_classes,
                        "published": ISING_PRODUCT_TABLE[row.xi_exponent]})
    table = Table(["xi", "(j,k)", "product classes", "integral classes"], rows,
                  "Braided equivalence classes of Ising products and their integral parts")
    res = Result([table], {"rows": payload, "product_classes": rep.product_class_count,
                           "integral_classes": rep.integral_class_count})
    res.notes.append(f"{rep.product_class_count} product classes, {rep.integral_class_count} integral classes")
    return res


def cmd_cover_chi20(args) -> Result:
    from .covers import COVER_LABELS, COVER_TWIST_TABLE, chi20_cover_candidates, lagrangian_match
    from .modular import fs_indicator
    from .verify import cover_base

    if args.alpha not in ("i", "-i"):
        raise UsageError("--alpha must be i or -i")
    b = cover_base(args.alpha)
    cands = chi20_cover_candidates(b)
    theta = format_cyc(b.theta_x)
    if args.sort == "published":
        order = {row: i for i, row in enumerate(COVER_TWIST_TABLE.get(theta, []))}
        cands.sort(key=lambda c: order.get(c.exponents, len(order)))
    rows, payload = [], []
    for c in cands:
        lag = lagrangian_match(c)
        fs = format_cyc(fs_indicator(c.premodular, 4))
        rows.append([c.theta[4], *c.theta[5:], *c.eps, c.report.ok, fs, lag.group_type])
        payload.append(dict(c.to_json(), fs_x=fs, lagrangian=lag.to_json()))
    heads = ["theta_x"] + [f"theta_{lab}" for lab in COVER_LABELS[5:]] + ["eps1", "eps2", "eps3", "modular",
                                                                            "nu2(x)", "lagrangian"]
    res = Result([Table(heads, rows, f"Cover twists over {b.name} (theta_x = {theta})")],
                 {"base": b.to_json(), "theta_x": theta, "candidates": payload})
    if cands:
        S = cands[0].S
        res.tables.append(Table([""] + list(COVER_LABELS), [[COVER_LABELS[i], *S[i]] for i in range(len(S))],
                                f"S-matrix with eps = {cands[0].eps}"))
    res.ok = len(cands) == 8 and all(c.report.ok for c in cands)
    return res


def cmd_cover_chi_n1(args) -> Result:
    from .products import build_cover_chi_n1
    from .tambara import BraidingData, enumerate_braiding_classes

    if args.spec:
        try:
            with open(args.spec) as fh:
                raw = json.load(fh)
        except FileNotFoundError:
            raise UsageError(f"no such file: {args.spec}")
        items = raw if isinstance(raw, list) else [raw]
        try:
            targets = [BraidingData.from_json(obj) for obj in items]
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad braiding data in {args.spec}: {exc}")
        if args.n is not None and any(t.n != args.n for t in targets):
            raise UsageError("--n disagrees with the braiding data")
    else:
        if args.n is None:
            raise UsageError("give --n or --spec")
        targets = [c.representative for c in enumerate_braiding_classes(args.n, 1)]
    rows, payload = [], []
    ok = True
    for t in targets:
        cov = build_cover_chi_n1(t)
        ok &= cov.ok
        rows.append([t.name or "", t.tau, " ".join(format_cyc(v) for v in t.q), t.alpha,
                     "x".join(f"I{k}" for k in cov.indices), cov.report.recovered.tau, cov.ok])
        payload.append(cov.to_json())
    return Result([Table(["target", "tau", "q", "alpha", "factors", "recovered tau", "verified"], rows,
                         "Ising-product covers of chi^1 braidings")], {"covers": payload}, ok)


def cmd_cover_obstruct(args) -> Result:
    from .covers import CONDUCTOR_AXIOM, obstruction_report_chi2n0

    if args.n < 1:
        raise UsageError("--n must be positive")
    rep = obstruction_report_chi2n0(args.n)
    steps = rep.shape.steps + rep.steps
    rows = [[s.name, s.statement, s.status, s.ok] for s in steps]
    opts = [[o["d_y^2"], o["N^x_{y,y*}"], o["orbit"], o["stabilizer"], o["excluded"]] for o in rep.shape.options]
    res = Result([Table(["step", "statement", "status", "ok"], rows, f"Derivation trace, n = {args.n}"),
                  Table(["d_y^2", "N^x_{y,y*}", "orbit", "stabilizer", "excluded"], opts, "Dimension options")],
                 rep.to_json(), rep.ok)
    res.notes.append(f"conclusion: {rep.conclusion}")
    if args.n >= 2:
        res.notes.append(f"assumed: {CONDUCTOR_AXIOM['statement']} [{CONDUCTOR_AXIOM['citation']}]")
    return res


def cmd_extraspecial(args) -> Result:
    from .extraspecial import extraspecial_ring, is_extraspecial_charring, dimension_checks
    from .fusion import validate_ring

    try:
        R = extraspecial_ring(args.p, args.n)
    except ValueError as exc:
        raise UsageError(str(exc))
    val = validate_ring(R)
    rec = is_extraspecial_charring(R)
    dims = dimension_checks(args.p, args.n)
    rows = [[k, v] for k, v in val.checks.items()]
    rows += [[f"dimension: {k}", v] for k, v in dims.checks.items()]
    rows.append(["recognized", rec == (args.p, args.n)])
    payload = {"p": args.p, "n": args.n, "rank": R.rank, "ring": R.to_json(), "validation": val.to_json(),
               "recognized": list(rec) if rec else None, "dimensions": dims.to_json()}
    vals = [[k, v] for k, v in dims.values.items()]
    return Result([Table(["check", "ok"], rows, f"Character ring of {args.p}^(1+{2 * args.n}), rank {R.rank}"),
                   Table(["quantity", "value"], vals, "Dimensions")], payload,
                  val.ok and dims.ok and rec == (args.p, args.n))


def cmd_double(args) -> Result:
    from .extraspecial import catalog_names, double_report

    if args.group not in catalog_names():
        raise UsageError(f"unknown group {args.group!r}; choose from {', '.join(catalog_names())}")
    rep = double_report(args.group)
    rows = [[lab, d, t] for lab, d, t in zip(rep["labels"], rep["dims"], rep["theta"])]
    res = Result([Table(["object", "dim", "theta"], rows,
                        f"{rep['name']}: rank {rep['rank']}, dim {rep['dim']}, xi {rep['xi']}")], rep,
                 rep["modular"]["ok"] and rep["balancing"])
    res.notes.append(f"modular: {rep['modular']['ok']}; S agrees with balancing: {rep['balancing']}")
    return res


def cmd_verify(args) -> Result:
    from .verify import CRITERIA, run_all

    names = None if args.which == "all" else [args.which]
    if names and names[0] not in CRITERIA:
        raise UsageError(f"unknown check {args.which!r}; choose from all, {', '.join(CRITERIA)}")
    outcomes = run_all(names, seed=args.seed, workers=args.parallel)
    rows = [[o.name, o.ok, f"{o.seconds:.2f}", o.limit or "", "; ".join(o.failures)] for o in outcomes]
    res = Result([Table(["criterion", "ok", "seconds", "limit", "failures"], rows, "Verification")],
                 {"outcomes": [o.to_json() for o in outcomes]}, all(o.ok for o in outcomes))
    return res


# ---------------------------------------------------------------------------
# argument parsing


def _common(suppress: bool) -> argparse.ArgumentParser:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=["md", "json", "csv"], default=d("md"))
    p.add_argument("--out", metavar="PATH", default=d(None), help="write output to PATH instead of stdout")
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized samples")
    p.add_argument("--parallel", type=int, default=d(None), metavar="N", help="worker processes")
    p.add_argument("--sort", choices=["published", "computed"], default=d("published"), help="row order")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)
    parser = argparse.ArgumentParser(prog="fuscat", parents=[_common(suppress=False)],
                                     description="Exact modular data for braided Tambara-Yamagami categories.")
    parser.add_argument("--version", action="version", version=f"fuscat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    ising = sub.add_parser("ising", help="Ising braidings").add_subparsers(dest="action", required=True)
    ising.add_parser("list", parents=[common]).set_defaults(func=cmd_ising_list)

    ty = sub.add_parser("ty", help="Tambara-Yamagami braidings").add_subparsers(dest="action", required=True)
    p = ty.add_parser("enum", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, choices=[0, 1])
    p.set_defaults(func=cmd_ty_enum)
    p = ty.add_parser("center", parents=[common])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, choices=[0, 1])
    p.set_defaults(func=cmd_ty_center)

    mod = sub.add_parser("modular", help="premodular data files").add_subparsers(dest="action", required=True)
    p = mod.add_parser("check", parents=[common])
    p.add_argument("--in", dest="input", required=True, metavar="FILE")
    p.set_defaults(func=cmd_modular_check)

    p = sub.add_parser("product", parents=[common], help="Deligne products of Ising categories")
    p.add_argument("--factors", required=True, help="comma separated, e.g. I1,I7")
    p.add_argument("--integral", action="store_true", help="also recover the integral subcategory's braiding")
    p.set_defaults(func=cmd_product)

    cl = sub.add_parser("classify", help="classification tables").add_subparsers(dest="action", required=True)
    cl.add_parser("ising-products", parents=[common]).set_defaults(func=cmd_classify)

    cov = sub.add_parser("cover", help="minimal nondegenerate covers").add_subparsers(dest="action", required=True)
    p = cov.add_parser("chi20", parents=[common])
    p.add_argument("--alpha", default="i", help="i or -i")
    p.set_defaults(func=cmd_cover_chi20)
    p = cov.add_parser("chi-n1", parents=[common])
    p.add_argument("--n", type=int)
    p.add_argument("--spec", metavar="FILE", help="JSON braiding data (object or list)")
    p.set_defaults(func=cmd_cover_chi_n1)
    p = cov.add_parser("obstruct", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_cover_obstruct)

    p = sub.add_parser("extraspecial", parents=[common], help="extraspecial character rings")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_extraspecial)

    p = sub.add_parser("double", parents=[common], help="untwisted Drinfeld doubles")
    p.add_argument("--group", required=True)
    p.set_defaults(func=cmd_double)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("which", nargs="?", default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.parallel is None:
        env = os.environ.get("FUSCAT_PARALLEL")
        args.parallel = int(env) if env and env.isdigit() else 1
    try:
        res = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"fuscat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(res, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK if res.ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
