"""Deligne products, Ising products and recovery of Tambara-Yamagami braiding data."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Sequence

import numpy as np

from .cyclo import ONE, Cyc, root_exponent, root_of_unity
from .fusion import FusionRing, subring_generated
from .modular import (Premodular, data_isomorphic, fs_indicator, gauss_central_charge, is_nondegenerate,
                      muger_centralizes, s_from_balancing)
from .tambara import (BraidingData, BraidingError, _form_from_basis, all_braidings, bicharacter,
                      braiding_equivalent, i_exponent, i_power, inv_sqrt_pow2, ising, to_premodular)


def trivial_premodular() -> Premodular:
    ring = FusionRing(["1"], np.ones((1, 1, 1), dtype=np.int64), [0], 0, [ONE])
    return Premodular(ring, [ONE], name="Vec")


def _join(a: str, b: str) -> str:
    if a == "1" and b == "1":
        return "1"
    return f"{a}*{b}"


def deligne_product(P1: Premodular, P2: Premodular, verify: bool = True) -> Premodular:
    r1, r2 = P1.rank, P2.rank
    r = r1 * r2
    N = np.einsum("ace,bdf->abcdef", P1.ring.N, P2.ring.N).reshape(r, r, r)
    labels = [_join(a, b) for a in P1.labels for b in P2.labels]
    dual = [P1.ring.dual[a] * r2 + P2.ring.dual[b] for a in range(r1) for b in range(r2)]
    dims = [da * db for da in P1.dims for db in P2.dims]
    ring = FusionRing(labels, N, dual, P1.ring.unit * r2 + P2.ring.unit, dims)
    theta = [ta * tb for ta in P1.theta for tb in P2.theta]
    S = [[P1.S[a][c] * P2.S[b][d] for c in range(r1) for d in range(r2)] for a in range(r1) for b in range(r2)]
    name = "x".join(filter(None, [P1.name, P2.name]))
    P = Premodular(ring, theta, S, name=name)
    if verify and s_from_balancing(ring, theta) != S:
        raise ValueError("Kronecker S disagrees with the balancing equation")
    return P


def ising_premodular(j: int) -> Premodular:
    return to_premodular(ising(j))


@lru_cache(maxsize=None)
def ising_product(indices: tuple[int, ...]) -> Premodular:
    Ps = [ising_premodular(k) for k in indices]
    P = reduce(deligne_product, Ps[1:], Ps[0])
    P.name = "x".join(f"I{k % 16}" for k in indices)
    return P


def _max_dim_object(P: Premodular) -> int:
    approx = [d.approx().real for d in P.dims]
    top = max(approx)
    best = [x for x in range(P.rank) if abs(approx[x] - top) < 1e-9]
    exact = [x for x in best if P.dims[x] == P.dims[best[0]]]
    if len(exact) != 1:
        raise ValueError("the maximal dimension is attained by more than one simple object")
    return exact[0]


def generated_by_max_dim(P: Premodular) -> Premodular:
    x = _max_dim_object(P)
    return P.restrict(subring_generated(P.ring, [x]), name=f"<{P.labels[x]}>")


def integral_subcat(P: Premodular) -> Premodular:
    idx = [x for x in range(P.rank) if P.dims[x].is_rational()]
    sub = subring_generated(P.ring, idx)
    if sorted(sub.indices) != idx:
        raise ValueError("rational-dimension objects do not form a subring")
    return P.restrict(sub, name=f"({P.name})_Q" if P.name else "")


# ---------------------------------------------------------------------------
# recovery of braiding data


@dataclass
class Extraction:
    braiding: BraidingData
    basis: tuple[int, ...]          # sub indices of g_1..g_n
    coords: dict[int, int]          # sub index of an invertible -> E_n bit mask
    factors: tuple[int, ...] = ()   # ambient indices of the sqrt2-dimensional generators
    factor_data: list[dict] = field(default_factory=list)
    method: str = "ising-factors"


def _ty_shape(P: Premodular) -> tuple[int, list[int], int]:
    R = P.ring
    inv = list(R.invertibles)
    others = [x for x in range(R.rank) if x not in inv]
    size = len(inv)
    n = size.bit_length() - 1
    if size != 1 << n or n < 1 or len(others) != 1:
        raise BraidingError("not a Tambara-Yamagami fusion ring")
    x = others[0]
    if R.fuse(x, x) != {g: 1 for g in inv}:
        raise BraidingError("x (x) x is not the sum of all invertibles")
    for g in inv:
        if R.fuse(g, x) != {x: 1} or R.fuse(g, g) != {R.unit: 1}:
            raise BraidingError("invertibles do not form E_n acting trivially on x")
    return n, inv, x


def _root(P: Premodular) -> tuple[Premodular, list[int]]:
    """Outermost ancestor and the composed embedding of P's objects."""
    idx = list(range(P.rank))
    while P.parent is not None:
        idx = [P.embedding[i] for i in idx]
        P = P.parent
    return P, idx


def ising_parameters(I: Premodular, y: int) -> dict:
    """(tau, alpha, q(g)) of a rank-3 modular Ising piece generated by y."""
    nu = fs_indicator(I, y)
    if nu not in (1, -1):
        raise BraidingError("Frobenius-Schur indicator of an Ising object must be +-1")
    sign = 1 if nu == 1 else -1
    tau = sign * inv_sqrt_pow2(1)
    alpha = sign * I.theta[y].conj()
    q = alpha * alpha / tau - 1
    return {"tau": tau, "alpha": alpha, "q": q, "nu": nu}


def extract_ty_braiding(sub: Premodular) -> Extraction:
    n, inv, x = _ty_shape(sub)
    ambient, emb = _root(sub)
    if ambient is not sub and is_nondegenerate(ambient):
        try:
            return _extract_from_factors(sub, ambient, emb, n, inv, x)
        except BraidingError:
            pass
    return _extract_by_search(sub, n, inv, x)


def _extract_from_factors(sub, ambient, emb, n, inv, x) -> Extraction:
    R = ambient.ring
    back = {a: i for i, a in enumerate(emb)}
    chosen: list[int] = []
    gens: list[int] = []  # sub indices
    span = {sub.ring.unit}
    for y in range(R.rank):
        if R.fpdim[y] * R.fpdim[y] != 2:
            continue
        sq = R.fuse(y, y)
        gs = [g for g in sq if g != R.unit]
        if len(gs) != 1 or gs[0] not in back or back[gs[0]] not in inv:
            continue
        g = back[gs[0]]
        if g in span or not all(muger_centralizes(ambient, y, c) for c in chosen):
            continue
        chosen.append(y)
        gens.append(g)
        span = span | {next(iter(sub.ring.fuse(s, g))) for s in span}
        if len(chosen) == n:
            break
    if len(chosen) != n:
        raise BraidingError("no commuting Ising factors cover the invertibles")
    # leftmost Deligne factor first: its generator has the largest ambient index
    order = sorted(range(n), key=lambda j: -emb[gens[j]])
    chosen = [chosen[j] for j in order]
    gens = [gens[j] for j in order]

    coords = _coords(sub, gens)
    factor_data = []
    for y in chosen:
        I = ambient.restrict(subring_generated(R, [y]))
        if I.rank != 3 or not is_nondegenerate(I):
            raise BraidingError("sqrt2 object does not generate a modular Ising piece")
        factor_data.append(ising_parameters(I, I.embedding.index(y)))
    tau = reduce(lambda a, b: a * b, (f["tau"] for f in factor_data))
    basis_q = [i_exponent(f["q"]) for f in factor_data]
    chi = bicharacter(n, 1)
    q_exp = _form_from_basis(chi, basis_q)
    for obj, mask in coords.items():
        if sub.theta[obj] != i_power(2 * q_exp[mask]):
            raise BraidingError("recovered q does not square to the twists")
    sign = 1 if tau.approx().real > 0 else -1
    alpha = sign * sub.theta[x].conj()
    b = BraidingData(chi, tau, tuple(q_exp), alpha, name=sub.name)
    return Extraction(b, tuple(gens), coords, tuple(chosen), factor_data)


def _coords(sub: Premodular, gens: Sequence[int]) -> dict[int, int]:
    coords = {}
    for mask in range(1 << len(gens)):
        obj = sub.ring.unit
        for j, g in enumerate(gens):
            if mask >> j & 1:
                obj = next(iter(sub.ring.fuse(obj, g)))
        coords[obj] = mask
    return coords


def _extract_by_search(sub: Premodular, n: int, inv, x) -> Extraction:
    """Match against every braiding on TY(E_n); succeed only if the answer is unique up to equivalence."""
    hits = []
    for k in ((0, 1) if n % 2 == 0 else (1,)):
        for b in all_braidings(n, k):
            w = data_isomorphic(to_premodular(b), sub)
            if w is not None:
                hits.append((b, w))
    reps: list = []
    for b, w in hits:
        if not any(braiding_equivalent(r, b) is not None for r, _ in reps):
            reps.append((b, w))
    if len(reps) != 1:
        raise BraidingError(f"premodular data matches {len(reps)} inequivalent braidings")
    b, w = reps[0]
    coords = {w[g]: g for g in range(1 << n)}
    basis = tuple(w[1 << j] for j in range(n))
    return Extraction(b, basis, coords, method="search")


def recover_ty_braiding(sub: Premodular) -> BraidingData:
    return extract_ty_braiding(sub).braiding


# ---------------------------------------------------------------------------
# Ising factorization


@dataclass
class FactorizationReport:
    indices: tuple[int, ...]
    recovered: BraidingData
    expected: BraidingData
    tau_ok: bool
    alpha_ok: bool
    q_ok: bool
    witness: tuple[int, ...] | None

    @property
    def ok(self) -> bool:
        return self.tau_ok and self.alpha_ok and self.q_ok and self.witness is not None

    def to_json(self) -> dict:
        return {"indices": list(self.indices), "ok": self.ok, "tau": self.tau_ok, "alpha": self.alpha_ok,
                "q": self.q_ok, "witness": list(self.witness) if self.witness else None,
                "recovered": self.recovered.to_json()}


def _generator_object(indices: Sequence[int], j: int) -> int:
    """Flat index, in the Ising product, of g placed in factor j."""
    flat = 0
    for pos in range(len(indices)):
        flat = flat * 3 + (1 if pos == j else 0)
    return flat


def verify_ising_factorization(indices: Sequence[int]) -> FactorizationReport:
    indices = tuple(k % 16 for k in indices)
    n = len(indices)
    P = ising_product(indices)
    sub = generated_by_max_dim(P)
    ext = extract_ty_braiding(sub)
    rec = ext.braiding
    parts = [ising(k) for k in indices]
    tau = reduce(lambda a, b: a * b, (p.tau for p in parts))
    alpha = reduce(lambda a, b: a * b, (p.alpha for p in parts))
    basis_q = [p.q_exp[1] for p in parts]
    chi = bicharacter(n, 1)
    expected = BraidingData(chi, tau, _form_from_basis(chi, basis_q), alpha, name="x".join(f"I{k}" for k in indices))
    q_ok = True
    for j, p in enumerate(parts):
        obj = sub.embedding.index(_generator_object(indices, j))
        q_ok &= rec.q_exp[ext.coords[obj]] == p.q_exp[1]
    return FactorizationReport(indices, rec, expected, rec.tau == tau, rec.alpha == alpha, q_ok,
                               braiding_equivalent(rec, expected))


# ---------------------------------------------------------------------------
# classification of products of two Ising categories


ODD = tuple(range(1, 16, 2))


@dataclass
class XiRow:
    xi_exponent: int                    # xi = zeta8^k
    pairs: list[tuple[int, int]]
    product_classes: list[list[tuple[int, int]]]
    integral_classes: list[list[tuple[int, int]]]

    @property
    def xi(self) -> Cyc:
        return root_of_unity(8, self.xi_exponent)


@dataclass
class IsingProductReport:
    rows: list[XiRow]

    @property
    def product_class_count(self) -> int:
        return sum(len(r.product_classes) for r in self.rows)

    @property
    def integral_class_count(self) -> int:
        return sum(len(r.integral_classes) for r in self.rows)


def classify_ising_products() -> IsingProductReport:
    pairs = [(j, k) for j in ODD for k in ODD if j <= k]
    by_xi: dict[int, list] = {}
    for pair in pairs:
        xi = gauss_central_charge(ising_product(pair)).xi
        by_xi.setdefault(root_exponent(xi, 8), []).append(pair)
    recovered = {pair: recover_ty_braiding(integral_subcat(ising_product(pair))) for pair in pairs}
    rows = []
    for k in sorted(by_xi):
        members = by_xi[k]
        prod_classes: list[list] = []
        for pair in members:
            for cls in prod_classes:
                if data_isomorphic(ising_product(cls[0]), ising_product(pair)) is not None:
                    cls.append(pair)
                    break
            else:
                prod_classes.append([pair])
        int_classes: list[list] = []
        for pair in members:
            for cls in int_classes:
                if braiding_equivalent(recovered[cls[0]], recovered[pair]) is not None:
                    cls.append(pair)
                    break
            else:
                int_classes.append([pair])
        rows.append(XiRow(k, members, prod_classes, int_classes))
    return IsingProductReport(rows)


ISING_PRODUCT_TABLE = {
    0: ("(1,15),(3,13),(5,11),(7,9)", "(1,15),(3,13)", "(1,15)"),
    1: ("(1,5),(3,11),(7,7),(9,13),(15,15)", "(1,5),(3,11),(7,7)", "(1,5),(7,7)"),
    2: ("(1,3),(5,15),(7,13),(9,11)", "(1,3),(5,15)", "(1,3)"),
    3: ("(1,9),(3,15),(5,5),(7,11),(13,13)", "(1,9),(3,15),(5,5)", "(1,9),(5,5)"),
    4: ("(1,7),(3,5),(9,15),(11,13)", "(1,7),(3,5)", "(1,7)"),
    5: ("(1,13),(3,3),(5,9),(7,15),(11,11)", "(1,13),(3,3),(7,15)", "(1,13),(3,3)"),
    6: ("(1,11),(3,9),(5,7),(13,15)", "(1,11),(5,7)", "(1,11)"),
    7: ("(1,1),(3,7),(5,13),(9,9),(11,15)", "(1,1),(3,7),(5,13)", "(1,1),(3,7)"),
}
"""xi exponent k (xi = zeta8^k) -> published (pairs, product classes, integral classes)."""


def parse_pairs(text: str) -> list[tuple[int, int]]:
    return [tuple(int(v) for v in chunk.strip("()").split(",")) for chunk in text.replace("),(", ")|(").split("|")]


# ---------------------------------------------------------------------------
# covers of chi^1 braidings by Ising products


@dataclass
class CoverConstruction:
    target: BraidingData
    indices: tuple[int, ...]
    report: FactorizationReport
    equivalent: tuple[int, ...] | None

    @property
    def ok(self) -> bool:
        return self.report.ok and self.equivalent is not None

    def tau_factors(self) -> list[Cyc]:
        return [ising(k).tau for k in self.indices]

    def to_json(self) -> dict:
        return {"target": self.target.to_json(), "indices": list(self.indices), "ok": self.ok,
                "tau_factors": [str(t) for t in self.tau_factors()],
                "witness": list(self.equivalent) if self.equivalent else None,
                "factorization": self.report.to_json(),
                "note": "last factor chosen so that the product of the tau_j equals tau"}


def ising_index(tau_sign: int, q_exp: int, alpha: Cyc | None = None) -> list[int]:
    out = []
    for j in ODD:
        b = ising(j)
        if b.tau_sign == tau_sign and b.q_exp[1] == q_exp and (alpha is None or b.alpha == alpha):
            out.append(j)
    return out


def build_cover_chi_n1(b: BraidingData) -> CoverConstruction:
    if b.k != 1:
        raise BraidingError("Ising product covers need chi^1 data")
    n = b.n
    signs = [1] * (n - 1) + [b.tau_sign]
    indices = [ising_index(s, b.q_exp[1 << j])[0] for j, s in enumerate(signs)]
    alpha = reduce(lambda u, v: u * v, (ising(k).alpha for k in indices))
    if alpha != b.alpha:
        indices[0] = (indices[0] + 8) % 16
    report = verify_ising_factorization(indices)
    return CoverConstruction(b, tuple(indices), report, braiding_equivalent(report.recovered, b))
