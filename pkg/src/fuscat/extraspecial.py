"""Character rings of extraspecial p-groups and untwisted doubles of small groups."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product

import numpy as np

from .cyclo import ONE, ZERO, Cyc, format_cyc, parse_cyc
from .fusion import (FusionRing, Subring, invertibles_group, is_isomorphic_ring, subring_generated,
                     universal_grading)
from .modular import (Premodular, check_modular_axioms, gauss_central_charge, s_from_balancing,
                      symmetric_center, tannakian_and_lagrangian)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


# ---------------------------------------------------------------------------
# character rings


@lru_cache(maxsize=None)
def extraspecial_ring(p: int, n: int) -> FusionRing:
    """Invertibles (Z/p)^2n plus p-1 objects x_a of dimension p^n, a in (Z/p)^x."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be positive")
    m = 2 * n
    elems = list(product(range(p), repeat=m))
    k = len(elems)
    r = k + p - 1
    pos = {g: i for i, g in enumerate(elems)}
    xs = {a: k + a - 1 for a in range(1, p)}
    N = np.zeros((r, r, r), dtype=np.int64)
    for g in elems:
        for h in elems:
            N[pos[g], pos[h], pos[tuple((u + v) % p for u, v in zip(g, h))]] = 1
        for a, xa in xs.items():
            N[pos[g], xa, xa] = N[xa, pos[g], xa] = 1
    big = p ** n
    for a, xa in xs.items():
        for b, xb in xs.items():
            s = (a + b) % p
            if s:
                N[xa, xb, xs[s]] = big
            else:
                N[xa, xb, :k] = 1
    labels = ["".join(map(str, g)) if any(g) else "e" for g in elems] + [f"x{a}" for a in range(1, p)]
    dual = [pos[tuple((-u) % p for u in g)] for g in elems] + [xs[(-a) % p] for a in range(1, p)]
    dims = [ONE] * k + [Cyc.rational(big)] * (p - 1)
    return FusionRing(labels, N, dual, 0, dims)


def is_extraspecial_charring(R: FusionRing) -> tuple[int, int] | None:
    inv = list(R.invertibles)
    others = [x for x in range(R.rank) if x not in inv]
    p = len(others) + 1
    if not others or not _is_prime(p):
        return None
    k = len(inv)
    n2, t = 0, k
    while t % p == 0:
        t //= p
        n2 += 1
    if t != 1 or n2 == 0 or n2 % 2:
        return None
    n = n2 // 2
    big = p ** n
    if any(R.fpdim[x] != big for x in others):
        return None
    grp = invertibles_group(R)
    if any(o != p for o in grp.group.invariants):
        return None
    for g in inv:
        for x in others:
            if R.fuse(g, x) != {x: 1}:
                return None
    # x_a x_b is p^n times one noninvertible, or the sum of all invertibles
    for x in others:
        for y in others:
            out = R.fuse(x, y)
            if out == {g: 1 for g in inv}:
                continue
            if len(out) != 1:
                return None
            (z, mult), = out.items()
            if z not in others or mult != big:
                return None
    # powers of one noninvertible run through all of them
    if p > 2:
        x0 = others[0]
        seen, cur = [x0], x0
        for _ in range(p - 2):
            cur = next(iter(R.fuse(cur, x0)))
            seen.append(cur)
        if sorted(seen) != sorted(others):
            return None
    return p, n


# ---------------------------------------------------------------------------
# dimension bookkeeping


@dataclass
class DimensionReport:
    p: int
    n: int
    checks: dict[str, bool]
    values: dict[str, int]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "ok": self.ok, "checks": self.checks, "values": self.values}


def dimension_checks(p: int, n: int) -> DimensionReport:
    R = extraspecial_ring(p, n)
    dimC = R.dim.to_fraction()
    pt = len(R.invertibles)
    cover = dimC * pt
    quotient = cover / (pt * pt)
    double = dimC * dimC
    checks = {
        "fpdim": dimC == p ** (2 * n + 1),
        "cover_dim": cover == p ** (4 * n + 1),
        "quotient": quotient == p,
        "double_over_ad": double / dimC == dimC,
    }
    nonunit = [x for x in range(R.rank) if x not in R.invertibles]
    checks["generates"] = all(subring_generated(R, [x]).rank == R.rank for x in nonunit)
    grading = universal_grading(R)
    checks["grading"] = grading.group.invariants == (p,)
    comps = grading.components()
    trivial = comps[grading.component_of[R.unit]]
    checks["pointed_is_adjoint"] = sorted(trivial) == sorted(R.invertibles)
    values = {"fpdim": int(dimC), "cover_dim": int(cover), "quotient": int(quotient),
              "double_dim": int(double), "grading_order": grading.group.order}
    return DimensionReport(p, n, checks, values)


# ---------------------------------------------------------------------------
# group catalog and doubles


@dataclass
class GroupPresentation:
    name: str
    elements: list[str]
    table: list[list[int]]
    classes: list[list[int]]
    characters: dict[int, list[dict[int, Cyc]]] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @property
    def identity(self) -> int:
        return next(i for i in range(self.order) if self.table[i] == list(range(self.order)))

    def inverse(self, a: int) -> int:
        e = self.identity
        return self.table[a].index(e)

    def conj(self, g: int, a: int) -> int:
        """g a g^-1"""
        return self.mul(self.mul(g, a), self.inverse(g))

    def centralizer(self, a: int) -> list[int]:
        return [g for g in range(self.order) if self.mul(g, a) == self.mul(a, g)]

    def validate(self) -> None:
        n = self.order
        e = self.identity
        for a in range(n):
            if sorted(self.table[a]) != list(range(n)):
                raise ValueError(f"{self.name}: row {a} is not a permutation")
            for b in range(n):
                for c in range(n):
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        raise ValueError(f"{self.name}: not associative")
        for cl in self.classes:
            a = cl[0]
            cent = self.centralizer(a)
            chars = self.characters[a]
            for i, u in enumerate(chars):
                for j, v in enumerate(chars):
                    ip = sum((u[h] * v[h].conj() for h in cent), ZERO) / len(cent)
                    if ip != (1 if i == j else 0):
                        raise ValueError(f"{self.name}: characters at {self.elements[a]} not orthonormal")
            if sum((ch[e] * ch[e] for ch in chars), ZERO) != len(cent):
                raise ValueError(f"{self.name}: characters at {self.elements[a]} are incomplete")
        if sorted(x for cl in self.classes for x in cl) != list(range(n)):
            raise ValueError(f"{self.name}: classes do not partition the group")


@lru_cache(maxsize=None)
def _catalog_raw() -> dict:
    text = resources.files("fuscat").joinpath("data/groups.json").read_text()
    return json.loads(text)


def catalog_names() -> list[str]:
    return list(_catalog_raw()["groups"])


@lru_cache(maxsize=None)
def load_group(name: str) -> GroupPresentation:
    groups = _catalog_raw()["groups"]
    if name not in groups:
        raise KeyError(f"group {name!r} not in catalog ({', '.join(groups)})")
    raw = groups[name]
    elems = raw["elements"]
    idx = {s: i for i, s in enumerate(elems)}
    classes = [[idx[s] for s in cl] for cl in raw["classes"]]
    chars = {idx[rep]: [{idx[h]: parse_cyc(v) for h, v in ch.items()} for ch in tab]
             for rep, tab in raw["characters"].items()}
    G = GroupPresentation(name, elems, raw["table"], classes, chars)
    G.validate()
    return G


def rep_ring(G: GroupPresentation) -> FusionRing:
    """Representation ring from the characters of the whole group."""
    e = G.identity
    chars = G.characters[next(cl[0] for cl in G.classes if e in cl)]
    r = len(chars)
    N = np.zeros((r, r, r), dtype=np.int64)
    for a in range(r):
        for b in range(r):
            for c in range(r):
                v = sum((chars[a][g] * chars[b][g] * chars[c][g].conj() for g in range(G.order)), ZERO) / G.order
                N[a, b, c] = int(v.to_fraction())
    dims = [ch[e] for ch in chars]
    return FusionRing([f"chi{i}" for i in range(r)], N, fpdim=dims)


def double_untwisted(G: GroupPresentation | str) -> Premodular:
    if isinstance(G, str):
        G = load_group(G)
    e = G.identity
    simples = []  # (class index, rep, character index)
    for ci, cl in enumerate(G.classes):
        a = cl[0]
        for k in range(len(G.characters[a])):
            simples.append((ci, a, k))
    r = len(simples)
    cents = {cl[0]: G.centralizer(cl[0]) for cl in G.classes}
    S = [[ZERO] * r for _ in range(r)]
    for i, (ci, a, k) in enumerate(simples):
        chi = G.characters[a][k]
        for j in range(i, r):
            cj, b, l = simples[j]
            psi = G.characters[b][l]
            total = ZERO
            for g in range(G.order):
                gbg = G.conj(g, b)
                if G.mul(a, gbg) != G.mul(gbg, a):
                    continue
                gag = G.conj(G.inverse(g), a)
                total = total + chi[gbg] * psi[gag]
            S[i][j] = S[j][i] = total * G.order / (len(cents[a]) * len(cents[b]))
    dims = [S[0][j] for j in range(r)]
    theta = [G.characters[a][k][a] / G.characters[a][k][e] for (_, a, k) in simples]
    # fusion rules by Verlinde
    dim = G.order * G.order
    inv_d = [d.inverse() for d in dims]
    N = np.zeros((r, r, r), dtype=np.int64)
    for x in range(r):
        for y in range(x, r):
            for z in range(r):
                v = sum((S[x][w] * S[y][w] * S[z][w].conj() * inv_d[w] for w in range(r)), ZERO) / dim
                f = v.to_fraction()
                if f.denominator != 1 or f < 0:
                    raise ValueError(f"{G.name}: non-integral Verlinde coefficient")
                N[x, y, z] = N[y, x, z] = int(f)
    labels = [f"({G.elements[a]},{k})" for (_, a, k) in simples]
    ring = FusionRing(labels, N, fpdim=dims)
    return Premodular(ring, theta, S, name=f"Z(Vec_{G.name})")


def double_report(G: GroupPresentation | str) -> dict:
    P = double_untwisted(G)
    rep = check_modular_axioms(P)
    gauss = gauss_central_charge(P)
    return {
        "name": P.name,
        "rank": P.rank,
        "dim": format_cyc(P.dim),
        "modular": rep.to_json(),
        "balancing": s_from_balancing(P.ring, P.theta) == P.S,
        "xi": format_cyc(gauss.xi) if gauss.xi is not None else None,
        "labels": list(P.labels),
        "dims": [format_cyc(d) for d in P.dims],
        "theta": [format_cyc(t) for t in P.theta],
    }


# ---------------------------------------------------------------------------
# subcategories of doubles


def _find(P: Premodular, G: GroupPresentation, order: int, value: Cyc) -> list[int]:
    """Simples (a, chi) with a of the given order, chi linear and chi(a) = value."""
    out = []
    e = G.identity
    for x, label in enumerate(P.labels):
        rep, k = label[1:-1].rsplit(",", 1)
        a = G.elements.index(rep)
        cur, o = a, 1
        while cur != e:
            cur = G.mul(cur, a)
            o += 1
        ch = G.characters[a][int(k)]
        if o == order and ch[e] == 1 and ch[a] == value:
            out.append(x)
    return out


@dataclass
class SeedReport:
    group: str
    seed: str
    rank: int
    dims: list[str]
    rep_fusion: bool
    center_rank: int
    center_dim: str
    tannakian: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def seed_report(P: Premodular, G: GroupPresentation, seed: int) -> SeedReport:
    sub = subring_generated(P.ring, [seed])
    Q = P.restrict(sub)
    center = symmetric_center(Q)
    Rg = rep_ring(G)
    rep_ok = Q.rank == Rg.rank and is_isomorphic_ring(Q.ring, Rg) is not None
    cent_sub = Subring(Q.ring, center.indices)
    tann = tannakian_and_lagrangian(Q, cent_sub).is_tannakian_candidate
    return SeedReport(G.name, P.labels[seed], Q.rank, [format_cyc(d) for d in Q.dims], rep_ok,
                      center.rank, format_cyc(center.dim), tann)


def seed_verifications() -> dict:
    from .cyclo import root_of_unity

    out: dict = {}
    S3 = load_group("S3")
    P = double_untwisted(S3)
    w = root_of_unity(3)
    seeds = _find(P, S3, 3, w) + _find(P, S3, 3, w * w)
    out["S3"] = [seed_report(P, S3, s).to_json() for s in seeds]
    out["S3_trivial"] = subring_generated(P.ring, [P.ring.unit]).rank
    A4 = load_group("A4")
    PA = double_untwisted(A4)
    seeds = _find(PA, A4, 2, -ONE)
    out["A4"] = [seed_report(PA, A4, s).to_json() for s in seeds]
    out["ok"] = (all(r["rank"] == 3 and r["rep_fusion"] and r["center_dim"] == "2" and r["tannakian"]
                     for r in out["S3"]) and len(out["S3"]) == 2 and out["S3_trivial"] == 1
                 and bool(out["A4"]) and all(r["rank"] == 4 and r["dims"] == ["1", "1", "1", "3"] and r["rep_fusion"]
                                             and r["center_rank"] == 3 and r["tannakian"] for r in out["A4"]))
    return out
