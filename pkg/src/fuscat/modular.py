"""Premodular data: twists, S-matrices from balancing, modular checks, invariants."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .cyclo import SQRT2, ZERO, Cyc, CycArray, as_cyc, root_order, sqrt_rational
from .fusion import FusionRing, Subring


class ModularError(ValueError):
    pass


def s_from_balancing(ring: FusionRing, theta: Sequence[Cyc]) -> list[list[Cyc]]:
    """S_{x,y} = theta_x^-1 theta_y^-1 sum_z N_{x,y}^z theta_z d_z."""
    d = ring.fpdim
    inv = [t.inverse() for t in theta]
    weight = [t * dz for t, dz in zip(theta, d)]
    r = ring.rank
    S = [[ZERO] * r for _ in range(r)]
    for x in range(r):
        for y in range(x, r):
            total = ZERO
            for z, m in ring.fuse(x, y).items():
                total = total + m * weight[z]
            S[x][y] = S[y][x] = inv[x] * inv[y] * total
    return S


class Premodular:
    """Fusion ring with twists; S is derived by balancing unless supplied.

    ``parent`` and ``embedding`` record where a restricted copy came from.
    """

    def __init__(self, ring: FusionRing, theta: Sequence, S=None, parent: "Premodular | None" = None,
                 embedding: Sequence[int] | None = None, name: str = ""):
        self.ring = ring
        self.theta = tuple(as_cyc(t) for t in theta)
        if len(self.theta) != ring.rank:
            raise ModularError("one twist per simple object is required")
        if self.theta[ring.unit] != 1:
            raise ModularError("the unit must have trivial twist")
        for x in range(ring.rank):
            if self.theta[ring.dual[x]] != self.theta[x]:
                raise ModularError(f"twist of {ring.labels[x]} differs from its dual")
        self._S = [[as_cyc(v) for v in row] for row in S] if S is not None else None
        self.parent = parent
        self.embedding = tuple(embedding) if embedding is not None else None
        self.name = name

    def __repr__(self):
        return f"Premodular({self.name or 'rank ' + str(self.rank)})"

    @property
    def rank(self) -> int:
        return self.ring.rank

    @property
    def labels(self) -> tuple[str, ...]:
        return self.ring.labels

    @property
    def dims(self) -> tuple[Cyc, ...]:
        return self.ring.fpdim

    @property
    def dim(self) -> Cyc:
        return self.ring.dim

    @property
    def S(self) -> list[list[Cyc]]:
        if self._S is None:
            self._S = s_from_balancing(self.ring, self.theta)
        return self._S

    @cached_property
    def S_array(self) -> CycArray:
        return CycArray.from_cyc(self.S)

    def restrict(self, sub: Subring | Sequence[int], name: str = "") -> "Premodular":
        idx = sub.indices if isinstance(sub, Subring) else tuple(sorted(sub))
        ring = self.ring.restrict(idx)
        S = [[self.S[i][j] for j in idx] for i in idx]
        return Premodular(ring, [self.theta[i] for i in idx], S, parent=self, embedding=idx, name=name)

    def to_json(self) -> dict:
        out = self.ring.to_json()
        out["theta"] = [t.to_json() for t in self.theta]
        out["S"] = [[v.to_json() for v in row] for row in self.S]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Premodular":
        ring = FusionRing.from_json(obj)
        S = obj.get("S")
        return cls(ring, [as_cyc(t) for t in obj["theta"]],
                   [[as_cyc(v) for v in row] for row in S] if S else None)


def load_premodular(path: str) -> Premodular:
    with open(path) as fh:
        return Premodular.from_json(json.load(fh))


# ---------------------------------------------------------------------------
# axioms


@dataclass
class ModularReport:
    checks: dict[str, bool] = field(default_factory=dict)
    counterexamples: dict[str, list] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "counterexamples": self.counterexamples}


def check_modular_axioms(P: Premodular) -> ModularReport:
    rep = ModularReport()
    r = P.rank
    S = P.S_array
    d = P.dims

    sym = S.equals(S.T)
    rep.checks["symmetric"] = bool(sym.all())
    dims_ok = all(P.S[P.ring.unit][x] == d[x] for x in range(r))
    rep.checks["dims_match"] = dims_ok
    if not dims_ok:
        rep.counterexamples["dims_match"] = [next(x for x in range(r) if P.S[P.ring.unit][x] != d[x])]

    gram = S @ S.conj().T
    target = CycArray.from_cyc([[P.dim if i == j else ZERO for j in range(r)] for i in range(r)])
    eq = gram.equals(target)
    rep.checks["unitary"] = bool(eq.all())
    if not eq.all():
        bad = np.argwhere(~eq)[0]
        rep.counterexamples["unitary"] = [int(bad[0]), int(bad[1])]

    # Verlinde: dim * N_{x,y}^z = sum_w S_xw S_yw conj(S_zw) / d_w
    if rep.checks["unitary"]:
        inv_d = CycArray.from_cyc([[dw.inverse() for dw in d]])
        right = S.conj().T  # [w, z]
        ok, where = True, None
        dimval = P.dim
        for x in range(r):
            row_x = CycArray(S.n, S.num[x:x + 1], S.den)
            scaled = (S * row_x) * inv_d  # [y, w] = S_yw S_xw / d_w
            vals = scaled @ right  # [y, z] = dim * N
            ints, values = (vals * CycArray.from_cyc([[dimval.inverse()]])).is_rational_integer()
            expected = P.ring.N[x]
            good = ints & (values == expected)
            if not good.all():
                bad = np.argwhere(~good)[0]
                ok, where = False, [x, int(bad[0]), int(bad[1])]
                break
        rep.checks["verlinde_integral"] = ok
        if where:
            rep.counterexamples["verlinde_integral"] = where
    else:
        rep.checks["verlinde_integral"] = False
        rep.counterexamples["verlinde_integral"] = ["skipped: S not unitary"]
    return rep


# ---------------------------------------------------------------------------
# centralizers


def muger_centralizes(P: Premodular, x: int, y: int) -> bool:
    return P.S[x][y] == P.dims[x] * P.dims[y]


def centralizer(P: Premodular, sub: Subring | Sequence[int]) -> Subring:
    idx = sub.indices if isinstance(sub, Subring) else tuple(sub)
    keep = tuple(x for x in range(P.rank) if all(muger_centralizes(P, x, s) for s in idx))
    return Subring(P.ring, keep)


def symmetric_center(P: Premodular) -> Subring:
    return centralizer(P, range(P.rank))


def is_nondegenerate(P: Premodular) -> bool:
    return symmetric_center(P).rank == 1


def dimension_identity(P: Premodular, sub: Subring) -> bool:
    """FPdim(sub) FPdim(C(sub)) = FPdim(P) FPdim(sub meet center)."""
    cent = centralizer(P, sub)
    center = symmetric_center(P)
    return sub.dim * cent.dim == P.dim * (sub & center).dim


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class GaussData:
    tau_plus: Cyc
    tau_minus: Cyc
    xi: Cyc | None


def sqrt_dim(value: Cyc) -> Cyc:
    if not value.is_rational():
        raise ModularError("square root of an irrational dimension is not supported")
    return sqrt_rational(value.to_fraction())


def gauss_central_charge(P: Premodular) -> GaussData:
    d = P.dims
    tp = sum((dx * dx * t for dx, t in zip(d, P.theta)), ZERO)
    tm = sum((dx * dx * t.inverse() for dx, t in zip(d, P.theta)), ZERO)
    xi = None
    if tp * tp.conj() == P.dim:
        xi = tp / sqrt_dim(P.dim)
    return GaussData(tp, tm, xi)


def conductor(P: Premodular) -> int:
    out = 1
    for t in P.theta:
        o = root_order(t)
        if o is None:
            raise ModularError("twist is not a root of unity")
        out = out * o // math.gcd(out, o)
    return out


def fs_indicator(P: Premodular, k: int) -> Cyc:
    """Second Frobenius-Schur indicator, valid for nondegenerate data."""
    d, th = P.dims, P.theta
    total = ZERO
    N = P.ring.N
    for i in range(P.rank):
        for j in np.nonzero(N[i, :, k])[0]:
            j = int(j)
            ratio = th[i] / th[j]
            total = total + int(N[i, j, k]) * d[i] * d[j] * ratio * ratio
    return total / P.dim


# ---------------------------------------------------------------------------
# isomorphism of modular data


def _keyed(values, table: dict) -> list:
    out = []
    for v in values:
        k = v.key()
        if k not in table:
            table[k] = len(table)
        out.append(table[k])
    return out


def data_isomorphic(P1: Premodular, P2: Premodular, fixed: Sequence[int] | None = None) -> dict | None:
    """Label bijection matching units, duals, d, theta, S and N; ``fixed`` objects map to themselves."""
    if P1.rank != P2.rank:
        return None
    r = P1.rank
    table: dict = {}
    S1 = [_keyed(row, table) for row in P1.S]
    S2 = [_keyed(row, table) for row in P2.S]
    d1, d2 = _keyed(P1.dims, table), _keyed(P2.dims, table)
    t1, t2 = _keyed(P1.theta, table), _keyed(P2.theta, table)
    f1 = [(d1[x], t1[x], tuple(sorted(S1[x]))) for x in range(r)]
    f2 = [(d2[x], t2[x], tuple(sorted(S2[x]))) for x in range(r)]
    if sorted(f1) != sorted(f2):
        return None
    N1, N2 = P1.ring.N, P2.ring.N
    pinned = {P1.ring.unit: P2.ring.unit}
    for x in fixed or ():
        pinned[x] = x
    cands = {x: [pinned[x]] if x in pinned else [y for y in range(r) if f2[y] == f1[x]] for x in range(r)}
    order = sorted(range(r), key=lambda x: (x not in pinned, len(cands[x]), x))
    assign: dict[int, int] = {}
    used: set[int] = set()

    def ok(x, y):
        if f1[x] != f2[y]:
            return False
        for a, b in assign.items():
            if S1[x][a] != S2[y][b]:
                return False
        dx = P1.ring.dual[x]
        if dx in assign and assign[dx] != P2.ring.dual[y]:
            return False
        if dx == x and P2.ring.dual[y] != y:
            return False
        return True

    def search(i):
        if i == r:
            return True
        x = order[i]
        for y in cands[x]:
            if y in used or not ok(x, y):
                continue
            assign[x] = y
            used.add(y)
            if search(i + 1):
                return True
            del assign[x]
            used.discard(y)
        return False

    if not search(0):
        return None
    perm = [assign[x] for x in range(r)]
    if not np.array_equal(N1, N2[np.ix_(perm, perm, perm)]):
        return None
    return dict(assign)


# ---------------------------------------------------------------------------
# Tannakian bookkeeping


@dataclass(frozen=True)
class TannakianReport:
    is_tannakian_candidate: bool
    is_lagrangian: bool


def tannakian_and_lagrangian(P: Premodular, sub: Subring) -> TannakianReport:
    trivial_twists = all(P.theta[x] == 1 for x in sub.indices)
    isotropic = set(sub.indices) <= set(centralizer(P, sub).indices)
    cand = trivial_twists and isotropic
    return TannakianReport(cand, cand and sub.dim * sub.dim == P.dim)


@dataclass(frozen=True)
class CondensationDims:
    quotient_dim: Cyc
    free_module_dims: dict


def condensation_dims(P: Premodular, sub: Subring) -> CondensationDims:
    if not tannakian_and_lagrangian(P, sub).is_tannakian_candidate:
        raise ModularError("condensation needs a Tannakian candidate subring")
    quotient = P.dim / (sub.dim * sub.dim)
    cent = centralizer(P, sub)
    free = {P.labels[x]: sub.dim * P.dims[x] for x in cent.indices}
    return CondensationDims(quotient, free)


def rational_divisibility_check(dims: Sequence) -> bool:
    """Does the dimension of the rational part divide the total, as algebraic integers?"""
    dims = [as_cyc(d) for d in dims]
    total = sum((d * d for d in dims), ZERO)
    rational = sum((d * d for d in dims if d.is_rational()), ZERO)
    q = total / rational
    if q.is_rational():
        return q.to_fraction().denominator == 1
    # element of Q(sqrt2): a + b sqrt2 is integral iff a, b are integers
    q = q.canonical()
    conj_q = q.galois(3) if q.conductor == 8 else q
    a = (q + conj_q) / 2
    b = (q - conj_q) / (2 * SQRT2)
    if not (a.is_rational() and b.is_rational()):
        raise ModularError("dimension quotient outside Q(sqrt2)")
    return a.to_fraction().denominator == 1 and b.to_fraction().denominator == 1
