"""Fusion rings: structure constants, FP-dimensions, gradings and subrings."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .cyclo import ONE, SQRT2, Cyc, as_cyc


class FusionError(ValueError):
    pass


class FusionRing:
    """A commutative fusion ring with structure constants ``N[x, y, z]``."""

    def __init__(self, labels: Sequence[str], N, dual: Sequence[int] | None = None,
                 unit: int = 0, fpdim: Sequence[Cyc] | None = None):
        self.labels = tuple(str(s) for s in labels)
        arr = np.array(N, dtype=np.int64)
        r = len(self.labels)
        if arr.shape != (r, r, r):
            raise FusionError(f"N must have shape {(r, r, r)}, got {arr.shape}")
        if (arr < 0).any():
            raise FusionError("fusion coefficients must be nonnegative")
        arr.setflags(write=False)
        self.N = arr
        self.unit = unit
        if dual is None:
            dual = [int(np.nonzero(arr[x, :, unit])[0][0]) if arr[x, :, unit].any() else x for x in range(r)]
        self.dual = tuple(int(d) for d in dual)
        self._fpdim = tuple(as_cyc(d) for d in fpdim) if fpdim is not None else None

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __repr__(self):
        return f"FusionRing(rank={self.rank}, labels={list(self.labels)})"

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def fuse(self, x: int, y: int) -> dict[int, int]:
        """x (x) y as {z: multiplicity}."""
        zs = np.nonzero(self.N[x, y])[0]
        return {int(z): int(self.N[x, y, z]) for z in zs}

    @property
    def fpdim(self) -> tuple[Cyc, ...]:
        if self._fpdim is None:
            self._fpdim = tuple(fp_dims(self))
        return self._fpdim

    @cached_property
    def dim(self) -> Cyc:
        """FPdim of the ring: sum of squared dimensions."""
        return sum((d * d for d in self.fpdim), Cyc.rational(0))

    @cached_property
    def invertibles(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.rank) if self.N[x, self.dual[x], self.unit] == 1
                     and int(self.N[x, self.dual[x]].sum()) == 1)

    def restrict(self, indices: Sequence[int]) -> "FusionRing":
        idx = list(indices)
        pos = {x: i for i, x in enumerate(idx)}
        sub = self.N[np.ix_(idx, idx, idx)]
        if int(sub.sum()) != int(self.N[np.ix_(idx, idx)].sum()):
            raise FusionError("index set is not closed under fusion")
        return FusionRing([self.labels[i] for i in idx], sub, [pos[self.dual[i]] for i in idx],
                          pos[self.unit], [self.fpdim[i] for i in idx])

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        entries = [[int(x), int(y), int(z), int(self.N[x, y, z])] for x, y, z in zip(*np.nonzero(self.N))]
        return {"labels": list(self.labels), "unit": self.unit, "dual": list(self.dual), "N": entries,
                "fpdim": [d.to_json() for d in self.fpdim]}

    @classmethod
    def from_json(cls, obj: dict) -> "FusionRing":
        r = len(obj["labels"])
        N = np.zeros((r, r, r), dtype=np.int64)
        for x, y, z, n in obj["N"]:
            N[x, y, z] = n
        fp = [as_cyc(d) for d in obj["fpdim"]] if obj.get("fpdim") else None
        return cls(obj["labels"], N, obj.get("dual"), obj.get("unit", 0), fp)


def pointed_ring(elements: Sequence[Hashable], mul: Callable, labels: Sequence[str] | None = None,
                 identity=None) -> FusionRing:
    """Group ring of a finite group given by an element list and product."""
    elems = list(elements)
    pos = {e: i for i, e in enumerate(elems)}
    r = len(elems)
    N = np.zeros((r, r, r), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            N[i, j, pos[mul(a, b)]] = 1
    unit = pos[identity] if identity is not None else 0
    labels = labels or [str(e) for e in elems]
    return FusionRing(labels, N, unit=unit, fpdim=[ONE] * r)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    checks: dict[str, bool] = field(default_factory=dict)
    counterexamples: dict[str, tuple] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, ok: bool, where: tuple | None = None) -> None:
        self.checks[name] = ok
        if not ok and where is not None:
            self.counterexamples[name] = tuple(int(i) for i in where)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks,
                "counterexamples": {k: list(v) for k, v in self.counterexamples.items()}}


def _first(mask) -> tuple | None:
    idx = np.argwhere(mask)
    return tuple(idx[0]) if len(idx) else None


def validate_ring(R: FusionRing) -> ValidationReport:
    rep = ValidationReport()
    N, u, r = R.N, R.unit, R.rank
    eye = np.eye(r, dtype=np.int64)
    bad = _first(N[u] != eye)
    if bad is None:
        bad = _first(N[:, u, :] != eye)
    rep.record("unit", bad is None, bad)

    dual_eye = np.zeros((r, r), dtype=np.int64)
    for x in range(r):
        dual_eye[x, R.dual[x]] = 1
    involutive = all(R.dual[R.dual[x]] == x for x in range(r))
    bad = _first(N[:, :, u] != dual_eye)
    rep.record("dual", involutive and bad is None, bad if bad is not None else (0,))

    bad = _first(N != N.transpose(1, 0, 2))
    rep.record("commutative", bad is None, bad)

    # (x y) z  vs  x (y z), contracted through float matmul (entries are small integers)
    F = N.astype(np.float64)
    flat = F.reshape(r * r, r)
    ok_assoc, where = True, None
    for x in range(r):
        lhs = (F[x] @ F.reshape(r, r * r)).reshape(r, r, r)  # [y, z, v] = sum_w N_xy^w N_wz^v
        rhs = (flat @ F[x]).reshape(r, r, r)                  # [y, z, v] = sum_w N_yz^w N_xw^v
        diff = lhs != rhs
        if diff.any():
            ok_assoc, where = False, (x,) + _first(diff)
            break
    rep.record("associative", ok_assoc, where)

    try:
        dims = R.fpdim
        ok, where = _check_dims(R, dims)
    except FusionError:
        ok, where = False, (0,)
    rep.record("fpdim", ok, where)
    return rep


def _check_dims(R: FusionRing, dims: Sequence[Cyc]) -> tuple[bool, tuple | None]:
    if dims[R.unit] != 1:
        return False, (R.unit,)
    for x in range(R.rank):
        if dims[x].approx().real < 1 - 1e-9:
            return False, (x,)
        for y in range(x, R.rank):
            total = sum((m * dims[z] for z, m in R.fuse(x, y).items()), Cyc.rational(0))
            if dims[x] * dims[y] != total:
                return False, (x, y)
    return True, None


# ---------------------------------------------------------------------------
# dimensions


def recognize_sqrt2(value: float, max_den: int = 64, tol: float = 1e-8) -> Cyc | None:
    """Find a + b*sqrt2 (a, b rationals with small denominators) close to value."""
    r2 = math.sqrt(2)
    for den in range(1, max_den + 1):
        for bnum in range(-int(abs(value) * den / r2) - 2, int(abs(value) * den / r2) + 3):
            b = Fraction(bnum, den)
            a = Fraction(round((value - float(b) * r2) * den), den)
            if abs(float(a) + float(b) * r2 - value) < tol:
                return Cyc.rational(a) + Cyc.rational(b) * SQRT2
    return None


def fp_dims(R: FusionRing) -> list[Cyc]:
    """Perron roots of the fusion matrices, recognized exactly in Q(sqrt2)."""
    out = []
    for x in range(R.rank):
        L = R.N[x].astype(np.float64)
        ev = np.linalg.eigvals(L)
        rho = float(max(abs(ev)))
        d = recognize_sqrt2(rho)
        if d is None:
            raise FusionError(f"FP-dimension {rho!r} of {R.labels[x]} is not in Q(sqrt2)")
        out.append(d)
    ok, where = _check_dims(R, out)
    if not ok:
        raise FusionError(f"recognized dimensions fail the homomorphism check at {where}")
    return out


# ---------------------------------------------------------------------------
# abelian groups


@dataclass(frozen=True)
class AbelianGroup:
    """Product of cyclic groups Z/invariants[0] x ...; elements are tuples."""

    invariants: tuple[int, ...]

    @property
    def order(self) -> int:
        return math.prod(self.invariants)

    def elements(self) -> list[tuple[int, ...]]:
        return [tuple(t) for t in product(*(range(m) for m in self.invariants))]

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.invariants))

    @property
    def zero(self):
        return tuple(0 for _ in self.invariants)

    def __str__(self):
        if not self.invariants:
            return "1"
        return " x ".join(f"Z/{m}" for m in self.invariants)


def _element_order(e, op, identity) -> int:
    k, cur = 1, e
    while cur != identity:
        cur = op(cur, e)
        k += 1
    return k


def decompose_abelian(elements: Sequence, op: Callable, identity) -> tuple[AbelianGroup, dict]:
    """Isomorphism of a finite abelian group onto a product of cyclic p-power factors.

    Elements are split into p-primary parts; each part is decomposed greedily by
    picking elements of maximal order whose cyclic span meets the current span
    trivially (valid for abelian p-groups).
    """
    elems = list(elements)
    n = len(elems)
    orders = {e: _element_order(e, op, identity) for e in elems}

    def power(e, k):
        out = identity
        for _ in range(k):
            out = op(out, e)
        return out

    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    gens: list[tuple] = []  # (generator, order)
    for p in primes:
        part = [e for e in elems if _is_power_of(orders[e], p)]
        span = {identity}
        while len(span) < len(part):
            # element of largest order modulo the span, shifted so its cycle avoids the span
            def quotient_order(e):
                k, cur = 1, e
                while cur not in span:
                    cur = op(cur, e)
                    k += 1
                return k

            best = None
            for e in sorted(part, key=lambda e: -quotient_order(e)):
                for s in span:
                    cand = op(e, s)
                    cyc = [power(cand, i) for i in range(1, orders[cand])]
                    if all(c not in span for c in cyc):
                        best = cand
                        break
                if best is not None:
                    break
            if best is None:
                raise FusionError("failed to decompose abelian group")
            gens.append((best, orders[best]))
            span = {op(a, power(best, i)) for a in span for i in range(orders[best])}
    gens.sort(key=lambda g: g[1])
    group = AbelianGroup(tuple(o for _, o in gens))
    iso = {}
    for coords in group.elements():
        e = identity
        for (g, _), c in zip(gens, coords):
            e = op(e, power(g, c))
        iso[e] = coords
    if len(iso) != n:
        raise FusionError("generators do not span the group")
    return group, iso


def _is_power_of(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


@dataclass(frozen=True)
class InvertiblesGroup:
    group: AbelianGroup
    objects: tuple[int, ...]
    coords: dict  # object index -> group tuple

    def object_of(self, coords) -> int:
        for x, c in self.coords.items():
            if c == tuple(coords):
                return x
        raise KeyError(coords)


def invertibles_group(R: FusionRing) -> InvertiblesGroup:
    inv = R.invertibles

    def op(a, b):
        return next(iter(R.fuse(a, b)))

    group, iso = decompose_abelian(inv, op, R.unit)
    return InvertiblesGroup(group, inv, iso)


# ---------------------------------------------------------------------------
# subrings and gradings


@dataclass(frozen=True)
class Subring:
    parent: FusionRing
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))

    def __contains__(self, x: int) -> bool:
        return x in self.indices

    def __len__(self):
        return len(self.indices)

    @property
    def rank(self) -> int:
        return len(self.indices)

    @property
    def dim(self) -> Cyc:
        return sum((self.parent.fpdim[i] ** 2 for i in self.indices), Cyc.rational(0))

    def ring(self) -> FusionRing:
        return self.parent.restrict(self.indices)

    def labels(self) -> list[str]:
        return [self.parent.labels[i] for i in self.indices]

    def __and__(self, other: "Subring") -> "Subring":
        return Subring(self.parent, tuple(set(self.indices) & set(other.indices)))

    def __le__(self, other: "Subring") -> bool:
        return set(self.indices) <= set(other.indices)


def subring_generated(R: FusionRing, seeds: Iterable[int]) -> Subring:
    current = {R.unit} | set(seeds)
    current |= {R.dual[x] for x in current}
    frontier = list(current)
    while frontier:
        new = set()
        for x in frontier:
            for y in list(current):
                for z in np.nonzero(R.N[x, y])[0]:
                    z = int(z)
                    if z not in current and z not in new:
                        new.add(z)
        new |= {R.dual[z] for z in new}
        new -= current
        current |= new
        frontier = list(new)
    return Subring(R, tuple(current))


def adjoint_subring(R: FusionRing) -> Subring:
    seeds = set()
    for x in range(R.rank):
        seeds.update(R.fuse(x, R.dual[x]))
    return subring_generated(R, seeds)


@dataclass(frozen=True)
class Grading:
    group: AbelianGroup
    component_of: tuple  # object index -> group element

    def components(self) -> dict:
        out: dict = {g: [] for g in self.group.elements()}
        for x, g in enumerate(self.component_of):
            out[g].append(x)
        return out


def universal_grading(R: FusionRing) -> Grading:
    """Quotient of the ring by its adjoint subring."""
    ad = set(adjoint_subring(R).indices)
    # components are orbits of multiplication by the adjoint part
    comp = [-1] * R.rank
    reps: list[int] = []
    for x in range(R.rank):
        if comp[x] >= 0:
            continue
        c = len(reps)
        reps.append(x)
        stack = [x]
        comp[x] = c
        while stack:
            y = stack.pop()
            for a in ad:
                for z in R.fuse(y, a):
                    if comp[z] < 0:
                        comp[z] = c
                        stack.append(z)

    def op(c1, c2):
        return comp[next(iter(R.fuse(reps[c1], reps[c2])))]

    group, iso = decompose_abelian(range(len(reps)), op, comp[R.unit])
    grading = Grading(group, tuple(iso[comp[x]] for x in range(R.rank)))
    _check_grading(R, grading)
    return grading


def _check_grading(R: FusionRing, g: Grading) -> None:
    for x, y, z in zip(*np.nonzero(R.N)):
        if g.component_of[z] != g.group.add(g.component_of[x], g.component_of[y]):
            raise FusionError("grading is not compatible with fusion")
    dims = {}
    for c, members in g.components().items():
        if not members:
            raise FusionError("grading is not faithful")
        dims[c] = sum((R.fpdim[x] ** 2 for x in members), Cyc.rational(0))
    if len(set(dims.values())) != 1:
        raise FusionError("graded components have different dimensions")


@dataclass(frozen=True)
class DistinguishedSubrings:
    pointed: Subring
    adjoint: Subring
    rational: Subring


def distinguished_subrings(R: FusionRing) -> DistinguishedSubrings:
    pointed = Subring(R, R.invertibles)
    rational = Subring(R, tuple(x for x in range(R.rank) if R.fpdim[x].is_rational()))
    return DistinguishedSubrings(pointed, adjoint_subring(R), rational)


def all_subrings(R: FusionRing) -> list[Subring]:
    """Every fusion subring, as the join-closure of singly generated ones."""
    found = {subring_generated(R, [x]).indices for x in range(R.rank)}
    frontier = set(found)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(found):
                j = subring_generated(R, set(a) | set(b)).indices
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    return [Subring(R, s) for s in sorted(found, key=lambda s: (len(s), s))]


def is_isomorphic_ring(R1: FusionRing, R2: FusionRing) -> dict | None:
    """Label bijection carrying N1 to N2 (small ranks), pruned by dimensions."""
    if R1.rank != R2.rank:
        return None
    d1 = [d.key() for d in R1.fpdim]
    d2 = [d.key() for d in R2.fpdim]
    if sorted(d1) != sorted(d2):
        return None
    r = R1.rank
    order = sorted(range(r), key=lambda x: (x != R1.unit, -R1.fpdim[x].approx().real))
    assign: dict[int, int] = {}
    used: set[int] = set()

    def consistent(x, y):
        for a, b in assign.items():
            for c, e in assign.items():
                if R1.N[x, a, c] != R2.N[y, b, e] or R1.N[a, x, c] != R2.N[b, y, e]:
                    return False
                if R1.N[a, c, x] != R2.N[b, e, y]:
                    return False
            if R1.N[x, x, a] != R2.N[y, y, b] or R1.N[x, a, x] != R2.N[y, b, y]:
                return False
        return R1.N[x, x, x] == R2.N[y, y, y]

    def search(i):
        if i == r:
            return True
        x = order[i]
        for y in range(r):
            if y in used or d2[y] != d1[x]:
                continue
            if x == R1.unit and y != R2.unit:
                continue
            if consistent(x, y):
                assign[x] = y
                used.add(y)
                if search(i + 1):
                    return True
                del assign[x]
                used.discard(y)
        return False

    return dict(assign) if search(0) else None


def load_ring(path: str) -> FusionRing:
    with open(path) as fh:
        return FusionRing.from_json(json.load(fh))
