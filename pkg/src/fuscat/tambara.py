"""Tambara-Yamagami rings over E_n = (Z/2)^n and their braiding data (tau, q, alpha).

Elements of E_n are bit masks: basis generator g_j is ``1 << j`` and addition is XOR.
Quadratic forms take values in {1, i, -1, -i}; they are stored as exponents of i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .cyclo import I, ONE, SQRT2, Cyc, as_cyc, root_of_unity, sqrt_root_of_unity
from .fusion import FusionRing, Subring
from .modular import Premodular, symmetric_center


class BraidingError(ValueError):
    pass


_I_POWERS = (ONE, I, -ONE, -I)


def i_power(e: int) -> Cyc:
    return _I_POWERS[e % 4]


def i_exponent(value) -> int:
    value = as_cyc(value)
    for e, v in enumerate(_I_POWERS):
        if v == value:
            return e
    raise BraidingError(f"{value} is not a fourth root of unity")


def element_label(g: int, n: int) -> str:
    if g == 0:
        return "e"
    return "+".join(f"g{j + 1}" for j in range(n) if g >> j & 1)


def inv_sqrt_pow2(n: int) -> Cyc:
    """1 / sqrt(2^n), exactly."""
    return (SQRT2 ** n).inverse()


# ---------------------------------------------------------------------------
# bicharacters


@dataclass(frozen=True)
class Bicharacter:
    n: int
    k: int
    table: tuple[tuple[int, ...], ...]  # entries +1 / -1

    def __call__(self, g: int, h: int) -> int:
        return self.table[g][h]

    def matrix(self) -> list[list[Cyc]]:
        return [[Cyc.rational(v) for v in row] for row in self.table]


def bicharacter(n: int, k: int) -> Bicharacter:
    if k not in (0, 1):
        raise BraidingError("k must be 0 or 1")
    if n < 1:
        raise BraidingError("n must be positive")
    if k == 0 and n % 2:
        raise BraidingError("chi^0 exists only for even n")
    size = 1 << n

    def value(g, h):
        if k == 1:
            return -1 if bin(g & h).count("1") % 2 else 1
        s = 0
        for b in range(0, n, 2):
            s += (g >> b & 1) * (h >> (b + 1) & 1) + (g >> (b + 1) & 1) * (h >> b & 1)
        return -1 if s % 2 else 1

    return Bicharacter(n, k, tuple(tuple(value(g, h) for h in range(size)) for g in range(size)))


def _sign_exp(v: int) -> int:
    return 0 if v == 1 else 2


def polarizes(chi: Bicharacter, q_exp: Sequence[int]) -> bool:
    size = 1 << chi.n
    if q_exp[0] % 4:
        return False
    for g in range(size):
        for h in range(size):
            if (q_exp[g] + q_exp[h] - q_exp[g ^ h] - _sign_exp(chi(g, h))) % 4:
                return False
    return True


def _form_from_basis(chi: Bicharacter, basis_exp: Sequence[int]) -> tuple[int, ...]:
    size = 1 << chi.n
    q = [0] * size
    for g in range(1, size):
        low = g & -g
        j = low.bit_length() - 1
        rest = g ^ low
        # q(low + rest) = q(low) q(rest) / chi(low, rest)
        q[g] = (basis_exp[j] + q[rest] - _sign_exp(chi(low, rest))) % 4
    return tuple(q)


def quadratic_forms(chi: Bicharacter) -> list[tuple[int, ...]]:
    """All quadratic forms refining chi, as tuples of i-exponents indexed by E_n."""
    choices = []
    for j in range(chi.n):
        g = 1 << j
        # q(g)^2 = chi(g, g)
        choices.append((0, 2) if chi(g, g) == 1 else (1, 3))
    out = []
    for basis in itertools.product(*choices):
        q = _form_from_basis(chi, basis)
        if not polarizes(chi, q):
            raise BraidingError("constructed form fails polarization")
        out.append(q)
    return out


# ---------------------------------------------------------------------------
# braiding data


@dataclass(frozen=True)
class BraidingData:
    chi: Bicharacter
    tau: Cyc
    q_exp: tuple[int, ...]
    alpha: Cyc
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not polarizes(self.chi, self.q_exp):
            raise BraidingError("q does not polarize chi")
        if self.tau * self.tau * (1 << self.n) != 1:
            raise BraidingError("tau must be +-1/sqrt(2^n)")
        if self.alpha * self.alpha != self.tau * self.gauss_sum():
            raise BraidingError("alpha^2 must equal tau * sum q")

    @property
    def n(self) -> int:
        return self.chi.n

    @property
    def k(self) -> int:
        return self.chi.k

    @property
    def q(self) -> tuple[Cyc, ...]:
        return tuple(i_power(e) for e in self.q_exp)

    @property
    def tau_sign(self) -> int:
        return 1 if self.tau.approx().real > 0 else -1

    def gauss_sum(self) -> Cyc:
        return sum(self.q, Cyc.rational(0))

    @property
    def theta_x(self) -> Cyc:
        """Twist of the noninvertible object: sign(tau) * conj(alpha)."""
        return self.tau_sign * self.alpha.conj()

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "tau_sign": self.tau_sign,
                "q": [str(v) for v in self.q], "alpha": str(self.alpha), "name": self.name}

    @classmethod
    def from_json(cls, obj: dict) -> "BraidingData":
        n, k = int(obj["n"]), int(obj["k"])
        tau = obj["tau_sign"] * inv_sqrt_pow2(n) if "tau_sign" in obj else as_cyc(obj["tau"])
        return braiding_from_values(n, k, tau, obj["q"], obj["alpha"], obj.get("name", ""))


def make_braiding(n: int, k: int, tau_sign: int, q, alpha_sign: int, name: str = "") -> BraidingData:
    """Braiding data with alpha the alpha_sign multiple of the principal root of tau * sum q.

    ``q`` is either the full list of values on E_n or the n values on the basis.
    """
    chi = bicharacter(n, k)
    vals = [i_exponent(v) for v in q]
    if len(vals) == n:
        vals = list(_form_from_basis(chi, vals))
    if len(vals) != 1 << n:
        raise BraidingError("q must list values on all of E_n or on its basis")
    if not polarizes(chi, vals):
        raise BraidingError("q does not polarize chi")
    if tau_sign not in (1, -1) or alpha_sign not in (1, -1):
        raise BraidingError("signs must be +1 or -1")
    tau = tau_sign * inv_sqrt_pow2(n)
    target = tau * sum((i_power(e) for e in vals), Cyc.rational(0))
    alpha = alpha_sign * sqrt_root_of_unity(target)
    return BraidingData(chi, tau, tuple(vals), alpha, name)


def braiding_from_values(n: int, k: int, tau, q, alpha, name: str = "") -> BraidingData:
    chi = bicharacter(n, k)
    vals = tuple(i_exponent(v) for v in q)
    return BraidingData(chi, as_cyc(tau), vals, as_cyc(alpha), name)


# ---------------------------------------------------------------------------
# Ising catalog: (tau sign, q(g)) for alpha = zeta16^j


ISING_TABLE = {
    1: (1, 1, 1, "i"),
    3: (-1, -1, 1, "-i"),
    5: (-1, 1, -1, "i"),
    7: (1, -1, -1, "-i"),
    9: (1, 1, -1, "i"),
    11: (-1, -1, -1, "-i"),
    13: (-1, 1, 1, "i"),
    15: (1, -1, 1, "-i"),
}
"""j -> (tau sign, delta, epsilon, q(g)) of the published Ising braidings."""


def ising(j: int) -> BraidingData:
    j %= 16
    if j not in ISING_TABLE:
        raise BraidingError("Ising braidings are indexed by odd residues mod 16")
    tau_sign, _, _, qg = ISING_TABLE[j]
    return braiding_from_values(1, 1, tau_sign * inv_sqrt_pow2(1), ["1", qg], root_of_unity(16, j), name=f"I{j}")


def ising_catalog() -> list[BraidingData]:
    return [ising(j) for j in sorted(ISING_TABLE)]


# ---------------------------------------------------------------------------
# rings and premodular data


@lru_cache(maxsize=None)
def ty_ring(n: int) -> FusionRing:
    size = 1 << n
    r = size + 1
    N = np.zeros((r, r, r), dtype=np.int64)
    x = size
    for g in range(size):
        for h in range(size):
            N[g, h, g ^ h] = 1
        N[g, x, x] = N[x, g, x] = 1
        N[x, x, g] = 1
    labels = [element_label(g, n) for g in range(size)] + ["x"]
    dims = [ONE] * size + [SQRT2 ** n]
    return FusionRing(labels, N, list(range(size)) + [x], 0, dims)


def to_premodular(b: BraidingData) -> Premodular:
    theta = [i_power(2 * e) for e in b.q_exp] + [b.theta_x]
    return Premodular(ty_ring(b.n), theta, name=b.name)


# ---------------------------------------------------------------------------
# automorphisms of E_n


@lru_cache(maxsize=None)
def gl2(n: int) -> tuple[tuple[int, ...], ...]:
    """All of GL(n, 2), each as the tuple of basis images (bit masks)."""
    out = []

    def extend(images, span):
        if len(images) == n:
            out.append(tuple(images))
            return
        for v in range(1, 1 << n):
            if v not in span:
                extend(images + [v], span | {s ^ v for s in span})

    extend([], {0})
    return tuple(out)


def apply_auto(f: Sequence[int], g: int) -> int:
    out = 0
    for j, img in enumerate(f):
        if g >> j & 1:
            out ^= img
    return out


def preserves_chi(chi: Bicharacter, f: Sequence[int]) -> bool:
    basis = [1 << j for j in range(chi.n)]
    return all(chi(apply_auto(f, a), apply_auto(f, b)) == chi(a, b) for a in basis for b in basis)


def braiding_equivalent(b1: BraidingData, b2: BraidingData) -> tuple[int, ...] | None:
    """An automorphism f with q2(f(g)) = q1(g), provided tau and alpha agree."""
    if b1.n != b2.n or b1.k != b2.k:
        return None
    if b1.tau != b2.tau or b1.alpha != b2.alpha:
        return None
    if sorted(b1.q_exp) != sorted(b2.q_exp):
        return None
    n = b1.n
    size = 1 << n
    for f in gl2(n):
        # prune on basis values first
        if any(b2.q_exp[f[j]] != b1.q_exp[1 << j] for j in range(n)):
            continue
        if all(b2.q_exp[apply_auto(f, g)] == b1.q_exp[g] for g in range(size)):
            return f
    return None


def braided_autos(b: BraidingData) -> list[tuple[int, ...]]:
    size = 1 << b.n
    return [f for f in gl2(b.n) if preserves_chi(b.chi, f)
            and all(b.q_exp[apply_auto(f, g)] == b.q_exp[g] for g in range(size))]


@dataclass
class BraidingClass:
    representative: BraidingData
    members: list[BraidingData]
    witnesses: list[tuple[int, ...]]


def all_braidings(n: int, k: int) -> list[BraidingData]:
    chi = bicharacter(n, k)
    out = []
    for tau_sign in (1, -1):
        for q in quadratic_forms(chi):
            for a in (1, -1):
                out.append(make_braiding(n, k, tau_sign, [i_power(e) for e in q], a))
    return out


def enumerate_braiding_classes(n: int, k: int) -> list[BraidingClass]:
    classes: list[BraidingClass] = []
    for b in all_braidings(n, k):
        for c in classes:
            w = braiding_equivalent(c.representative, b)
            if w is not None:
                c.members.append(b)
                c.witnesses.append(w)
                break
        else:
            classes.append(BraidingClass(b, [b], [tuple(1 << j for j in range(n))]))
    return classes


def is_symmetric(b: BraidingData) -> bool:
    P = to_premodular(b)
    return symmetric_center(P).rank == P.rank


def ty_symmetric_center(b: BraidingData) -> Subring:
    """Invertibles with q(g)^2 = 1, plus x when everything centralizes x."""
    size = 1 << b.n
    ring = ty_ring(b.n)
    pts = [g for g in range(size) if b.q_exp[g] % 2 == 0]
    if len(pts) == size:
        P = to_premodular(b)
        if P.S[size][size] == ring.fpdim[size] ** 2:
            pts.append(size)
    return Subring(ring, tuple(pts))


# ---------------------------------------------------------------------------
# reference tables (row name, tau sign, q on e, g1, g2, g1+g2, alpha)


SYMMETRIC_CHI20_TABLE = [
    ("Rep(D4,e)", 1, ("1", "1", "1", "-1"), "1"),
    ("Rep(D4,z)", 1, ("1", "1", "1", "-1"), "-1"),
    ("Rep(Q8,e)", -1, ("1", "-1", "-1", "-1"), "1"),
    ("Rep(Q8,z)", -1, ("1", "-1", "-1", "-1"), "-1"),
]

NONSYMMETRIC_CHI20_TABLE = [
    ("K", 1, ("1", "-1", "-1", "-1"), "i"),
    ("K^rev", 1, ("1", "-1", "-1", "-1"), "-i"),
    ("Z(Vec_Q8^g)_ad", -1, ("1", "1", "1", "-1"), "i"),
    ("Z(Vec_Q8^g)_ad^rev", -1, ("1", "1", "1", "-1"), "-i"),
]

CHI21_TABLE = [
    ("(I1xI1)_Q", 1, ("1", "i", "i", "-1"), "z8"),
    ("(I5xI5)_Q", 1, ("1", "i", "i", "-1"), "z8^5"),
    ("(I1xI15)_Q", 1, ("1", "i", "-i", "1"), "1"),
    ("(I1xI7)_Q", 1, ("1", "i", "-i", "1"), "-1"),
    ("(I7xI7)_Q", 1, ("1", "-i", "-i", "-1"), "z8^7"),
    ("(I3xI3)_Q", 1, ("1", "-i", "-i", "-1"), "z8^3"),
    ("(I1xI13)_Q", -1, ("1", "i", "i", "-1"), "z8^7"),
    ("(I1xI5)_Q", -1, ("1", "i", "i", "-1"), "z8^3"),
    ("(I1xI3)_Q", -1, ("1", "i", "-i", "1"), "i"),
    ("(I1xI11)_Q", -1, ("1", "i", "-i", "1"), "-i"),
    ("(I3xI15)_Q", -1, ("1", "-i", "-i", "-1"), "z8"),
    ("(I3xI7)_Q", -1, ("1", "-i", "-i", "-1"), "z8^5"),
]


def table_braidings(k: int, rows) -> list[BraidingData]:
    return [braiding_from_values(2, k, s * Fraction(1, 2), q, alpha, name) for name, s, q, alpha in rows]
