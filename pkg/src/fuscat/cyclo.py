"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value is stored in the power basis 1, z, ..., z^(phi(N)-1) of Q(zeta_N),
reduced modulo the N-th cyclotomic polynomial, with integer numerators and a
common positive denominator.  Equality and hashing go through a canonical
form living in the smallest cyclotomic field that contains the value.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence


class CycError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# cached number-theoretic tables


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@lru_cache(maxsize=None)
def _units(n: int) -> tuple[int, ...]:
    return tuple(a for a in range(1, n + 1) if math.gcd(a, n) == 1) if n > 1 else (1,)


@lru_cache(maxsize=None)
def _coset_chain(n: int) -> tuple[tuple[int, int], ...]:
    """Pairs (g, r) with H_{i+1} = union of g^k H_i for k < r, ending at all units mod n."""
    H, chain = {1 % n}, []
    for g in _units(n):
        if g % n in H:
            continue
        r, gk = 1, g % n
        while gk not in H:
            gk = gk * g % n
            r += 1
        H = {h * pow(g, k, n) % n for h in H for k in range(r)}
        chain.append((g, r))
    return tuple(chain)


def _phi(n: int) -> int:
    return len(_units(n))


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise CycError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coordinates of z^k for k = 0..n-1."""
    m = _phi(n)
    phi_n = cyclotomic_poly(n)
    rows = []
    cur = [1] + [0] * (m - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(m):
                cur[i] -= top * phi_n[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def _embed_rows(n: int, big: int) -> tuple[tuple[int, ...], ...]:
    step = big // n
    table = _power_table(big)
    return tuple(table[(i * step) % big] for i in range(_phi(n)))


@lru_cache(maxsize=None)
def _descent_matrix(m: int, n: int) -> tuple[tuple[int, ...], tuple[tuple[Fraction, ...], ...]]:
    """Left inverse of the embedding Q(zeta_m) -> Q(zeta_n) on chosen rows."""
    cols = _embed_rows(m, n)  # cols[j] is image of basis vector j
    k = len(cols)
    rows_all = [[cols[j][i] for j in range(k)] for i in range(_phi(n))]
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    # greedy row selection with incremental elimination
    for i, row in enumerate(rows_all):
        v = [Fraction(x) for x in row]
        for b, piv in basis:
            if v[piv]:
                f = v[piv] / b[piv]
                v = [a - f * c for a, c in zip(v, b)]
        nz = next((t for t in range(k) if v[t]), None)
        if nz is not None:
            basis.append((v, nz))
            chosen.append(i)
            if len(chosen) == k:
                break
    sub = [[Fraction(x) for x in rows_all[i]] for i in chosen]
    inv = _invert(sub)
    return tuple(chosen), tuple(tuple(r) for r in inv)


def _invert(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    k = len(mat)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(mat)]
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


def _normalize(num: Sequence, den: int) -> tuple[tuple[int, ...], int]:
    if any(isinstance(v, Fraction) and v.denominator != 1 for v in num):
        extra = math.lcm(*(v.denominator for v in num))
        num = [int(v * extra) for v in num]
        den *= extra
    else:
        num = [int(v) for v in num]
    if den < 0:
        num, den = [-a for a in num], -den
    g = math.gcd(den, *num)
    if g > 1:
        num = [a // g for a in num]
        den //= g
    if not any(num):
        den = 1
    return tuple(num), den


def _reduce_poly(n: int, acc: list[int]) -> list[int]:
    m = _phi(n)
    phi_n = cyclotomic_poly(n)
    for deg in range(len(acc) - 1, m - 1, -1):
        c = acc[deg]
        if c:
            base = deg - m
            for i in range(m):
                acc[base + i] -= c * phi_n[i]
    return acc[:m]


def _galois(n: int, num: Sequence[int], a: int) -> list[int]:
    table = _power_table(n)
    out = [0] * len(num)
    for i, c in enumerate(num):
        if c:
            row = table[(a * i) % n]
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
    return out


# ---------------------------------------------------------------------------


class Cyc:
    """Immutable element of a cyclotomic field.

    ``Cyc(N, coeffs)`` builds sum_i coeffs[i] * zeta_N^i for any sequence of
    rationals (length N or shorter).  Ints and Fractions coerce automatically
    in arithmetic.
    """

    __slots__ = ("_n", "_num", "_den", "_canon")

    def __init__(self, conductor: int, coeffs: Iterable = ()):
        if conductor < 1:
            raise CycError("conductor must be positive")
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for f in fr:
            den = den * f.denominator // math.gcd(den, f.denominator)
        table = _power_table(conductor)
        num = [0] * _phi(conductor)
        for i, f in enumerate(fr):
            c = f.numerator * (den // f.denominator)
            if c:
                for j, r in enumerate(table[i % conductor]):
                    if r:
                        num[j] += c * r
        self._set(conductor, *_normalize(num, den))

    def _set(self, n: int, num: tuple[int, ...], den: int) -> None:
        self._n = n
        self._num = num
        self._den = den
        self._canon = None

    @classmethod
    def _raw(cls, n: int, num: Sequence[int], den: int = 1) -> "Cyc":
        obj = object.__new__(cls)
        obj._set(n, *_normalize(num, den))
        return obj

    @classmethod
    def rational(cls, q) -> "Cyc":
        q = Fraction(q)
        return cls._raw(1, (q.numerator,), q.denominator)

    # -- structure -------------------------------------------------------

    @property
    def conductor(self) -> int:
        """Conductor of the smallest cyclotomic field containing the value."""
        return self.canonical()._n

    def canonical(self) -> "Cyc":
        if self._canon is None:
            n, num, den = self._n, self._num, self._den
            shrinking = True
            while shrinking and n > 1:
                shrinking = False
                for p in _prime_factors(n):
                    m = n // p
                    if _in_subfield(n, num, m):
                        num = _descend(n, num, m)
                        num, den = _normalize(num, den)
                        n = m
                        shrinking = True
                        break
            c = Cyc._raw(n, num, den)
            c._canon = c
            self._canon = c
        return self._canon

    def _embed(self, big: int) -> "Cyc":
        if big == self._n:
            return self
        if big % self._n:
            raise CycError(f"Q(zeta_{self._n}) does not embed in Q(zeta_{big})")
        rows = _embed_rows(self._n, big)
        out = [0] * _phi(big)
        for c, row in zip(self._num, rows):
            if c:
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return Cyc._raw(big, out, self._den)

    def power_coeffs(self) -> list[Fraction]:
        """Canonical coefficients over zeta_N^0 .. zeta_N^(N-1) (N = conductor)."""
        c = self.canonical()
        out = [Fraction(a, c._den) for a in c._num]
        return out + [Fraction(0)] * (c._n - len(out))

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _lift(a, b) -> tuple["Cyc", "Cyc"]:
        if a._n == b._n:
            return a, b
        big = a._n * b._n // math.gcd(a._n, b._n)
        return a._embed(big), b._embed(big)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = Cyc._lift(self, other)
        den = a._den * b._den // math.gcd(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        return Cyc._raw(a._n, [x * fa + y * fb for x, y in zip(a._num, b._num)], den)

    __radd__ = __add__

    def __neg__(self):
        return Cyc._raw(self._n, [-x for x in self._num], self._den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other._n == 1:
            return Cyc._raw(self._n, [x * other._num[0] for x in self._num], self._den * other._den)
        if self._n == 1:
            return Cyc._raw(other._n, [x * self._num[0] for x in other._num], self._den * other._den)
        a, b = Cyc._lift(self, other)
        m = len(a._num)
        acc = [0] * (2 * m - 1)
        for i, x in enumerate(a._num):
            if x:
                for j, y in enumerate(b._num):
                    if y:
                        acc[i + j] += x * y
        return Cyc._raw(a._n, _reduce_poly(a._n, acc), a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        c = self.canonical()
        n = c._n
        if n == 1:
            return Cyc.rational(Fraction(c._den, c._num[0]))
        # cur stays equal to c * cof and becomes the norm once every coset is covered
        cur, cof = c, Cyc._raw(n, [1] + [0] * (_phi(n) - 1))
        for g, r in _coset_chain(n):
            conj = [Cyc._raw(n, _galois(n, cur._num, pow(g, k, n)), cur._den) for k in range(1, r)]
            t = conj[0]
            for v in conj[1:]:
                t = t * v
            cur, cof = cur * t, cof * t
        norm = cur.canonical()
        if norm._n != 1:
            raise CycError("norm computation left the rationals")
        return cof * Cyc.rational(Fraction(norm._den, norm._num[0]))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Cyc._raw(1, (1,))
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def galois(self, a: int) -> "Cyc":
        """The automorphism zeta -> zeta^a (a coprime to the conductor)."""
        if math.gcd(a, self._n) != 1:
            raise CycError("Galois exponent must be coprime to the conductor")
        return Cyc._raw(self._n, _galois(self._n, self._num, a % self._n), self._den)

    def conj(self) -> "Cyc":
        return self.galois(-1)

    # -- comparison ------------------------------------------------------

    def __bool__(self):
        return any(self._num)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self._n == other._n:
            return self._den == other._den and self._num == other._num
        a, b = Cyc._lift(self, other)
        return a._den == b._den and a._num == b._num

    def __hash__(self):
        c = self.canonical()
        if c._n == 1:
            return hash(Fraction(c._num[0], c._den))
        return hash((c._n, c._num, c._den))

    def key(self) -> tuple:
        c = self.canonical()
        return (c._n, c._num, c._den)

    # -- inspection ------------------------------------------------------

    def is_rational(self) -> bool:
        return self.canonical()._n == 1

    def to_fraction(self) -> Fraction:
        c = self.canonical()
        if c._n != 1:
            raise CycError("value is not rational")
        return Fraction(c._num[0], c._den)

    def is_real(self) -> bool:
        return self.conj() == self

    def approx(self) -> complex:
        n = self._n
        return sum(c * cmath.exp(2j * math.pi * i / n) for i, c in enumerate(self._num) if c) / self._den + 0j

    def __complex__(self):
        return self.approx()

    def __repr__(self):
        return f"Cyc({format_cyc(self)})"

    def __str__(self):
        return format_cyc(self)

    def to_json(self) -> dict:
        c = self.canonical()
        return {"conductor": c._n, "coeffs": [[f.numerator, f.denominator] for f in self.power_coeffs()]}

    @classmethod
    def from_json(cls, obj) -> "Cyc":
        if isinstance(obj, (int, Fraction)):
            return cls.rational(obj)
        if isinstance(obj, str):
            return parse_cyc(obj)
        coeffs = []
        for c in obj["coeffs"]:
            coeffs.append(Fraction(c[0], c[1]) if isinstance(c, (list, tuple)) else Fraction(c))
        return cls(int(obj["conductor"]), coeffs)


def _coerce(x):
    if isinstance(x, Cyc):
        return x
    if isinstance(x, (int, Rational)):
        return Cyc.rational(Fraction(x))
    return NotImplemented


def _in_subfield(n: int, num: Sequence[int], m: int) -> bool:
    for a in _units(n):
        if a % m == 1 % m and a != 1:
            if list(num) != _galois(n, num, a):
                return False
    return True


def _descend(n: int, num: Sequence[int], m: int) -> list[Fraction]:
    chosen, inv = _descent_matrix(m, n)
    vec = [num[i] for i in chosen]
    return [sum(r * v for r, v in zip(row, vec)) for row in inv]


# ---------------------------------------------------------------------------
# constructors and named constants


def root_of_unity(n: int, k: int = 1) -> Cyc:
    """zeta_n^k with zeta_n = exp(2 pi i / n)."""
    if n < 1:
        raise CycError("root_of_unity needs n >= 1")
    k %= n
    return Cyc._raw(n, _power_table(n)[k]).canonical()


def zeta(n: int, k: int = 1) -> Cyc:
    return root_of_unity(n, k)


ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)
I = root_of_unity(4)
SQRT2 = root_of_unity(8, 1) + root_of_unity(8, 7)


@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> Cyc:
    if p == 2:
        return SQRT2
    g = Cyc._raw(1, (0,))
    for a in range(1, p):
        leg = pow(a, (p - 1) // 2, p)
        g = g + (root_of_unity(p, a) if leg == 1 else -root_of_unity(p, a))
    # g^2 = (-1)^((p-1)/2) p and the quadratic Gauss sum is +sqrt(p) or i*sqrt(p)
    return g if p % 4 == 1 else -I * g


def sqrt_rational(q) -> Cyc:
    """Positive square root of a nonnegative rational."""
    q = Fraction(q) if not isinstance(q, Cyc) else q.to_fraction()
    if q < 0:
        raise CycError("sqrt_rational needs a nonnegative rational")
    if q == 0:
        return ZERO
    a = q.numerator * q.denominator
    square, free = 1, 1
    for p in _prime_factors(a):
        e = 0
        while a % p == 0:
            a //= p
            e += 1
        square *= p ** (e // 2)
        free *= p ** (e % 2)
    root = Cyc.rational(Fraction(square, q.denominator))
    for p in _prime_factors(free):
        root = root * _sqrt_prime(p)
    return root


def root_order(a: Cyc) -> int | None:
    """Multiplicative order of ``a`` if it is a root of unity."""
    c = a.canonical()
    if not c:
        return None
    n = c._n
    big = n if n % 2 == 0 else 2 * n
    if c._den != 1:
        return None
    for k in range(big):
        if root_of_unity(big, k) == c:
            return big // math.gcd(k, big)
    return None


def root_exponent(a: Cyc, n: int) -> int | None:
    """k with a = zeta_n^k, or None."""
    for k in range(n):
        if root_of_unity(n, k) == a:
            return k
    return None


def classify_value(a: Cyc) -> dict:
    rational = a.is_rational()
    return {
        "is_real": a.is_real(),
        "is_rational": rational,
        "rational_value": a.to_fraction() if rational else None,
        "root_order": root_order(a),
    }


def sqrt_root_of_unity(z: Cyc) -> Cyc:
    """Principal square root of a root of unity (argument halved into (-pi/2, pi/2])."""
    order = root_order(z)
    if order is None:
        raise CycError("value is not a root of unity")
    k = root_exponent(z, order)
    # principal argument of z lies in (-pi, pi]
    if 2 * k > order:
        k -= order
    return root_of_unity(2 * order, k)


def cyc_arith(a, b, op: str) -> Cyc:
    a, b = _coerce(a), _coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def approx(a) -> complex:
    return _coerce(a).approx()


def conj(a) -> Cyc:
    return _coerce(a).conj()


def as_cyc(x) -> Cyc:
    """Coerce ints, Fractions, symbolic strings and JSON dicts to Cyc."""
    if isinstance(x, Cyc):
        return x
    if isinstance(x, (int, Rational)):
        return Cyc.rational(x)
    if isinstance(x, (str, dict)):
        return Cyc.from_json(x)
    raise TypeError(f"cannot interpret {x!r} as a cyclotomic number")


# ---------------------------------------------------------------------------
# symbolic formatting
#
# grammar:  term := [coef "*"] atom | coef ;  atom := "i" | "zN^k" | "sqrtN"
# terms joined with " + " / " - ".  Examples: z16^5, -1/2, sqrt2/2, -i.


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_root(order: int, k: int) -> str:
    if order == 1:
        return "1"
    if order == 2:
        return "-1"
    if order == 4:
        return "i" if k == 1 else "-i"
    return f"z{order}" if k == 1 else f"z{order}^{k}"


def _fmt_surd(free: int, coef: Fraction) -> str:
    s = f"sqrt{free}"
    sign = "-" if coef < 0 else ""
    coef = abs(coef)
    if coef.numerator != 1:
        s = f"{coef.numerator}*{s}"
    if coef.denominator != 1:
        s = f"{s}/{coef.denominator}"
    return sign + s


def format_cyc(a) -> str:
    a = _coerce(a).canonical()
    if a._n == 1:
        return _fmt_frac(Fraction(a._num[0], a._den))
    order = root_order(a)
    if order is not None:
        return _fmt_root(order, root_exponent(a, order))
    # real surd r*sqrt(t)
    sq = a * a
    if sq.is_rational() and a.is_real() and sq.to_fraction() > 0:
        q = sq.to_fraction()
        num = q.numerator * q.denominator
        free = 1
        for p in _prime_factors(num):
            e = 0
            while num % p == 0:
                num //= p
                e += 1
            if e % 2:
                free *= p
        coef2 = q / free
        coef = Fraction(math.isqrt(coef2.numerator), math.isqrt(coef2.denominator))
        if a.approx().real < 0:
            coef = -coef
        return _fmt_surd(free, coef)
    # rational or surd multiple of a root of unity
    norm = a * a.conj()
    if norm.is_rational():
        r = sqrt_rational(norm.to_fraction())
        u = a / r
        uo = root_order(u)
        if uo is not None and uo > 2:
            head = format_cyc(r)
            return f"{head}*{_fmt_root(uo, root_exponent(u, uo))}"
    parts = []
    for k, c in enumerate(a.power_coeffs()):
        if not c:
            continue
        atom = _fmt_root(a._n, k) if k else ""
        if not atom:
            body = _fmt_frac(abs(c))
        elif abs(c) == 1:
            body = atom
        else:
            body = f"{_fmt_frac(abs(c))}*{atom}"
        parts.append(("-" if c < 0 else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


# ---------------------------------------------------------------------------
# parsing of the symbolic grammar (and a little more: + - * / ^ and parens)

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt\d+)|(z\d+|ζ\d+|zeta\d+)|(i)|([-+*/^()]))")


def parse_cyc(text: str) -> Cyc:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise CycError(f"cannot parse {text!r} at position {pos}")
        pos = m.end()
        num, surd, root, imag, op = m.groups()
        if num:
            tokens.append(("num", int(num)))
        elif surd:
            tokens.append(("val", sqrt_rational(int(surd[4:]))))
        elif root:
            tokens.append(("val", root_of_unity(int(re.sub(r"\D", "", root)))))
        elif imag:
            tokens.append(("val", I))
        else:
            tokens.append(("op", op))
    parser = _Parser(tokens)
    out = parser.expr()
    if parser.i != len(tokens):
        raise CycError(f"trailing input in {text!r}")
    return out


class _Parser:
    def __init__(self, tokens):
        self.t = tokens
        self.i = 0

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self) -> Cyc:
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> Cyc:
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self) -> Cyc:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Cyc:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, k = self.take()
            if kind != "num":
                raise CycError("exponent must be an integer")
            base = base ** (-k if neg else k)
        return base

    def atom(self) -> Cyc:
        kind, val = self.take()
        if kind == "num":
            return Cyc.rational(val)
        if kind == "val":
            return val
        if (kind, val) == ("op", "("):
            out = self.expr()
            if self.take() != ("op", ")"):
                raise CycError("unbalanced parenthesis")
            return out
        raise CycError(f"unexpected token {val!r}")


# ---------------------------------------------------------------------------
# arrays over a common cyclotomic field


@lru_cache(maxsize=None)
def _galois_matrix(n: int, a: int):
    import numpy as np

    table = _power_table(n)
    m = _phi(n)
    return np.array([table[(a * i) % n] for i in range(m)], dtype=np.int64)


@lru_cache(maxsize=None)
def _embed_matrix(n: int, big: int):
    import numpy as np

    return np.array(_embed_rows(n, big), dtype=np.int64)


class CycArray:
    """Array of elements of Q(zeta_n): integer numerators of shape (..., phi(n)) over one denominator.

    Used for exact matrix products in bulk; entries convert back to Cyc.
    """

    def __init__(self, n: int, num, den: int = 1):
        import numpy as np

        self.n = n
        self.num = np.asarray(num)
        self.den = den

    @classmethod
    def from_cyc(cls, values, n: int | None = None) -> "CycArray":
        import numpy as np

        vals = np.asarray(values, dtype=object)
        flat = [as_cyc(v) for v in vals.ravel()]
        if n is None:
            n = 1
            for v in flat:
                c = v.canonical()._n
                n = n * c // math.gcd(n, c)
        den = 1
        lifted = []
        for v in flat:
            e = v.canonical()._embed(n)
            lifted.append(e)
            den = den * e._den // math.gcd(den, e._den)
        m = _phi(n)
        big = max([abs(x) * (den // e._den) for e in lifted for x in e._num] + [0])
        dtype = np.int64 if big < 2**31 else object
        num = np.zeros((len(flat), m), dtype=dtype)
        for i, e in enumerate(lifted):
            f = den // e._den
            num[i] = [x * f for x in e._num]
        return cls(n, num.reshape(vals.shape + (m,)), den)

    @property
    def shape(self):
        return self.num.shape[:-1]

    def to_cyc(self):
        import numpy as np

        out = np.empty(self.shape, dtype=object)
        flat = self.num.reshape(-1, self.num.shape[-1])
        for i, row in enumerate(flat):
            out.flat[i] = Cyc._raw(self.n, [int(x) for x in row], self.den)
        return out

    def lift(self, big: int) -> "CycArray":
        if big == self.n:
            return self
        E = _embed_matrix(self.n, big)
        return CycArray(big, self._safe(self.num) @ E, self.den)

    @staticmethod
    def _safe(a):
        import numpy as np

        if a.dtype != object and a.size and int(np.abs(a).max()) >= 2**24:
            return a.astype(object)
        return a

    def _common(self, other: "CycArray"):
        big = self.n * other.n // math.gcd(self.n, other.n)
        return self.lift(big), other.lift(big)

    def _reduce(self, acc):
        m = _phi(self.n)
        phi_n = cyclotomic_poly(self.n)
        import numpy as np

        coeffs = np.array(phi_n[:m], dtype=acc.dtype)
        for deg in range(acc.shape[-1] - 1, m - 1, -1):
            top = acc[..., deg:deg + 1]
            acc[..., deg - m:deg] -= top * coeffs
        return acc[..., :m]

    def _convolve(self, a, b, contract: bool):
        import numpy as np

        m = _phi(self.n)
        a, b = self._safe(a), self._safe(b)
        dtype = object if object in (a.dtype, b.dtype) else np.int64
        if contract:
            shape = a.shape[:-2] + b.shape[-2:-1]
        else:
            shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
        acc = np.zeros(shape + (2 * m - 1,), dtype=dtype)
        for p in range(m):
            ap = a[..., p]
            if not ap.any():
                continue
            for q in range(m):
                bq = b[..., q]
                if not bq.any():
                    continue
                acc[..., p + q] += (ap @ bq) if contract else ap * bq
        return self._reduce(acc)

    def __matmul__(self, other: "CycArray") -> "CycArray":
        a, b = self._common(other)
        return CycArray(a.n, a._convolve(a.num, b.num, True), a.den * b.den)

    def __mul__(self, other: "CycArray") -> "CycArray":
        a, b = self._common(other)
        return CycArray(a.n, a._convolve(a.num, b.num, False), a.den * b.den)

    def conj(self) -> "CycArray":
        return CycArray(self.n, self._safe(self.num) @ _galois_matrix(self.n, -1 % self.n), self.den)

    @property
    def T(self) -> "CycArray":
        return CycArray(self.n, self.num.swapaxes(0, 1), self.den)

    def is_rational_integer(self):
        """Boolean mask of entries that are rational integers, and their values."""
        import numpy as np

        rest = self.num[..., 1:]
        rational = ~rest.astype(bool).any(axis=-1) if rest.shape[-1] else np.ones(self.shape, bool)
        c0 = self.num[..., 0]
        integral = rational & (c0 % self.den == 0)
        return integral, c0 // self.den

    def equals(self, other: "CycArray"):
        """Entrywise equality mask."""
        import numpy as np

        a, b = self._common(other)
        lhs = a._safe(a.num) * b.den
        rhs = b._safe(b.num) * a.den
        return np.all(lhs == rhs, axis=-1)
