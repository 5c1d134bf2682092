"""Number fields K = Q[x]/(f) with ordered embeddings, and their elements.

Embeddings are numbered 1..s+2t: the s real roots of f in ascending order,
then the t upper half-plane roots sorted by (real part, imaginary part), then
their conjugates in the same order.  Conjugates are never stored.

Elements live in the order Z[theta] when all coordinates are integers; the
maximal order is never computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from otlck.exactnum import (
    CBox,
    ComplexAlgebraic,
    Precision,
    RationalPolynomial,
    RealAlgebraic,
    RInterval,
    isolate_complex_roots,
    isolate_real_roots,
    resultant,
)
from otlck.exactnum.algebraic import eval_at
from otlck.exactnum.poly import is_squarefree
from otlck.serialize import fmt_rational, parse_rational

ORDER_CAVEAT = "order-Z[theta]"
IRREDUCIBILITY_WARNING = "irreducibility-unproven"


class FieldError(ValueError):
    """Rejected field input; ``check`` names the failed check."""

    def __init__(self, check: str, message: str):
        super().__init__(f"{check}: {message}")
        self.check = check


@dataclass(frozen=True, eq=False)
class NumberField:
    poly: RationalPolynomial
    real_roots: tuple[RealAlgebraic, ...]
    complex_roots: tuple[ComplexAlgebraic, ...]
    warnings: tuple[str, ...] = ()

    @property
    def degree(self) -> int:
        return self.poly.degree

    n = degree

    @property
    def s(self) -> int:
        return len(self.real_roots)

    @property
    def t(self) -> int:
        return len(self.complex_roots)

    @property
    def signature(self) -> tuple[int, int]:
        return self.s, self.t

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.poly == other.poly

    def __hash__(self) -> int:
        return hash(self.poly)

    def __repr__(self) -> str:
        return f"NumberField({self.poly}, signature={self.signature})"

    def root(self, i: int):
        """The i-th embedding of theta (1-based); indices past s+t are conjugates."""
        s, t = self.s, self.t
        if not 1 <= i <= s + 2 * t:
            raise IndexError(f"embedding index {i} out of range 1..{s + 2 * t}")
        if i <= s:
            return self.real_roots[i - 1]
        if i <= s + t:
            return self.complex_roots[i - s - 1]
        return self.complex_roots[i - s - t - 1].conjugate()

    def element(self, coords: Iterable) -> FieldElement:
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(cs)}")
        return FieldElement(self, cs)

    def from_int(self, c) -> FieldElement:
        return self.element([c] + [0] * (self.degree - 1))

    @property
    def one(self) -> FieldElement:
        return self.from_int(1)

    @property
    def zero(self) -> FieldElement:
        return self.from_int(0)

    @property
    def theta(self) -> FieldElement:
        return self.element([0, 1] + [0] * (self.degree - 2))

    def to_json(self) -> dict:
        return {"poly": self.poly.to_json(), "warnings": list(self.warnings)}


@dataclass(frozen=True)
class FieldElement:
    field: NumberField = field(repr=False)
    coords: tuple[Fraction, ...]

    @property
    def poly(self) -> RationalPolynomial:
        return RationalPolynomial(self.coords)

    def is_integral(self) -> bool:
        """Integer coordinates, i.e. membership in Z[theta]."""
        return all(c.denominator == 1 for c in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def _check(self, other: FieldElement):
        if self.field != other.field:
            raise ValueError("elements of different fields")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, _mulmod(self.coords, other.coords, self.field.poly.coeffs))

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        inv = _inverse_mod(self.poly, self.field.poly)
        return self.field.element(_pad(inv.coeffs, self.field.degree))

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return self * other.inverse()

    def __pow__(self, k: int) -> FieldElement:
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def to_json(self) -> list[str]:
        return [fmt_rational(c) for c in self.coords]

    def __repr__(self) -> str:
        return f"FieldElement({[str(c) for c in self.coords]})"


def _pad(cs: Sequence, n: int) -> list:
    return list(cs) + [Fraction(0)] * (n - len(cs))


def _mulmod(a: Sequence[Fraction], b: Sequence[Fraction], f: Sequence[Fraction]) -> tuple:
    n = len(f) - 1
    prod = [Fraction(0)] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    # f is monic: x^n = -(f_0 + ... + f_{n-1} x^{n-1})
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for j in range(n):
                prod[k - n + j] -= c * f[j]
    return tuple(prod[:n])


def _inverse_mod(a: RationalPolynomial, f: RationalPolynomial) -> RationalPolynomial:
    # extended Euclid: track s with s*a = r (mod f)
    r0, r1 = f, a
    s0, s1 = RationalPolynomial(), RationalPolynomial((1,))
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ZeroDivisionError("element is a zero divisor (defining polynomial reducible)")
    return (s0 * RationalPolynomial((1 / r0.lc,))) % f


def element_arithmetic(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown operation {op!r}")


# --- construction ------------------------------------------------------------


def _rational_roots(f: RationalPolynomial) -> list[int]:
    """Integer roots of a monic integer polynomial (rational root test)."""
    c0 = int(f.coeffs[0])
    if c0 == 0:
        return [0]
    cands = set()
    m = abs(c0)
    d = 1
    while d * d <= m:
        if m % d == 0:
            cands.update((d, -d, m // d, -(m // d)))
        d += 1
    return sorted(c for c in cands if f(c) == 0)


def make_field(f: RationalPolynomial | Sequence, *, probe_primes: int = 40) -> NumberField:
    """Build Q[x]/(f) for a monic integer polynomial f of degree >= 2."""
    if not isinstance(f, RationalPolynomial):
        f = RationalPolynomial(parse_rational(c) for c in f)
    if f.degree < 2:
        raise FieldError("degree", f"need degree >= 2, got {f.degree}")
    if not f.is_monic() or not f.has_integer_coeffs():
        raise FieldError("monic-integer", "defining polynomial must be monic with integer coefficients")
    if not is_squarefree(f):
        raise FieldError("squarefree", "defining polynomial is not squarefree")
    roots = _rational_roots(f)
    if roots:
        raise FieldError("irreducible", f"polynomial has the rational root {roots[0]}")
    warnings: tuple[str, ...] = ()
    if not irreducibility_probe(f, probe_primes):
        warnings = (IRREDUCIBILITY_WARNING,)
    real = tuple(isolate_real_roots(f))
    cplx = isolate_complex_roots(f)
    return NumberField(f, real, tuple(cplx), warnings)


def field_from_json(data) -> NumberField:
    if isinstance(data, dict):
        data = data["poly"]
    if not isinstance(data, list) or not data:
        raise FieldError("poly-json", "expected a non-empty JSON array of coefficients")
    try:
        coeffs = [parse_rational(c) for c in data]
    except (TypeError, ValueError) as exc:
        raise FieldError("poly-json", str(exc)) from None
    return make_field(RationalPolynomial(coeffs))


# --- irreducibility screen via distinct-degree factorisation mod p -----------


def _pmod(a: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] = (a[k + j] - c * y) % p
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    return _pdivmod(_pmod(prod, p), f, p)[1]


def _ppowmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def factor_degrees_mod_p(f: RationalPolynomial, p: int) -> list[int] | None:
    """Degrees of the irreducible factors of f mod p, or None if f mod p is not squarefree."""
    fp = _pmod([int(c) for c in f.coeffs], p)
    if len(fp) != len(f.coeffs):
        return None
    dfp = _pmod([k * int(c) for k, c in enumerate(f.coeffs)][1:], p)
    if len(_pgcd(fp, dfp, p)) != 1:
        return None
    degrees: list[int] = []
    rest = fp
    h = [0, 1]
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = _ppowmod(h, p, rest, p)
        diff = _pmod([(h[i] if i < len(h) else 0) - (1 if i == 1 else 0) for i in range(max(len(h), 2))], p)
        g = _pgcd(rest, diff, p)
        if len(g) > 1:
            degrees += [d] * ((len(g) - 1) // d)
            rest = _pdivmod(rest, g, p)[0]
            h = _pdivmod(h, rest, p)[1] if len(rest) > 1 else [0]
    if len(rest) > 1:
        degrees.append(len(rest) - 1)
    return degrees


def _subset_sums(degrees: list[int]) -> set[int]:
    return reduce(lambda acc, d: acc | {x + d for x in acc}, degrees, {0})


def _primes(count: int) -> list[int]:
    out, k = [], 2
    while len(out) < count:
        if all(k % q for q in out if q * q <= k):
            out.append(k)
        k += 1
    return out


def irreducibility_probe(f: RationalPolynomial, num_primes: int = 40) -> bool:
    """True when factorisations mod small primes rule out every proper factor degree."""
    n = f.degree
    possible = set(range(1, n))
    for p in _primes(num_primes):
        degs = factor_degrees_mod_p(f, p)
        if degs is None:
            continue
        possible &= _subset_sums(degs)
        if not possible:
            return True
    return False


# --- norm, minimal polynomial, embeddings ------------------------------------


def norm(a: FieldElement) -> Fraction:
    """N_{K/Q}(a) = Res(f, A) = prod A(alpha) over the roots alpha of monic f."""
    if a.is_zero():
        return Fraction(0)
    return resultant(a.field.poly, a.poly)


def _solve(cols: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Exact solution x of sum_j x_j cols[j] = rhs, or None if inconsistent."""
    m, k = len(rhs), len(cols)
    rows = [[cols[j][i] for j in range(k)] + [rhs[i]] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                fac = rows[i][c]
                rows[i] = [x - fac * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][k]
    return x


def minimal_polynomial(a: FieldElement) -> tuple[RationalPolynomial, int]:
    """Monic minimal polynomial of a over Q and its degree."""
    n = a.field.degree
    powers = [list(a.field.one.coords)]
    cur = a.field.one
    for k in range(1, n + 1):
        cur = cur * a
        x = _solve(powers, list(cur.coords))
        if x is not None:
            mp = RationalPolynomial([-c for c in x] + [1])
            return mp, k
        powers.append(list(cur.coords))
    raise ArithmeticError("no linear dependency among powers; defining polynomial is not a field")


def embed(a: FieldElement, i: int, p: Precision = Precision()) -> RInterval | CBox:
    """Enclosure of sigma_i(a) of width at most 2^-p.working.

    Real embeddings give an RInterval, complex ones a CBox.
    """
    K = a.field
    root = K.root(i)
    if a.is_rational():
        c = a.coords[0]
        return RInterval.point(c) if i <= K.s else CBox.point(c)
    target = Fraction(1, 2**p.working)
    bits = p.working + 8
    while True:
        v = eval_at(a.poly, root, bits)
        if v.width <= target:
            return v
        bits *= 2


def embeddings(a: FieldElement, p: Precision = Precision()) -> list:
    """Enclosures for sigma_1 .. sigma_{s+t} (conjugates omitted)."""
    K = a.field
    return [embed(a, i, p) for i in range(1, K.s + K.t + 1)]
