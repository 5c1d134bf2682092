"""Exact univariate polynomials over Q.

Coefficients are stored constant term first as ``Fraction`` objects.  Most
heavy lifting (gcd, pseudo-remainders) is done on primitive integer
coefficient lists, which keeps coefficient growth in check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from typing import Iterable, Sequence


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(x)


def _trim(cs: list) -> list:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial with exact rational coefficients, constant term first."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        cs = _trim([as_fraction(c) for c in coeffs])
        object.__setattr__(self, "coeffs", tuple(cs))

    # construction helpers
    @classmethod
    def x(cls) -> RationalPolynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> RationalPolynomial:
        return cls((c,))

    @classmethod
    def from_json(cls, data: Sequence) -> RationalPolynomial:
        return cls(Fraction(str(c)) if not isinstance(c, int) else c for c in data)

    def to_json(self) -> list[str]:
        from otlck.serialize import fmt_rational

        return [fmt_rational(c) for c in self.coeffs] or ["0"]

    # basic properties
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return self.lc == 1

    def has_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "RationalPolynomial(0)"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if k and c == 1:
                terms.append(f"+{mono}")
            elif k and c == -1:
                terms.append(f"-{mono}")
            else:
                sep = "*" if mono else ""
                terms.append(f"{'+' if c > 0 else '-'}{abs(c)}{sep}{mono}")
        s = "".join(terms)
        return f"RationalPolynomial({s.lstrip('+')})"

    # arithmetic
    def __add__(self, other) -> RationalPolynomial:
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return RationalPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> RationalPolynomial:
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> RationalPolynomial:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> RationalPolynomial:
        return _coerce(other) - self

    def __mul__(self, other) -> RationalPolynomial:
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> RationalPolynomial:
        result = RationalPolynomial((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> tuple[RationalPolynomial, RationalPolynomial]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lc = other.lc
        if len(r) - 1 < db:
            return RationalPolynomial(), self
        q = [Fraction(0)] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] / lc
            q[k] = c
            if c:
                for j, bc in enumerate(other.coeffs):
                    r[k + j] -= c * bc
        return RationalPolynomial(q), RationalPolynomial(r[:db])

    def __floordiv__(self, other) -> RationalPolynomial:
        return divmod(self, other)[0]

    def __mod__(self, other) -> RationalPolynomial:
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> RationalPolynomial:
        return RationalPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> RationalPolynomial:
        if self.is_zero():
            return self
        lc = self.lc
        return RationalPolynomial(c / lc for c in self.coeffs)

    def integer_coeffs(self) -> list[int]:
        """Primitive integer multiple with positive leading coefficient."""
        return _primitive([c for c in self.coeffs])

    def primitive(self) -> RationalPolynomial:
        return RationalPolynomial(self.integer_coeffs())

    def shift(self, a) -> RationalPolynomial:
        """Return p(x + a)."""
        return RationalPolynomial(taylor_shift(list(self.coeffs), as_fraction(a)))

    def scale(self, a) -> RationalPolynomial:
        """Return p(a * x)."""
        a = as_fraction(a)
        out, pw = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * pw)
            pw *= a
        return RationalPolynomial(out)

    def reverse(self) -> RationalPolynomial:
        """x^deg * p(1/x)."""
        return RationalPolynomial(reversed(self.coeffs))

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)


def _coerce(p) -> RationalPolynomial:
    if isinstance(p, RationalPolynomial):
        return p
    return RationalPolynomial((p,))


def poly_from_ints(coeffs: Sequence[int]) -> RationalPolynomial:
    return RationalPolynomial(coeffs)


# --- integer coefficient helpers -------------------------------------------------


def _primitive(cs: Sequence) -> list[int]:
    cs = _trim(list(cs))
    if not cs:
        return []
    den = reduce(lambda a, b: a * b // igcd(a, b), (Fraction(c).denominator for c in cs), 1)
    ints = [int(Fraction(c) * den) for c in cs]
    g = reduce(igcd, ints)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder lc(b)^(da-db+1) * a mod b over Z."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        shift = da - db
        a = [lb * c for c in a]
        for j, bc in enumerate(b):
            a[shift + j] -= la * bc
        _trim(a)
    return a


def gcd(f: RationalPolynomial, g: RationalPolynomial) -> RationalPolynomial:
    """Monic gcd via the primitive polynomial remainder sequence."""
    a, b = f.integer_coeffs(), g.integer_coeffs()
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        a, b = b, _primitive(r) if r else []
    return RationalPolynomial(a).monic() if a else RationalPolynomial()


def squarefree_part(f: RationalPolynomial) -> RationalPolynomial:
    if f.is_zero():
        raise ValueError("zero polynomial has no squarefree part")
    if f.degree <= 0:
        return RationalPolynomial((1,))
    g = gcd(f, f.derivative())
    return (f // g).monic()


def is_squarefree(f: RationalPolynomial) -> bool:
    return gcd(f, f.derivative()).degree == 0


def taylor_shift(cs: list, a) -> list:
    """Coefficients of p(x + a), constant first (quadratic Horner scheme)."""
    cs = list(cs)
    n = len(cs)
    if a == 0:
        return cs
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            cs[j] += a * cs[j + 1]
    return cs


def resultant(f: RationalPolynomial, g: RationalPolynomial) -> Fraction:
    """Res(f, g) = lc(f)^deg(g) * prod g(alpha) over roots alpha of f."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    sign = 1
    acc = Fraction(1)
    while True:
        df, dg = f.degree, g.degree
        if df == 0:
            return sign * acc * f.lc**dg
        if dg == 0:
            return sign * acc * g.lc**df
        r = g % f
        if r.is_zero():
            return Fraction(0)
        # Res(f, g) = lc(f)^(dg - dr) Res(f, r);  Res(f, r) = (-1)^(df dr) Res(r, f)
        dr = r.degree
        acc *= f.lc ** (dg - dr)
        if (df * dr) % 2:
            sign = -sign
        f, g = r, f


# --- Newton power sums and composed products ------------------------------------


def power_sums(f: RationalPolynomial, count: int) -> list[Fraction]:
    """p_1..p_count of the roots of f (with multiplicity)."""
    m = f.monic()
    n = m.degree
    c = m.coeffs  # x^n + c[n-1] x^(n-1) + ... + c[0]
    p = [Fraction(n)]
    for k in range(1, count + 1):
        acc = Fraction(0)
        for i in range(1, min(k - 1, n) + 1):
            acc += c[n - i] * p[k - i]
        if k <= n:
            acc += k * c[n - k]
        p.append(-acc)
    return p[1:]


def from_power_sums(ps: Sequence[Fraction], degree: int) -> RationalPolynomial:
    """Monic polynomial of given degree whose root power sums are ps."""
    e = [Fraction(1)]
    for k in range(1, degree + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            term = e[k - i] * ps[i - 1]
            acc += term if i % 2 else -term
        e.append(acc / k)
    coeffs = [Fraction(0)] * (degree + 1)
    for k in range(degree + 1):
        coeffs[degree - k] = e[k] if k % 2 == 0 else -e[k]
    return RationalPolynomial(coeffs)


def composed_product(f: RationalPolynomial, g: RationalPolynomial) -> RationalPolynomial:
    """Monic polynomial whose roots are all products a*b with f(a) = g(b) = 0.

    Same root multiset as Res_y(f(y), y^deg(g) g(x/y)); computed through power
    sums since p_k of the products is p_k(f) * p_k(g).
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("composed product of the zero polynomial")
    N = f.degree * g.degree
    if N == 0:
        return RationalPolynomial((1,))
    pf = power_sums(f, N)
    pg = power_sums(g, N)
    return from_power_sums([a * b for a, b in zip(pf, pg)], N)


def symmetric_square_product(f: RationalPolynomial) -> RationalPolynomial:
    """Monic polynomial with roots a_i * a_j for i <= j (roots of f).

    Its distinct roots are exactly those of composed_product(f, f), at roughly
    half the degree.
    """
    n = f.degree
    N = n * (n + 1) // 2
    ps = power_sums(f, 2 * N)
    return from_power_sums([(ps[k - 1] ** 2 + ps[2 * k - 1]) / 2 for k in range(1, N + 1)], N)


# --- real root counting ---------------------------------------------------------


def sturm_sequence(f: RationalPolynomial) -> list[RationalPolynomial]:
    seq = [f.primitive(), f.derivative().primitive()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        # positive rescaling keeps the signs of the Sturm chain
        ints = _primitive(r.coeffs)
        scale = Fraction(ints[-1]) / r.lc
        if scale < 0:
            ints = [-c for c in ints]
        seq.append(RationalPolynomial(-c for c in ints))
    return seq


def _variations(signs: Iterable[int]) -> int:
    prev, v = 0, 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            v += 1
        prev = s
    return v


def _sign_at_inf(p: RationalPolynomial, neg: bool) -> int:
    s = 1 if p.lc > 0 else -1
    if neg and p.degree % 2:
        s = -s
    return s


def sturm_count(seq: list[RationalPolynomial], a=None, b=None) -> int:
    """Distinct roots of seq[0] in (a, b]; None means infinite endpoint."""
    va = _variations(_sign_at_inf(p, True) for p in seq) if a is None else _variations(
        p.sign_at(a) for p in seq
    )
    vb = _variations(_sign_at_inf(p, False) for p in seq) if b is None else _variations(
        p.sign_at(b) for p in seq
    )
    return va - vb


def count_real_roots(f: RationalPolynomial) -> int:
    """Number of distinct real roots of f."""
    if f.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if f.degree == 0:
        return 0
    return sturm_count(sturm_sequence(squarefree_part(f)))


def cauchy_bound(f: RationalPolynomial) -> Fraction:
    lc = abs(f.lc)
    return 1 + max((abs(c) / lc for c in f.coeffs[:-1]), default=Fraction(0))


def descartes_count(f: RationalPolynomial, a: Fraction, b: Fraction) -> int:
    """Sign variations bounding the roots of f in the open interval (a, b).

    Exact when the result is 0 or 1.
    """
    # roots in (a, b) <-> y in (0, 1) for f(a + (b-a) y) <-> x > 0 for
    # (1+x)^d * r(1/(1+x))
    cs = taylor_shift(list(f.coeffs), a)
    w = b - a
    pw = Fraction(1)
    for i in range(len(cs)):
        cs[i] *= pw
        pw *= w
    cs.reverse()
    cs = taylor_shift(cs, 1)
    return _variations((c > 0) - (c < 0) for c in cs)
