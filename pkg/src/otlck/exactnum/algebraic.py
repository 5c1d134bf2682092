"""Real and complex algebraic numbers as (defining polynomial, isolating region).

Real roots are isolated with Sturm sequences and refined by sign-checked
bisection/Newton.  Complex roots are seeded numerically (mpmath's
simultaneous iteration) and then certified exactly with a Rouche test on
Gaussian-rational Taylor coefficients: a disc |z - c| <= r contains exactly
one root when the linear Taylor term dominates all others on its boundary.

A ComplexAlgebraic keeps the disc (center, radius) alongside its box.  The
certificate it carries is: the root lies in the box, and the disc of radius
4*radius about center contains exactly one root and covers the box.  A
refinement is accepted only if its new inner disc sits inside the old outer
disc, which pins it to the same root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from otlck.exactnum.interval import CBox, RInterval, eval_interval
from otlck.exactnum.poly import (
    RationalPolynomial,
    as_fraction,
    cauchy_bound,
    descartes_count,
    gcd,
    is_squarefree,
    squarefree_part,
    sturm_count,
    sturm_sequence,
    symmetric_square_product,
)

# hard ceiling for internal loops that are guaranteed to terminate in theory
_MAX_BITS = 1 << 15


@dataclass(frozen=True)
class RealAlgebraic:
    """The unique root of ``defining`` in the closed interval [lo, hi]."""

    defining: RationalPolynomial
    lo: Fraction
    hi: Fraction

    @classmethod
    def from_rational(cls, c) -> RealAlgebraic:
        c = as_fraction(c)
        return cls(RationalPolynomial((-c, 1)), c, c)

    @property
    def interval(self) -> RInterval:
        return RInterval(self.lo, self.hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __float__(self) -> float:
        return float(refine(self, Fraction(1, 2**60)).interval.mid)

    def approx(self, bits: int) -> Fraction:
        return refine(self, Fraction(1, 2**bits)).interval.mid

    def to_json(self) -> dict:
        from otlck.serialize import fmt_rational

        return {"poly": self.defining.to_json(), "interval": [fmt_rational(self.lo), fmt_rational(self.hi)]}


@dataclass(frozen=True)
class ComplexAlgebraic:
    """The unique root of ``defining`` in ``box`` (see module docstring)."""

    defining: RationalPolynomial
    box: CBox
    center: tuple[Fraction, Fraction]
    radius: Fraction

    def conjugate(self) -> ComplexAlgebraic:
        return ComplexAlgebraic(
            self.defining, self.box.conj(), (self.center[0], -self.center[1]), self.radius
        )

    @property
    def width(self) -> Fraction:
        return self.box.width

    def __complex__(self) -> complex:
        b = refine(self, Fraction(1, 2**60)).box
        return complex(float(b.re.mid), float(b.im.mid))

    def to_json(self) -> dict:
        from otlck.serialize import fmt_rational

        b = self.box
        return {
            "poly": self.defining.to_json(),
            "box": [fmt_rational(x) for x in (b.re.lo, b.re.hi, b.im.lo, b.im.hi)],
        }


# --- mpmath glue ------------------------------------------------------------------


def _ctx(bits: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


def _mpf_of(ctx, q: Fraction):
    return ctx.mpf(q.numerator) / q.denominator


def mpf_to_fraction(x) -> Fraction:
    """Exact value of an mpf (or of a raw mpf tuple)."""
    sign, man, exp, _ = x if isinstance(x, tuple) else x._mpf_
    man, exp = (-1 if sign else 1) * int(man), int(exp)
    if man == 0:
        return Fraction(0)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)


def _pow2_floor(q: Fraction) -> Fraction:
    """Largest power of two <= q (q > 0)."""
    e = q.numerator.bit_length() - q.denominator.bit_length()
    p = Fraction(2) ** e
    while p > q:
        p /= 2
    while p * 2 <= q:
        p *= 2
    return p


def _bits_for(target: Fraction) -> int:
    if target >= 1:
        return 16
    return max(16, target.denominator.bit_length() - target.numerator.bit_length() + 9)


# --- real roots --------------------------------------------------------------------


def isolate_real_roots(f: RationalPolynomial) -> list[RealAlgebraic]:
    """Sorted, pairwise disjoint isolating intervals of width <= 1 for the real roots of f."""
    if f.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    g = squarefree_part(f)
    if g.degree <= 0:
        return []
    seq = sturm_sequence(g)
    m = cauchy_bound(g)
    M = Fraction(1)
    while M < m:
        M *= 2
    out: list[RealAlgebraic] = []

    def split(a: Fraction, b: Fraction, n: int):
        if n == 0:
            return
        if n == 1 and b - a <= 1:
            out.append(RealAlgebraic(g, a, b))
            return
        mid = (a + b) / 2
        k = 3
        while g(mid) == 0:
            mid = a + (b - a) * Fraction(k // 2 + 1, k + 2)
            k += 2
        left = sturm_count(seq, a, mid)
        split(a, mid, left)
        split(mid, b, n - left)

    split(-M, M, sturm_count(seq, -M, M))
    return out


def _refine_real(a: RealAlgebraic, target: Fraction) -> RealAlgebraic:
    f = a.defining
    lo, hi = a.lo, a.hi
    if hi - lo <= target:
        return a
    if f(lo) == 0:
        return RealAlgebraic(f, lo, lo)
    if f(hi) == 0:
        return RealAlgebraic(f, hi, hi)
    slo = f.sign_at(lo)
    # bisect until Newton can take over
    while hi - lo > target:
        if hi - lo < Fraction(1, 2**20):
            res = _newton_real(f, lo, hi, slo, target)
            if res is not None:
                return RealAlgebraic(f, *res)
        mid = (lo + hi) / 2
        s = f.sign_at(mid)
        if s == 0:
            return RealAlgebraic(f, mid, mid)
        if s == slo:
            lo = mid
        else:
            hi = mid
    return RealAlgebraic(f, lo, hi)


def _newton_real(f, lo, hi, slo, target):
    bits = _bits_for(target) + 16
    ctx = _ctx(bits)
    cs = [_mpf_of(ctx, c) for c in reversed(f.coeffs)]
    dcs = [_mpf_of(ctx, c) for c in reversed(f.derivative().coeffs)]
    x = _mpf_of(ctx, (lo + hi) / 2)
    for _ in range(200):
        d = ctx.polyval(dcs, x)
        if d == 0:
            return None
        step = ctx.polyval(cs, x) / d
        x -= step
        if abs(step) < ctx.ldexp(1, -bits + 4):
            break
    c = mpf_to_fraction(x)
    half = _pow2_floor(target / 2)
    a, b = max(lo, c - half), min(hi, c + half)
    if a >= b:
        return None
    sa, sb = f.sign_at(a), f.sign_at(b)
    if sa == 0:
        return a, a
    if sb == 0:
        return b, b
    if sa == slo and sb != slo:
        return a, b
    return None


# --- complex roots -----------------------------------------------------------------


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _taylor_at(f: RationalPolynomial, c: tuple[Fraction, Fraction]) -> list[tuple[Fraction, Fraction]]:
    """Coefficients of f(c + w) in w, constant first, over Q(i)."""
    cs = [(x, Fraction(0)) for x in f.coeffs]
    n = len(cs)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            p = _cmul(c, cs[j + 1])
            cs[j] = (cs[j][0] + p[0], cs[j][1] + p[1])
    return cs


def _rouche_one(taylor, r: Fraction) -> bool:
    """Exactly one root in |w| <= r if |a1| r > sum_{k != 1} |a_k| r^k."""
    a1 = taylor[1]
    lhs = (a1[0] ** 2 + a1[1] ** 2) * r * r
    s = Fraction(0)
    pw = Fraction(1)
    for k, (x, y) in enumerate(taylor):
        if k != 1:
            s += (abs(x) + abs(y)) * pw
        pw *= r
    return lhs > s * s


def _certify(f, center, r) -> bool:
    if f.degree == 1:
        return True
    t = _taylor_at(f, center)
    return _rouche_one(t, r) and _rouche_one(t, 4 * r)


def _square(center, r) -> CBox:
    return CBox(RInterval(center[0] - r, center[0] + r), RInterval(center[1] - r, center[1] + r))


def _numeric_roots(f: RationalPolynomial, bits: int):
    ctx = _ctx(bits)
    cs = [_mpf_of(ctx, c) for c in reversed(f.coeffs)]
    steps = 50 + 10 * f.degree
    for _ in range(6):
        try:
            return ctx, ctx.polyroots(cs, maxsteps=steps, extraprec=2 * bits)
        except mpmath.libmp.NoConvergence:
            steps *= 4
    raise ArithmeticError(f"numeric root seeding did not converge for {f}")


def isolate_complex_roots(f: RationalPolynomial) -> list[ComplexAlgebraic]:
    """Upper half-plane roots of squarefree f, one per conjugate pair.

    Boxes are pairwise disjoint and lie strictly above the real axis.  Sorted
    by (real part, imaginary part) of the box centers.
    """
    if f.is_zero() or not is_squarefree(f):
        raise ValueError("isolate_complex_roots requires a squarefree polynomial")
    d = f.degree
    k = (d - sturm_count(sturm_sequence(f))) // 2 if d > 0 else 0
    if k == 0:
        return []
    bits = 64
    while bits <= _MAX_BITS:
        res = _try_isolate_complex(f, k, bits)
        if res is not None:
            return sorted(res, key=lambda z: (z.center[0], z.center[1]))
        bits *= 2
    raise ArithmeticError(f"complex root isolation failed for {f}")


def _try_isolate_complex(f, k, bits):
    ctx, roots = _numeric_roots(f, bits)
    roots = sorted(roots, key=lambda z: -ctx.im(z))
    chosen = roots[:k]
    if any(ctx.im(z) <= 0 for z in chosen):
        return None
    d = f.degree
    out = []
    for idx, z in enumerate(chosen):
        others = [w for j, w in enumerate(roots) if j != idx]
        sep = min(abs(z - w) for w in others) if others else ctx.mpf(1)
        sep = min(sep, 2 * ctx.im(z))  # distance to the conjugate
        center = (mpf_to_fraction(ctx.re(z)), mpf_to_fraction(ctx.im(z)))
        r = _pow2_floor(mpf_to_fraction(sep) / (8 * d))
        for _ in range(8):
            if _certify(f, center, r):
                break
            r /= 2
        else:
            return None
        box = _square(center, r)
        if box.im.lo <= 0:
            return None
        out.append(ComplexAlgebraic(f, box, center, r))
    for i in range(len(out)):
        for j in range(i):
            if out[i].box.intersects(out[j].box):
                return None
    return out


def _refine_complex(z: ComplexAlgebraic, target: Fraction) -> ComplexAlgebraic:
    if z.box.width <= target:
        return z
    f = z.defining
    bits = _bits_for(target) + 16
    cr, ci = z.center
    R = 4 * z.radius
    while bits <= _MAX_BITS:
        ctx = _ctx(bits)
        cs = [_mpf_of(ctx, c) for c in reversed(f.coeffs)]
        dcs = [_mpf_of(ctx, c) for c in reversed(f.derivative().coeffs)]
        x = ctx.mpc(_mpf_of(ctx, cr), _mpf_of(ctx, ci))
        for _ in range(200):
            step = ctx.polyval(cs, x) / ctx.polyval(dcs, x)
            x -= step
            if abs(step) < ctx.ldexp(1, -bits + 4):
                break
        c = (mpf_to_fraction(ctx.re(x)), mpf_to_fraction(ctx.im(x)))
        r = min(_pow2_floor(target / 2), z.radius)
        for _ in range(8):
            dist2 = (c[0] - cr) ** 2 + (c[1] - ci) ** 2
            if R - r >= 0 and dist2 <= (R - r) ** 2 and _certify(f, c, r):
                old = z.box
                sq = _square(c, r)
                box = CBox(
                    RInterval(max(old.re.lo, sq.re.lo), min(old.re.hi, sq.re.hi)),
                    RInterval(max(old.im.lo, sq.im.lo), min(old.im.hi, sq.im.hi)),
                )
                return ComplexAlgebraic(f, box, c, r)
            r /= 2
        bits *= 2
    raise ArithmeticError("complex refinement failed to certify")


def refine(a, target_width):
    """Shrink the isolating region of a to width <= target_width."""
    target = as_fraction(target_width)
    if target <= 0:
        raise ValueError("target width must be positive")
    if isinstance(a, RealAlgebraic):
        return _refine_real(a, target)
    if isinstance(a, ComplexAlgebraic):
        return _refine_complex(a, target)
    raise TypeError(f"cannot refine {type(a).__name__}")


@lru_cache(maxsize=4096)
def refine_bits(a, bits: int):
    """Memoised refine to width 2^-bits; values are immutable so this is pure."""
    return refine(a, Fraction(1, 2**bits))


# --- exact comparisons ---------------------------------------------------------------


def closed_root_count(g: RationalPolynomial, lo: Fraction, hi: Fraction) -> int | None:
    """Roots of squarefree g in [lo, hi] when Descartes pins it to 0 or 1, else None."""
    if lo == hi:
        return int(g(lo) == 0)
    ends = int(g(lo) == 0) + int(g(hi) == 0)
    v = descartes_count(g, lo, hi)
    if v <= 1:
        return ends + v
    return None


def isolate_in(g: RationalPolynomial, enclosure, start_bits: int = 16) -> RealAlgebraic:
    """Turn a shrinking enclosure of some real root of g into an isolating interval.

    ``enclosure(bits)`` must return an RInterval containing the root with width
    going to zero as bits grows.
    """
    bits = start_bits
    while bits <= _MAX_BITS:
        iv = enclosure(bits)
        if closed_root_count(g, iv.lo, iv.hi) == 1:
            return RealAlgebraic(g, iv.lo, iv.hi)
        bits *= 2
    raise ArithmeticError("failed to isolate root inside enclosure")


def alg_equal(a: RealAlgebraic, b: RealAlgebraic) -> bool:
    """Exact equality of two real algebraic numbers.

    With g = gcd of the defining polynomials, g has at most one root in the
    intersection of the two isolating intervals (it divides both), so a sign
    test at the intersection endpoints settles it.
    """
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        return False
    g = gcd(a.defining, b.defining)
    if g.degree <= 0:
        return False
    if lo == hi:
        return g(lo) == 0
    glo, ghi = g(lo), g(hi)
    return glo == 0 or ghi == 0 or (glo > 0) != (ghi > 0)


@lru_cache(maxsize=512)
def modulus_polynomial(f: RationalPolynomial) -> RationalPolynomial:
    """Squarefree polynomial vanishing at every product of two roots of f.

    Equals the squarefree part of composed_product(f, f).
    """
    return squarefree_part(symmetric_square_product(f))


def modulus_squared(z: ComplexAlgebraic) -> RealAlgebraic:
    """|z|^2 = z * conj(z) as a real algebraic number."""
    g = modulus_polynomial(z.defining)
    return isolate_in(g, lambda bits: refine_bits(z, bits).box.abs2())


def real_enclosure(a: RealAlgebraic | ComplexAlgebraic, bits: int):
    if isinstance(a, RealAlgebraic):
        return refine_bits(a, bits).interval
    return refine_bits(a, bits).box


def eval_at(p: RationalPolynomial, root, bits: int):
    """Enclosure of p(root) using the root refined to 2^-bits."""
    return eval_interval(p, real_enclosure(root, bits))
