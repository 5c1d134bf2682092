"""Units of Z[theta]: verification, total positivity, torsion, logarithmic
embedding, subgroup rank and admissibility.

Anything that reduces to "is this real number zero?" for a logarithm of an
algebraic number cannot be settled by intervals alone.  Nonzero-ness is
certified by intervals; zero-ness only by an exact multiplicative relation
checked in the field.  When neither succeeds at the cap precision the answer
is Undecided.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import mpmath
from mpmath.libmp import from_rational, mpf_log, round_ceiling, round_floor

from otlck.exactnum import Precision, RationalPolynomial, RInterval
from otlck.exactnum.algebraic import mpf_to_fraction
from otlck.numfield import FieldElement, NumberField, embed, minimal_polynomial, norm


@dataclass(frozen=True)
class TriState:
    value: str
    cap_bits: int | None = None

    @classmethod
    def undecided(cls, cap_bits: int) -> TriState:
        return cls("undecided", cap_bits)

    @property
    def is_yes(self) -> bool:
        return self.value == "yes"

    @property
    def is_no(self) -> bool:
        return self.value == "no"

    @property
    def is_undecided(self) -> bool:
        return self.value == "undecided"

    def to_json(self):
        if self.is_undecided:
            return {"undecided": {"cap_bits": self.cap_bits}}
        return self.value

    def __repr__(self) -> str:
        return f"TriState.{self.value.upper()}" if not self.is_undecided else f"TriState.undecided({self.cap_bits})"


TriState.YES = TriState("yes")
TriState.NO = TriState("no")


# --- single units ---------------------------------------------------------------


def is_unit(a: FieldElement) -> bool:
    return a.is_integral() and norm(a) in (1, -1)


def real_sign(a: FieldElement, i: int, start_bits: int = 32) -> int:
    """Certified sign of sigma_i(a) for a real embedding i; 0 only if a == 0."""
    if a.is_zero():
        return 0
    bits = start_bits
    while True:
        iv = embed(a, i, Precision(bits, max(bits, 4096)))
        s = iv.sign()
        if s:
            return s
        bits *= 2


def is_totally_positive(u: FieldElement) -> bool:
    return all(real_sign(u, i) > 0 for i in range(1, u.field.s + 1))


def _totient(m: int) -> int:
    result, k, n = m, 2, m
    while k * k <= n:
        if n % k == 0:
            while n % k == 0:
                n //= k
            result -= result // k
        k += 1
    if n > 1:
        result -= result // n
    return result


def cyclotomic_orders(d: int) -> list[int]:
    """All m with phi(m) == d (phi(m) >= sqrt(m/2) bounds the search)."""
    return [m for m in range(1, 2 * d * d + 3) if _totient(m) == d]


def is_root_of_unity(u: FieldElement) -> bool:
    if not u.is_integral():
        return False
    mp, d = minimal_polynomial(u)
    for m in cyclotomic_orders(d):
        xm1 = RationalPolynomial([-1] + [0] * (m - 1) + [1])
        if (xm1 % mp).is_zero():
            return True
    return False


# --- logarithmic embedding ------------------------------------------------------


def log_interval(iv: RInterval, bits: int) -> RInterval:
    """Outward-rounded enclosure of log over a positive rational interval."""
    if iv.lo <= 0:
        raise ValueError("log of an interval not bounded away from zero")
    prec = bits + 16
    lo = from_rational(iv.lo.numerator, iv.lo.denominator, prec, round_floor)
    hi = from_rational(iv.hi.numerator, iv.hi.denominator, prec, round_ceiling)
    a = mpf_to_fraction(mpf_log(lo, prec, round_floor))
    b = mpf_to_fraction(mpf_log(hi, prec, round_ceiling))
    # one extra unit of slack on top of directed rounding
    pad = Fraction(1, 2 ** (prec - 4)) * max(1, abs(a), abs(b))
    return RInterval(a - pad, b + pad)


def _abs_enclosure(v) -> RInterval:
    return v.abs() if isinstance(v, RInterval) else v.abs2()


def log_embedding(u: FieldElement, p: Precision = Precision(), complex_weight: int = 2) -> list[RInterval]:
    """Intervals around (log|s_1(u)|, ..., log|s_s(u)|, w log|s_{s+1}(u)|, ...).

    Each has width <= 2^-p.working.  ``complex_weight`` is 2 for the usual
    Dirichlet normalisation.
    """
    K = u.field
    target = Fraction(1, 2**p.working)
    out = []
    for i in range(1, K.s + K.t + 1):
        bits = p.working + 8
        while True:
            v = _abs_enclosure(embed(u, i, Precision(bits, max(bits, p.cap))))
            if v.lo > 0:
                lg = log_interval(v, bits)
                if i > K.s:
                    # log|z|^2 = 2 log|z|; rescale to the requested weight
                    lg = lg * Fraction(complex_weight, 2)
                if lg.width <= target:
                    out.append(lg)
                    break
            bits *= 2
    return out


def norm_product_interval(u: FieldElement, p: Precision = Precision()) -> RInterval:
    """prod_{i<=s} |s_i(u)| * prod_{j<=t} |s_{s+j}(u)|^2, which is |N(u)|."""
    K = u.field
    acc = RInterval.point(1)
    for i in range(1, K.s + K.t + 1):
        acc = acc * _abs_enclosure(embed(u, i, p))
    return acc


# --- subgroups ------------------------------------------------------------------


class SubgroupError(ValueError):
    def __init__(self, check: str, message: str):
        super().__init__(f"{check}: {message}")
        self.check = check


@dataclass(frozen=True)
class UnitSubgroup:
    field: NumberField
    generators: tuple[FieldElement, ...]
    unit_verified: bool = False
    totally_positive_verified: bool = False
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "generators": [g.to_json() for g in self.generators]}


def make_subgroup(K: NumberField, generators: Sequence, notes: Sequence[str] = ()) -> UnitSubgroup:
    """Wrap generators (FieldElements or coordinate lists) and run the unit checks."""
    gens = tuple(g if isinstance(g, FieldElement) else K.element(g) for g in generators)
    units = all(is_unit(g) for g in gens)
    tp = units and all(is_totally_positive(g) for g in gens)
    return UnitSubgroup(K, gens, units, tp, tuple(notes))


def _independent(rows: list[list[RInterval]]) -> bool:
    """Certified full row rank by interval Gaussian elimination."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    used_cols: set[int] = set()
    remaining = list(range(len(rows)))
    while remaining:
        best = None
        for r in remaining:
            for c in range(ncols):
                if c in used_cols:
                    continue
                iv = rows[r][c]
                if iv.excludes_zero():
                    mig = min(abs(iv.lo), abs(iv.hi))
                    if best is None or mig > best[0]:
                        best = (mig, r, c)
        if best is None:
            return False
        _, pr, pc = best
        remaining.remove(pr)
        used_cols.add(pc)
        piv = rows[pr][pc]
        for r in remaining:
            fac = rows[r][pc] / piv
            rows[r] = [x - fac * y for x, y in zip(rows[r], rows[pr])]
    return True


def _determinant(rows: list[list[RInterval]]) -> RInterval | None:
    """Interval determinant of a square matrix, or None if no certified pivot exists."""
    n = len(rows)
    rows = [list(r) for r in rows]
    det = RInterval.point(1)
    for k in range(n):
        pr = max(
            (r for r in range(k, n) if rows[r][k].excludes_zero()),
            key=lambda r: min(abs(rows[r][k].lo), abs(rows[r][k].hi)),
            default=None,
        )
        if pr is None:
            return None
        if pr != k:
            rows[k], rows[pr] = rows[pr], rows[k]
            det = -det
        piv = rows[k][k]
        det = det * piv
        for r in range(k + 1, n):
            fac = rows[r][k] / piv
            rows[r] = [x - fac * y for x, y in zip(rows[r], rows[k])]
    return det


def _relation_candidate(basis_vecs, v, bits: int, max_den: int = 1024):
    """Guess integers (m, k) with m v ~ sum k_i b_i from interval midpoints."""
    ctx = mpmath.MPContext()
    ctx.prec = bits
    k = len(basis_vecs)
    if k == 0:
        return None
    B = ctx.matrix([[ctx.mpf(b[j].mid.numerator) / b[j].mid.denominator for b in basis_vecs] for j in range(len(v))])
    y = ctx.matrix([ctx.mpf(x.mid.numerator) / x.mid.denominator for x in v])
    try:
        x = ctx.lu_solve(B.T * B, B.T * y)
    except ZeroDivisionError:
        return None
    # continued fractions; the denominator bound grows with the precision
    bound = min(max_den, 1 << (bits // 4))
    fracs = [mpf_to_fraction(x[i]).limit_denominator(bound) for i in range(k)]
    m = 1
    for f in fracs:
        m = m * f.denominator // gcd(m, f.denominator)
    if m > bound:
        return None
    ks = [int(f * m) for f in fracs]
    tol = ctx.ldexp(1, -max(bits // 3, 20))
    if all(abs(m * x[i] - ks[i]) < tol for i in range(k)):
        return m, ks
    return None


def _verify_relation(g: FieldElement, basis: list[FieldElement], m: int, ks: list[int]) -> bool:
    w = g**m
    for b, e in zip(basis, ks):
        if e:
            w = w * b ** (-e)
    return is_root_of_unity(w)


@dataclass(frozen=True)
class RankAnalysis:
    rank: int
    certainty: TriState
    basis: tuple[FieldElement, ...]
    torsion: tuple[FieldElement, ...]
    relations: tuple[tuple[FieldElement, int, tuple[int, ...]], ...]
    bits: int


def analyze_rank(U: UnitSubgroup, p: Precision = Precision(), complex_weight: int = 2) -> RankAnalysis:
    """Greedy certified rank: each generator is either certified independent of
    the basis so far (intervals) or certified dependent (exact relation)."""
    if not U.unit_verified:
        raise SubgroupError("unit", "generators are not all verified units")
    torsion = tuple(g for g in U.generators if is_root_of_unity(g))
    gens = [g for g in U.generators if g not in torsion]
    basis: list[FieldElement] = []
    relations = []
    idx = 0
    bits = p.working
    for bits in p.ladder():
        prec = Precision(bits, p.cap)
        logs = {id(g): log_embedding(g, prec, complex_weight) for g in gens[idx:] + basis}
        while idx < len(gens):
            g = gens[idx]
            rows = [logs[id(b)] for b in basis] + [logs[id(g)]]
            if _independent(rows):
                basis.append(g)
            else:
                cand = _relation_candidate([logs[id(b)] for b in basis], logs[id(g)], bits)
                if cand is None or not _verify_relation(g, basis, *cand):
                    break
                relations.append((g, cand[0], tuple(cand[1])))
            idx += 1
        if idx == len(gens):
            return RankAnalysis(len(basis), TriState.YES, tuple(basis), torsion, tuple(relations), bits)
    return RankAnalysis(len(basis), TriState.undecided(p.cap), tuple(basis), torsion, tuple(relations), bits)


def subgroup_rank(U: UnitSubgroup, p: Precision = Precision()) -> tuple[int, TriState]:
    a = analyze_rank(U, p)
    return a.rank, a.certainty


@dataclass(frozen=True)
class AdmissibilityReport:
    verdict: TriState
    rank: RankAnalysis | None = None
    # interval determinant of the s x s block of real log coordinates
    determinant: RInterval | None = None
    bits: int | None = None

    def to_json(self) -> dict:
        from otlck.serialize import fmt_rational

        out = {"admissible": self.verdict.to_json(), "bits": self.bits}
        if self.rank is not None:
            out["rank"] = self.rank.rank
            out["rank_certainty"] = self.rank.certainty.to_json()
            out["basis"] = [b.to_json() for b in self.rank.basis]
            out["relations"] = [
                {"generator": g.to_json(), "exponent": m, "basis_exponents": list(ks)}
                for g, m, ks in self.rank.relations
            ]
        if self.determinant is not None:
            out["determinant"] = [fmt_rational(self.determinant.lo), fmt_rational(self.determinant.hi)]
        return out


def admissibility_report(U: UnitSubgroup, p: Precision = Precision(), complex_weight: int = 2) -> AdmissibilityReport:
    K = U.field
    if K.s < 1 or K.t < 1:
        raise SubgroupError("signature", f"need s >= 1 and t >= 1, field has {K.signature}")
    if not U.unit_verified:
        raise SubgroupError("unit", "generators are not all verified units")
    if len(U.generators) < K.s:
        return AdmissibilityReport(TriState.NO)
    # a certified wrong rank is a No whatever the signs; positivity is only
    # demanded of subgroups that could otherwise be admissible
    a = analyze_rank(U, p, complex_weight)
    if a.certainty.is_yes and a.rank != K.s:
        return AdmissibilityReport(TriState.NO, a, bits=a.bits)
    if not U.totally_positive_verified:
        raise SubgroupError("totally-positive", "generators are not all totally positive")
    if a.certainty.is_undecided:
        return AdmissibilityReport(a.certainty, a, bits=a.bits)
    for bits in p.ladder():
        if bits < a.bits:
            continue
        prec = Precision(bits, p.cap)
        rows = [log_embedding(b, prec, complex_weight)[: K.s] for b in a.basis]
        det = _determinant(rows)
        if det is not None and det.excludes_zero():
            short = det.dyadic_hull(bits + 4)
            return AdmissibilityReport(TriState.YES, a, short if short.excludes_zero() else det, bits)
    return AdmissibilityReport(TriState.undecided(p.cap), a, bits=p.cap)


def is_admissible(U: UnitSubgroup, p: Precision = Precision(), complex_weight: int = 2) -> TriState:
    """Projection of the log lattice of U onto the real coordinates is a full lattice."""
    return admissibility_report(U, p, complex_weight).verdict
