"""Homothetical / isometrical classification of units.

A unit is Kronecker-compatible when all of its complex embeddings
sigma_{s+1}(u), ..., sigma_{s+t}(u) share one modulus; it is isometrical when
that modulus is 1 and homothetical otherwise.  Real embeddings play no role.

Distinct moduli are certified by disjoint enclosures.  Equal moduli need the
exact route: |sigma(u)|^2 = sigma(u) * conj(sigma(u)) is a root of the
squarefree part of the composed product of the minimal polynomial of u with
itself, and two such roots are compared with ``alg_equal``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from otlck.exactnum import Precision, RationalPolynomial, RealAlgebraic, RInterval, alg_equal
from otlck.exactnum.algebraic import isolate_in, modulus_polynomial
from otlck.numfield import FieldElement, embed, minimal_polynomial
from otlck.units import is_unit

# enclosure precisions tried before falling back to the exact comparison
_FAST_BITS = (64, 128, 256)


class UnitKind(str, enum.Enum):
    ISOMETRICAL = "Isometrical"
    HOMOTHETICAL = "Homothetical"
    NONKRONECKER = "NonKronecker"


@dataclass(frozen=True)
class UnitClass:
    kind: UnitKind
    modulus_squared: RealAlgebraic | None = None
    witness: tuple[int, int] | None = None
    # disjoint enclosures of |sigma_{s+i}|^2 and |sigma_{s+j}|^2 for the witness
    witness_intervals: tuple[RInterval, RInterval] | None = None

    @property
    def is_kronecker(self) -> bool:
        return self.kind is not UnitKind.NONKRONECKER

    def to_json(self) -> dict:
        from otlck.serialize import fmt_rational

        out = {
            "kind": self.kind.value,
            "modulus_squared": self.modulus_squared.to_json() if self.modulus_squared else None,
            "witness": list(self.witness) if self.witness else None,
        }
        if self.witness_intervals:
            out["witness_intervals"] = [[fmt_rational(iv.lo), fmt_rational(iv.hi)] for iv in self.witness_intervals]
        return out


def _require_complex(u: FieldElement):
    if u.field.t == 0:
        raise ValueError("t = 0: field has no complex embeddings")


def modulus_enclosure(u: FieldElement, j: int, bits: int) -> RInterval:
    """Enclosure of |sigma_{s+j}(u)|^2 of width about 2^-bits."""
    K = u.field
    return embed(u, K.s + j, Precision(bits, max(bits, 4096))).abs2()


def complex_modulus_squared(u: FieldElement, j: int) -> RealAlgebraic:
    """|sigma_{s+j}(u)|^2 as an exact real algebraic number."""
    _require_complex(u)
    mp, _ = minimal_polynomial(u)
    g = modulus_polynomial(mp)
    return isolate_in(g, lambda bits: modulus_enclosure(u, j, bits))


def _separated(u: FieldElement, i: int, j: int, bits_seq=_FAST_BITS):
    for bits in bits_seq:
        a, b = modulus_enclosure(u, i, bits), modulus_enclosure(u, j, bits)
        if not a.intersects(b):
            # short dyadic endpoints keep the serialized witness readable
            ra, rb = a.dyadic_hull(bits + 4), b.dyadic_hull(bits + 4)
            return (ra, rb) if not ra.intersects(rb) else (a, b)
    return None


def _compare_moduli(u: FieldElement, i: int, j: int):
    """(equal, separating enclosures or None)."""
    sep = _separated(u, i, j)
    if sep is not None:
        return False, sep
    if alg_equal(complex_modulus_squared(u, i), complex_modulus_squared(u, j)):
        return True, None
    bits = _FAST_BITS[-1]
    while sep is None:
        bits *= 2
        sep = _separated(u, i, j, (bits,))
    return False, sep


def equal_complex_moduli(u: FieldElement, i: int, j: int) -> bool:
    """Exact test of |sigma_{s+i}(u)| == |sigma_{s+j}(u)| for 1 <= i, j <= t."""
    _require_complex(u)
    t = u.field.t
    if not (1 <= i <= t and 1 <= j <= t):
        raise IndexError(f"complex embedding indices must lie in 1..{t}")
    if i == j:
        return True
    return _compare_moduli(u, i, j)[0]


def classify_unit(u: FieldElement) -> UnitClass:
    _require_complex(u)
    if not is_unit(u):
        raise ValueError("classify_unit expects a unit of Z[theta]")
    t = u.field.t
    # every failing pair involves index 1 when (1, j) all pass, so the first
    # failing (1, j) is the lexicographically least failing pair
    for j in range(2, t + 1):
        equal, sep = _compare_moduli(u, 1, j)
        if not equal:
            return UnitClass(UnitKind.NONKRONECKER, witness=(1, j), witness_intervals=sep)
    m = complex_modulus_squared(u, 1)
    one = RealAlgebraic.from_rational(1)
    kind = UnitKind.ISOMETRICAL if alg_equal(m, one) else UnitKind.HOMOTHETICAL
    return UnitClass(kind, modulus_squared=m)


def is_gxk_form(f: RationalPolynomial, k: int) -> bool:
    """True iff f(x) = g(x^k) for some polynomial g."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return all(c == 0 or e % k == 0 for e, c in enumerate(f.coeffs))


def case1_divisibility(s: int, t: int) -> bool:
    """Whether 2t+1 divides s+2t."""
    if s < 1 or t < 1:
        raise ValueError("need s >= 1 and t >= 1")
    return (s + 2 * t) % (2 * t + 1) == 0
