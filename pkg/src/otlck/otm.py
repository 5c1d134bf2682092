"""LCK verdicts for Oeljeklaus-Toma manifolds X(K, U).

Verdict table (non-Kahler always):

    t = 1               -> an LCK structure exists
    s = 1, t > 1        -> no LCK structure
    1 < s < t           -> no LCK metric
    otherwise           -> unknown, unless some generator of U has unequal
                           complex moduli, which rules out an LCK metric

The generator-only check is enough because equal moduli at all complex
embeddings is closed under products and inverses: if every generator passes,
every element of U does.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from otlck.exactnum import Precision, RationalPolynomial
from otlck.kronecker import UnitClass, UnitKind, classify_unit
from otlck.numfield import IRREDUCIBILITY_WARNING, ORDER_CAVEAT, FieldElement, NumberField, minimal_polynomial
from otlck.units import (
    TriState,
    UnitSubgroup,
    is_admissible,
    is_totally_positive,
    is_unit,
    subgroup_rank,
)

PART_A = "TheoremPartA"
PART_B = "TheoremPartB"
PART_C = "TheoremPartC"
MAIN = "MainTheorem"
LEMMA = "LemmaObstruction"


class InvalidOTInput(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__(f"invalid Oeljeklaus-Toma input: {report.failed_check}")
        self.report = report


class TheoremContradiction(AssertionError):
    pass


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    failed_check: str | None
    failures: tuple[str, ...]
    checks: dict = field(default_factory=dict)
    caveats: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "failed_check": self.failed_check,
            "failures": list(self.failures),
            "checks": {k: (v.to_json() if isinstance(v, TriState) else v) for k, v in self.checks.items()},
            "caveats": list(self.caveats),
        }


def _base_caveats(K: NumberField) -> list[str]:
    out = [ORDER_CAVEAT]
    if IRREDUCIBILITY_WARNING in K.warnings:
        out.append(IRREDUCIBILITY_WARNING)
    return out


def validate_ot_input(K: NumberField, U: UnitSubgroup, p: Precision = Precision()) -> ValidationReport:
    """Run every construction prerequisite; hard failures invalidate the input."""
    if U.field != K:
        raise ValueError("subgroup belongs to a different field")
    checks: dict = {}
    failures: list[str] = []
    caveats = _base_caveats(K)
    caveats += [n for n in getattr(U, "notes", ()) if n not in caveats]

    checks["s>=1"] = K.s >= 1
    checks["t>=1"] = K.t >= 1
    if K.s < 1:
        failures.append("s>=1")
    if K.t < 1:
        failures.append("t=0" if K.t == 0 else "t>=1")

    units_ok = all(is_unit(g) for g in U.generators)
    checks["unit"] = units_ok
    if not units_ok:
        failures.append("unit")
    tp_ok = units_ok and all(is_totally_positive(g) for g in U.generators)
    checks["totally-positive"] = tp_ok
    if units_ok and not tp_ok:
        failures.append("totally-positive")

    if units_ok:
        verified = UnitSubgroup(K, U.generators, True, tp_ok)
        rank, certainty = subgroup_rank(verified, p)
        checks["rank"] = rank
        checks["rank-certainty"] = certainty
        if certainty.is_yes and rank != K.s:
            failures.append("rank")
        elif certainty.is_undecided:
            caveats.append("rank-undecided")
        if not failures:
            adm = is_admissible(verified, p)
            checks["admissible"] = adm
            if adm.is_no:
                failures.append("admissible")
            elif adm.is_undecided:
                caveats.append("admissibility-undecided")
    return ValidationReport(not failures, failures[0] if failures else None, tuple(failures), checks, tuple(caveats))


@dataclass(frozen=True)
class Obstruction:
    obstructed: bool
    generator_index: int | None = None
    generator: FieldElement | None = None
    unit_class: UnitClass | None = None

    def to_json(self) -> dict | None:
        if not self.obstructed:
            return None
        return {
            "generator_index": self.generator_index,
            "generator": self.generator.to_json(),
            "pair": list(self.unit_class.witness),
            "class": self.unit_class.to_json(),
        }


def lemma_obstruction(U: UnitSubgroup) -> Obstruction:
    """First generator whose complex moduli are not all equal, if any."""
    if U.field.t < 1:
        raise ValueError("t = 0: no complex embeddings")
    for idx, g in enumerate(U.generators):
        c = classify_unit(g)
        if c.kind is UnitKind.NONKRONECKER:
            return Obstruction(True, idx, g, c)
    return Obstruction(False)


def decision_table(s: int, t: int) -> str | None:
    """Theorem covering signature (s, t), or None when no theorem applies."""
    if s < 1 or t < 1:
        raise ValueError("Oeljeklaus-Toma manifolds need s >= 1 and t >= 1")
    if t == 1:
        return PART_B
    if s == 1:
        return PART_C
    if s < t:
        return MAIN
    return None


@dataclass(frozen=True)
class LckVerdict:
    lck: str  # "exists" | "no" | "unknown"
    reason: str | None
    kahler: bool = False
    kahler_reason: str = PART_A
    witness: Obstruction | None = None
    witness_role: str | None = None  # "primary" | "auxiliary"
    caveats: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "kahler": self.kahler,
            "lck": self.lck,
            "reason": self.reason,
            "witness": self.witness.to_json() if self.witness else None,
            "witness_role": self.witness_role,
            "caveats": list(self.caveats),
        }


def verdict_for_signature(s: int, t: int, obstruction: Obstruction | None = None, caveats=()) -> LckVerdict:
    """Combine the theorem table with an optional lemma obstruction."""
    reason = decision_table(s, t)
    caveats = tuple(caveats)
    witness = obstruction if obstruction is not None and obstruction.obstructed else None
    if reason == PART_B:
        return LckVerdict("exists", reason, caveats=caveats)
    if reason is not None:
        return LckVerdict("no", reason, witness=witness, witness_role="auxiliary" if witness else None, caveats=caveats)
    if witness:
        return LckVerdict("no", LEMMA, witness=witness, witness_role="primary", caveats=caveats)
    return LckVerdict("unknown", None, caveats=caveats)


def lck_verdict(K: NumberField, U: UnitSubgroup, p: Precision = Precision()) -> LckVerdict:
    report = validate_ot_input(K, U, p)
    if not report.valid:
        raise InvalidOTInput(report)
    obs = lemma_obstruction(U) if K.t > 1 else Obstruction(False)
    return verdict_for_signature(K.s, K.t, obs, report.caveats)


@dataclass(frozen=True)
class DegreeRecord:
    unit: FieldElement
    unit_class: UnitClass
    degree: int
    minimal_polynomial: RationalPolynomial
    contradiction: bool = False

    def to_json(self) -> dict:
        return {
            "unit": self.unit.to_json(),
            "class": self.unit_class.kind.value,
            "degree": self.degree,
            "minpoly": self.minimal_polynomial.to_json(),
            "record": "THEOREM-CONTRADICTION" if self.contradiction else "ok",
        }


def homothetical_degree_report(K: NumberField, units, *, strict: bool = False) -> list[DegreeRecord]:
    """Class, degree and minimal polynomial of each unit.

    In signatures with 1 < s < t a homothetical unit of full degree n would be
    a counterexample; such units are flagged (or raised when ``strict``).
    """
    bound_applies = 1 < K.s < K.t
    out = []
    for u in units:
        if not is_unit(u):
            raise ValueError(f"{u} is not a unit")
        c = classify_unit(u)
        mp, d = minimal_polynomial(u)
        bad = bound_applies and c.kind is UnitKind.HOMOTHETICAL and d == K.degree
        if bad and strict:
            raise TheoremContradiction(f"homothetical unit {u} of full degree {d} in signature {K.signature}")
        out.append(DegreeRecord(u, c, d, mp, bad))
    return out
