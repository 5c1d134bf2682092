"""Brute-force unit enumeration over a coordinate box in Z[theta].

Results read "no such unit with power-basis coordinates in [-B, B]", never
"no such unit".

Every vector in the box is visited.  A vectorised float screen discards the
vectors whose norm is certainly not +-1; survivors are re-checked exactly
(resultant).  The screen only discards a vector when every embedding value
is far from zero relative to its evaluation error bound, in which case each
factor log|A(theta_i)| carries error well below 1e-3, and |log|N|| >= log 2
for any nonzero integer norm other than +-1.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from otlck.exactnum import Precision
from otlck.kronecker import UnitKind, classify_unit
from otlck.numfield import FieldElement, NumberField, minimal_polynomial, norm
from otlck.units import (
    TriState,
    UnitSubgroup,
    is_admissible,
    is_root_of_unity,
    is_totally_positive,
    is_unit,
    make_subgroup,
)

SQUARED_UNITS_NOTE = "squared-units"

# relative size below which an embedding value is treated as unreliable in float
_UNCERTAIN = 1e-8
_LOG_WINDOW = 0.35


@dataclass(frozen=True)
class SearchBudget:
    coeff_bound: int = 2
    max_candidates: int | None = None
    time_limit: float | None = None

    def __post_init__(self):
        if self.coeff_bound < 0:
            raise ValueError("coefficient bound must be >= 0")


@dataclass
class UnitSearch:
    units: list[FieldElement]
    visited: int
    total: int
    truncated: bool = False
    truncation: str | None = None

    def __iter__(self):
        return iter(self.units)

    def __len__(self) -> int:
        return len(self.units)

    def __getitem__(self, i):
        return self.units[i]


def _coordinate_block(start: int, stop: int, n: int, B: int) -> np.ndarray:
    """Rows start..stop-1 of the lexicographic listing of [-B, B]^n."""
    side = 2 * B + 1
    rem = np.arange(start, stop, dtype=np.int64)
    C = np.empty((stop - start, n), dtype=np.int64)
    for k in range(n - 1, -1, -1):
        C[:, k] = rem % side - B
        rem //= side
    return C


def enumerate_units(K: NumberField, budget: SearchBudget = SearchBudget(), *, chunk_rows: int = 1 << 16) -> UnitSearch:
    """All units of Z[theta] with coordinates in [-B, B], lexicographic order.

    B = 0 returns the rational units -1, 1.
    """
    n, B = K.degree, budget.coeff_bound
    total = (2 * B + 1) ** n
    limit = total if budget.max_candidates is None else min(total, budget.max_candidates)
    deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit

    roots = [complex(K.root(i)) for i in range(1, K.s + K.t + 1)]
    weights = np.array([1.0] * K.s + [2.0] * K.t)
    P = np.array([[r**k for r in roots] for k in range(n)], dtype=np.complex128)
    absP = np.abs(P)

    units: list[FieldElement] = []
    visited = 0
    reason = None
    for start in range(0, limit, chunk_rows):
        stop = min(start + chunk_rows, limit)
        C = _coordinate_block(start, stop, n, B)
        vals = np.abs(C @ P)
        scale = np.abs(C) @ absP
        uncertain = (vals <= _UNCERTAIN * np.maximum(scale, 1.0)).any(axis=1)
        with np.errstate(divide="ignore"):
            logn = (np.log(np.where(vals > 0, vals, 1.0)) * weights).sum(axis=1)
        keep = (uncertain | (np.abs(logn) < _LOG_WINDOW)) & C.any(axis=1)
        for row in C[keep]:
            e = K.element(row.tolist())
            if is_unit(e):
                units.append(e)
        visited = stop
        if deadline is not None and time.monotonic() > deadline and visited < limit:
            reason = "time_limit"
            break
    if reason is None and limit < total:
        reason = "max_candidates"
    if B == 0:
        # the rational units lie outside the degenerate box but always belong
        units = [K.from_int(-1), K.from_int(1)]
    return UnitSearch(units, visited, total, reason is not None, reason)


@dataclass
class ClassPartition:
    isometrical: list[FieldElement] = field(default_factory=list)
    homothetical: list[FieldElement] = field(default_factory=list)
    nonkronecker: list[FieldElement] = field(default_factory=list)
    classes: dict = field(default_factory=dict)
    truncated: bool = False

    def counts(self) -> dict:
        return {
            "isometrical": len(self.isometrical),
            "homothetical": len(self.homothetical),
            "nonkronecker": len(self.nonkronecker),
        }


def partition_by_class(K: NumberField, budget: SearchBudget = SearchBudget(), units=None) -> ClassPartition:
    if K.t < 1:
        raise ValueError("t = 0: classification needs complex embeddings")
    found = enumerate_units(K, budget) if units is None else units
    part = ClassPartition(truncated=getattr(found, "truncated", False))
    bucket = {
        UnitKind.ISOMETRICAL: part.isometrical,
        UnitKind.HOMOTHETICAL: part.homothetical,
        UnitKind.NONKRONECKER: part.nonkronecker,
    }
    for u in found:
        c = classify_unit(u)
        part.classes[u.coords] = c
        bucket[c.kind].append(u)
    return part


def search_records(K: NumberField, budget: SearchBudget = SearchBudget(), units=None):
    """One JSON-ready record per enumerated unit: coords, norm, class, degree."""
    for u in enumerate_units(K, budget) if units is None else units:
        rec = {"coords": u.to_json(), "norm": int(norm(u))}
        rec["class"] = classify_unit(u).kind.value if K.t >= 1 else None
        rec["degree"] = minimal_polynomial(u)[1]
        yield rec


def _simplicity(u: FieldElement):
    cs = u.coords
    top = max((i for i, c in enumerate(cs) if c), default=0)
    return (sum(abs(c) for c in cs), top, tuple(cs))


def admissible_candidates(K: NumberField, units) -> tuple[list[FieldElement], list[FieldElement]]:
    """Totally positive non-torsion units, then squares of the remaining ones."""
    tp, squares, seen = [], [], set()
    for u in sorted(units, key=_simplicity):
        if is_root_of_unity(u):
            continue
        if is_totally_positive(u):
            if u.coords not in seen:
                seen.add(u.coords)
                tp.append(u)
    for u in sorted(units, key=_simplicity):
        if is_root_of_unity(u) or is_totally_positive(u):
            continue
        sq = u * u
        if sq.coords not in seen:
            seen.add(sq.coords)
            squares.append(sq)
    return tp, squares


def find_admissible(
    K: NumberField,
    budget: SearchBudget = SearchBudget(),
    p: Precision = Precision(),
    *,
    max_subsets: int | None = 20000,
) -> UnitSubgroup | None:
    """First admissible s-element subgroup in a fixed deterministic order, or None."""
    if K.s < 1 or K.t < 1:
        raise ValueError("need s >= 1 and t >= 1")
    tp, squares = admissible_candidates(K, enumerate_units(K, budget))
    pool = tp + squares
    n_tp = len(tp)
    for k, combo in enumerate(itertools.combinations(range(len(pool)), K.s)):
        if max_subsets is not None and k >= max_subsets:
            break
        U = make_subgroup(K, [pool[i] for i in combo])
        if is_admissible(U, p) == TriState.YES:
            notes = (SQUARED_UNITS_NOTE,) if any(i >= n_tp for i in combo) else ()
            return UnitSubgroup(K, U.generators, True, True, notes)
    return None
