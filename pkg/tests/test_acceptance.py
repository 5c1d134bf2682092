"""Acceptance suite: ten criteria, one PASS/FAIL line each.

    pytest tests/test_acceptance.py -s
    python3 tests/test_acceptance.py
"""

import io
import json
import pathlib
import sys
import time
from fractions import Fraction

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

import oracle  # noqa: E402

from otlck.cli import run, run_scan  # noqa: E402
from otlck.exactnum import Precision  # noqa: E402
from otlck.kronecker import UnitKind, case1_divisibility, classify_unit  # noqa: E402
from otlck.numfield import field_from_json, make_field, minimal_polynomial  # noqa: E402
from otlck.otm import LEMMA, MAIN, PART_B, PART_C, lck_verdict, lemma_obstruction, verdict_for_signature  # noqa: E402
from otlck.search import SearchBudget, enumerate_units, find_admissible, partition_by_class  # noqa: E402
from otlck.units import is_admissible, is_root_of_unity, make_subgroup, norm_product_interval  # noqa: E402

ROOT = pathlib.Path(__file__).resolve().parents[1]
CORPUS = ROOT / "data" / "corpus50.jsonl"


CRITERIA_LINES: list[str] = []


def report(n: int, ok: bool, detail: str):
    line = f"CRITERION {n:2d} {'PASS' if ok else 'FAIL'}: {detail}"
    CRITERIA_LINES.append(line)
    assert ok, line


# --- shared unit sample for criteria 2 and 3 ------------------------------------

SAMPLE_FIELDS = [
    ([-1, -1, 0, 1], 2),  # (1,1)
    ([-1, -1, 0, 0, 1], 1),  # (2,1)
    ([-1, -1, 0, 0, 0, 1], 1),  # (1,2)
    ([-1, 0, -1, 0, 0, 0, 1], 1),  # (2,2)
    ([1, 1, 1, 1, 1], 1),  # (0,2), cyclotomic
    ([-1, -1, 0, 0, 0, 0, 0, 0, 1], 1),  # (2,3)
]

_sample_cache = {}


def unit_sample():
    if not _sample_cache:
        for cs, B in SAMPLE_FIELDS:
            K = make_field(cs)
            _sample_cache[tuple(cs)] = (K, enumerate_units(K, SearchBudget(B)).units)
    return _sample_cache


# --- criteria -------------------------------------------------------------------


def test_c01_signatures():
    cases = {(-1, -1, 0, 1): (1, 1), (-1, -1, 0, 0, 1): (2, 1), (-1, -1, 0, 0, 0, 1): (1, 2), (-2, 0, 1): (2, 0),
             (1, 0, 1): (0, 1)}
    t0 = time.perf_counter()
    got = {cs: make_field(list(cs)).signature for cs in cases}
    elapsed = time.perf_counter() - t0
    ref = {cs: oracle.signature(cs) for cs in cases}
    ok = got == cases == ref and elapsed < 1.0
    report(1, ok, f"5 signatures exact vs 200-bit root oracle in {elapsed:.3f}s")


def test_c02_classifier_soundness():
    t0 = time.perf_counter()
    sample = unit_sample()
    compared = exact_equal = disagreements = fields = 0
    for cs, (K, units) in sample.items():
        if K.t < 1:
            continue
        fields += 1
        for u in units:
            c = classify_unit(u)
            moduli = oracle.complex_moduli_sq(cs, u.coords)
            gap = any(oracle.gap_exceeds(moduli[0], m) for m in moduli[1:])
            if gap:
                compared += 1
                disagreements += c.kind is not UnitKind.NONKRONECKER
            elif K.t == 1 or u.is_rational():
                exact_equal += 1
                disagreements += not c.is_kronecker
            elif c.kind is UnitKind.NONKRONECKER:
                # separated enclosures but no visible gap would be a bug
                disagreements += 1
            if c.is_kronecker:
                iso = not oracle.gap_exceeds(moduli[0], 1)
                disagreements += (c.kind is UnitKind.ISOMETRICAL) != iso
    elapsed = time.perf_counter() - t0
    total = compared + exact_equal
    ok = total >= 100 and fields >= 5 and disagreements == 0 and elapsed < 60
    report(2, ok, f"{total} units over {fields} fields ({compared} gap>1e-30, {exact_equal} exact-equal), "
                  f"{disagreements} disagreements, {elapsed:.1f}s")


def test_c03_norm_product():
    worst, bad, count = Fraction(0), 0, 0
    p = Precision(256, 4096)
    for _, (K, units) in unit_sample().items():
        for u in units:
            iv = norm_product_interval(u, p)
            count += 1
            worst = max(worst, iv.width)
            bad += not (iv.contains(1) and iv.width < Fraction(1, 10**20))
    report(3, bad == 0 and count > 0, f"{count} units, norm-product interval contains 1, max width {float(worst):.2e}")


def test_c04_lemma_obstruction():
    t0 = time.perf_counter()
    K = make_field([-1, -1, 0, 0, 0, 1])
    c = classify_unit(K.theta)
    a, b = c.witness_intervals
    v = lck_verdict(K, make_subgroup(K, [K.theta]))
    elapsed = time.perf_counter() - t0
    ok = (
        c.kind is UnitKind.NONKRONECKER
        and c.witness == (1, 2)
        and not a.intersects(b)
        and (v.lck, v.reason, v.witness_role) == ("no", PART_C, "auxiliary")
        and v.witness.unit_class.witness == (1, 2)
        and elapsed < 5
    )
    report(4, ok, f"theta NonKronecker, pair (1,2) |s|^2 in [{float(a.lo):.6f}] vs [{float(b.lo):.6f}], "
                  f"verdict no/{v.reason} with auxiliary witness, {elapsed:.2f}s")


def _golden(s, t, obstructed):
    if t == 1:
        return ("exists", PART_B)
    if s == 1:
        return ("no", PART_C)
    if s < t:
        return ("no", MAIN)
    return ("no", LEMMA) if obstructed else ("unknown", None)


def test_c05_decision_table():
    K5 = make_field([-1, -1, 0, 0, 0, 1])
    obstruction = lemma_obstruction(make_subgroup(K5, [K5.theta]))
    mismatches = []
    for s in range(1, 6):
        for t in range(1, 6):
            for obs in (None, obstruction):
                v = verdict_for_signature(s, t, obs)
                if (v.lck, v.reason) != _golden(s, t, obs is not None) or v.kahler:
                    mismatches.append((s, t, obs is not None))
    # live verdicts on real fields go through the same table
    live = 0
    for cs, B in ([-1, -1, 0, 1], 1), ([-1, -1, 0, 0, 1], 4), ([-1, -1, 0, 0, 0, 1], 1), ([-1, 0, -1, 0, 0, 0, 1], 1):
        K = make_field(cs)
        U = find_admissible(K, SearchBudget(B))
        v = lck_verdict(K, U)
        obstructed = v.witness is not None
        live += 1
        if (v.lck, v.reason) != _golden(K.s, K.t, obstructed):
            mismatches.append((K.s, K.t, "live"))
    report(5, not mismatches, f"50 table cells + {live} live verdicts, mismatches {mismatches}")


def test_c06_theorem_mirror():
    t0 = time.perf_counter()
    lines = CORPUS.read_text(encoding="utf-8").splitlines()
    records = run_scan(lines, SearchBudget(0), jobs=1)
    hit = next(r for r in records if "error" not in r and len(r["poly"]) == 9 and r["signature"] == [2, 3])
    K = field_from_json(hit["poly"])
    units = enumerate_units(K, SearchBudget(3))
    part = partition_by_class(K, units=units)
    full_degree = [u for u in part.homothetical if minimal_polynomial(u)[1] == K.degree]
    elapsed = time.perf_counter() - t0
    ok = not full_degree and elapsed < 600 and not units.truncated
    report(6, ok, f"field {hit['poly']} (2,3): {len(units)} units at B=3, counts {part.counts()}, "
                  f"{len(full_degree)} homothetical of degree 8, {elapsed:.1f}s")


def test_c07_case1_arithmetic():
    t0 = time.perf_counter()
    hits = [(s, t) for t in range(2, 51) for s in range(2, t) if case1_divisibility(s, t)]
    elapsed = time.perf_counter() - t0
    n = sum(1 for t in range(2, 51) for s in range(2, t))
    report(7, not hits and elapsed < 1, f"{n} pairs 1<s<t<=50, 2t+1 never divides s+2t, {elapsed * 1000:.1f}ms")


KRONECKER_CORPUS = [
    ([1, 0, 1], 4),
    ([1, 1, 1], 4),
    ([1, 1, 1, 1, 1], 4),
    ([1, 0, -1, 0, 1], 4),
    ([1, 0, 0, 0, 1], 4),
    ([1, 0, 0, 1, 0, 0, 1], 2),
    ([1, -1, 1, -1, 1, -1, 1], 2),
    ([2, 0, 1], 4),
    ([1, 1, 0, 0, 1], 4),  # (0,2), not cyclotomic
    ([-1, -1, 0, 1], 4),
    ([-1, -1, 0, 0, 0, 1], 2),
]


def _all_moduli_one(u, cls) -> bool:
    K = u.field
    # a real embedding takes the value +-1 only if u^2 = 1 (embeddings are injective)
    if K.s and not (u * u - K.one).is_zero():
        return False
    return cls is None or cls.kind is UnitKind.ISOMETRICAL


def test_c08_kronecker_mirror():
    checked = counterexamples = units_seen = 0
    for cs, B in KRONECKER_CORPUS:
        K = make_field(cs)
        for u in enumerate_units(K, SearchBudget(B)):
            units_seen += 1
            cls = classify_unit(u) if K.t else None
            if _all_moduli_one(u, cls):
                checked += 1
                counterexamples += not is_root_of_unity(u)
    report(8, counterexamples == 0 and checked > 0,
           f"{units_seen} units over {len(KRONECKER_CORPUS)} fields (B<=4), {checked} with all moduli 1, "
           f"{counterexamples} not roots of unity")


def _subgroups():
    out = []
    K3 = make_field([-1, -1, 0, 1])
    th = K3.theta
    out += [make_subgroup(K3, g) for g in ([th], [th * th], [th, th**2], [K3.from_int(-1)], [th**3, th**-2])]
    th1031 = th**1031
    out.append(make_subgroup(K3, [th1031, th]))
    K4 = make_field([-1, -1, 0, 0, 1])
    t4 = K4.theta
    a, b = t4 * t4, t4 * t4 - t4
    gens4 = ([a, b], [a * b, b], [a, a**3], [a, b, a * b], [b**2, a**-1], [a], [a**-1, b**-1])
    out += [make_subgroup(K4, g) for g in gens4]
    K5 = make_field([-1, -1, 0, 0, 0, 1])
    t5 = K5.theta
    out += [make_subgroup(K5, g) for g in ([t5], [t5**2], [t5, t5**5], [K5.one, t5], [t5**-1])]
    K6 = make_field([-1, 0, -1, 0, 0, 0, 1])
    t6 = K6.theta
    c, d = t6 * t6, t6 * t6 - t6
    out += [make_subgroup(K6, g) for g in ([c, d], [c, c**2], [c * d, d])]
    return out


def test_c09_admissibility_stability():
    groups = _subgroups()
    flips, resolved, counts = [], 0, {"yes": 0, "no": 0, "undecided": 0}
    for U in groups:
        low = is_admissible(U, Precision(64, 256))
        high = is_admissible(U, Precision(64, 512))
        counts[low.value] += 1
        if not low.is_undecided and low != high:
            flips.append([g.coords for g in U.generators])
        resolved += low.is_undecided and not high.is_undecided
    ok = len(groups) >= 20 and not flips
    report(9, ok, f"{len(groups)} subgroups at cap 256 vs 512: {counts}, {resolved} resolved, {len(flips)} flips")


def test_c10_determinism():
    def scan(jobs):
        out = io.StringIO()
        code = run(["scan", str(CORPUS), "--coeff-bound", "1", "--no-timestamp", "--jobs", str(jobs)], stdout=out)
        return code, out.getvalue()

    t0 = time.perf_counter()
    c1, a = scan(1)
    c2, b = scan(2)
    elapsed = time.perf_counter() - t0
    n = len(a.splitlines()) - 2
    trailer = json.loads(a.splitlines()[-1])["trailer"]
    ok = c1 == c2 == 0 and a == b and n == 50 and trailer["fields"] == 50
    report(10, ok, f"scan of {n} fields, jobs=1 vs jobs=2 byte-identical: {a == b}, {len(a)} bytes, {elapsed:.1f}s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
