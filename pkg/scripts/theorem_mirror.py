"""Degree bound mirror: no homothetical unit of full degree when 1 < s < t.

Scans a corpus for the first field of the requested degree and signature,
enumerates its units in a coordinate box and reports class and degree counts.

    python3 scripts/theorem_mirror.py data/corpus50.jsonl --degree 8 --signature 2 3 --bound 3
"""

import argparse
import json
import sys
import time
from collections import Counter

from otlck.cli import run_scan
from otlck.numfield import field_from_json
from otlck.otm import homothetical_degree_report
from otlck.search import SearchBudget, enumerate_units


def locate(corpus_lines, degree, signature):
    records = run_scan(corpus_lines, SearchBudget(0), jobs=1)
    for rec in records:
        if "error" not in rec and len(rec["poly"]) - 1 == degree and tuple(rec["signature"]) == signature:
            return rec["poly"]
    return None


def mirror(poly, bound: int) -> dict:
    K = field_from_json(poly)
    t0 = time.monotonic()
    found = enumerate_units(K, SearchBudget(bound))
    t1 = time.monotonic()
    recs = homothetical_degree_report(K, found.units)
    t2 = time.monotonic()
    classes = Counter((r.unit_class.kind.value, r.degree) for r in recs)
    return {
        "poly": K.poly.to_json(),
        "signature": list(K.signature),
        "coeff_bound": bound,
        "vectors": found.total,
        "units": len(found.units),
        "by_class_and_degree": {f"{k}/{d}": n for (k, d), n in sorted(classes.items())},
        "contradictions": sum(r.contradiction for r in recs),
        "seconds": {"enumerate": round(t1 - t0, 2), "classify": round(t2 - t1, 2)},
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="homothetical degree bound on one corpus field")
    ap.add_argument("corpus")
    ap.add_argument("--degree", type=int, default=8)
    ap.add_argument("--signature", type=int, nargs=2, default=(2, 3))
    ap.add_argument("--bound", type=int, default=3)
    args = ap.parse_args(argv)
    with open(args.corpus, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    poly = locate(lines, args.degree, tuple(args.signature))
    if poly is None:
        print(f"no degree {args.degree} field of signature {tuple(args.signature)} in {args.corpus}", file=sys.stderr)
        return 1
    report = mirror(poly, args.bound)
    print(json.dumps(report, indent=2))
    return 0 if report["contradictions"] == 0 else 3


if __name__ == "__main__":
    sys.exit(main())
