"""Write a deterministic JSON-lines corpus of number fields.

    python3 scripts/make_corpus.py data/corpus50.jsonl --size 50

Order: a few fixed fields (small examples, cyclotomic fields, the degree-8
trinomial x^8 - x - 1), then trinomials x^n + a x^k + b by degree, keeping
only polynomials accepted by make_field without warnings.
"""

import argparse
import itertools
import json
import sys

from otlck.numfield import FieldError, make_field

FIXED = [
    [-1, -1, 0, 1],
    [-2, 0, 1],
    [-1, -1, 0, 0, 0, 1],
    [-1, -1, 0, 0, 1],
    [1, 0, 1],
    [1, 1, 1],  # 3rd roots of unity
    [1, 1, 1, 1, 1],  # 5th
    [1, 0, -1, 0, 1],  # 12th
    [1, 0, 0, 1, 0, 0, 1],  # 9th
    [1, -1, 1, -1, 1, -1, 1],  # 14th
    [-1, -1, 0, 0, 0, 0, 0, 0, 1],
    [-1, 0, -1, 0, 0, 0, 1],
]


def trinomials(max_degree: int):
    for n in range(2, max_degree + 1):
        for k, a, b in itertools.product(range(1, n), (-2, -1, 1, 2), (-2, -1, 1, 2)):
            cs = [0] * (n + 1)
            cs[0], cs[k], cs[n] = b, a, 1
            yield cs


def build(size: int, max_degree: int = 8) -> list[list[int]]:
    out, seen = [], set()
    for cs in itertools.chain(FIXED, trinomials(max_degree)):
        if len(out) >= size:
            break
        key = tuple(cs)
        if key in seen:
            continue
        seen.add(key)
        try:
            K = make_field(cs)
        except FieldError:
            continue
        if not K.warnings:
            out.append(cs)
    return out


def spread(polys: list[list[int]], size: int) -> list[list[int]]:
    """Keep the fixed fields and sample the rest evenly across degrees."""
    fixed = [p for p in polys if p in FIXED]
    rest = [p for p in polys if p not in FIXED]
    by_deg: dict[int, list] = {}
    for p in rest:
        by_deg.setdefault(len(p) - 1, []).append(p)
    picked = []
    for group in itertools.zip_longest(*by_deg.values()):
        picked += [p for p in group if p is not None]
    return fixed + picked[: size - len(fixed)]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", nargs="?", help="output path (stdout if omitted)")
    ap.add_argument("--size", type=int, default=50)
    args = ap.parse_args(argv)
    polys = spread(build(10**6), args.size)
    text = "".join(json.dumps({"poly": p}, separators=(",", ":")) + "\n" for p in polys)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
