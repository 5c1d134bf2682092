"""Command-line front end.

    otlck signature --poly '[-1,-1,0,1]'
    otlck classify-unit --poly '[-1,-1,0,0,0,1]' --unit '[0,1]'
    otlck admissible --poly '[-1,-1,0,0,1]' --generators '[[0,0,1,0],[0,-1,1,0]]'
    otlck lck-verdict fieldfile.json
    otlck search-units --poly '[-3,0,1]' --coeff-bound 2
    otlck scan corpus.jsonl --jobs 4

Exit status: 0 definitive, 2 if any answer is undecided at the cap precision,
1 on bad input (the message names the failed check).
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from otlck import __version__
from otlck.exactnum import Precision, refine
from otlck.kronecker import classify_unit
from otlck.numfield import FieldError, NumberField, field_from_json
from otlck.otm import InvalidOTInput, lck_verdict, verdict_for_signature
from otlck.search import SearchBudget, enumerate_units, partition_by_class, search_records
from otlck.serialize import dumps, parse_rational
from otlck.units import SubgroupError, admissibility_report, make_subgroup

JOBS_ENV = "OTLCK_JOBS"

EXIT_OK, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2


class InputError(Exception):
    def __init__(self, check: str, message: str):
        super().__init__(f"{check}: {message}")
        self.check = check
        self.message = message


# --- input handling -------------------------------------------------------------


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}-json", f"malformed JSON ({exc.msg} at position {exc.pos})") from None


def _read_input_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = _load_json(fh.read(), "input")
    except OSError as exc:
        raise InputError("input-file", f"cannot read {path}: {exc.strerror}") from None
    if isinstance(data, list):
        data = {"poly": data}
    if not isinstance(data, dict):
        raise InputError("input-json", "input file must hold a JSON object or coefficient array")
    return data


def _field(poly) -> NumberField:
    if poly is None:
        raise InputError("poly-json", "no polynomial given (use --poly or an input file)")
    try:
        return field_from_json(poly)
    except FieldError as exc:
        raise InputError(exc.check, str(exc).split(": ", 1)[-1]) from None


def _coords(K: NumberField, data, what: str):
    if not isinstance(data, list) or not data:
        raise InputError(f"{what}-json", "expected a non-empty JSON array of coordinates")
    if len(data) > K.degree:
        raise InputError(f"{what}-json", f"{len(data)} coordinates for a degree {K.degree} field")
    try:
        cs = [parse_rational(c) for c in data]
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what}-json", str(exc)) from None
    return K.element(cs + [0] * (K.degree - len(cs)))


def _gather(args) -> dict:
    """Merge the optional input file with inline JSON flags (flags win)."""
    data = _read_input_file(args.input) if getattr(args, "input", None) else {}
    for key in ("poly", "unit", "generators"):
        inline = getattr(args, key, None)
        if inline is not None:
            data[key] = _load_json(inline, key)
    return data


def _require_ot(K: NumberField, need_s: bool = True):
    if K.t == 0:
        raise InputError("t=0", f"field of signature {K.signature} has no complex embeddings")
    if need_s and K.s == 0:
        raise InputError("s>=1", f"field of signature {K.signature} has no real embeddings")


def _precision(args) -> Precision:
    if args.precision_bits < 8 or args.cap_bits < args.precision_bits:
        raise InputError("precision", "need 8 <= --precision-bits <= --cap-bits")
    return Precision(args.precision_bits, args.cap_bits)


def _budget(args) -> SearchBudget:
    if args.coeff_bound < 0:
        raise InputError("budget", "--coeff-bound must be >= 0")
    return SearchBudget(args.coeff_bound, args.max_candidates, args.time_limit)


def _signature_json(K: NumberField) -> dict:
    return {"s": K.s, "t": K.t}


# --- subcommands ----------------------------------------------------------------
# each returns (result json, undecided flag)


def cmd_signature(args, data):
    K = _field(data.get("poly"))
    out = {"field": K.to_json(), "signature": _signature_json(K), "degree": K.degree}
    width = Fraction(1, 2 ** _precision(args).working)
    out["embeddings"] = [refine(r, width).to_json() for r in K.real_roots + K.complex_roots]
    return out, False


def cmd_classify_unit(args, data):
    K = _field(data.get("poly"))
    _require_ot(K, need_s=False)
    u = _coords(K, data.get("unit"), "unit")
    try:
        c = classify_unit(u)
    except ValueError as exc:
        raise InputError("unit", str(exc)) from None
    return {"field": K.to_json(), "unit": u.to_json(), "class": c.to_json()}, False


def _subgroup(K, data):
    gens = data.get("generators")
    if not isinstance(gens, list) or not gens:
        raise InputError("generators-json", "expected a non-empty JSON array of coordinate arrays")
    return make_subgroup(K, [_coords(K, g, "generators") for g in gens])


def cmd_admissible(args, data):
    K = _field(data.get("poly"))
    _require_ot(K)
    U = _subgroup(K, data)
    if not U.unit_verified:
        raise InputError("unit", "some generator is not a unit of Z[theta]")
    try:
        rep = admissibility_report(U, _precision(args))
    except SubgroupError as exc:
        raise InputError(exc.check, str(exc).split(": ", 1)[-1]) from None
    return {"field": K.to_json(), "subgroup": U.to_json()["generators"], **rep.to_json()}, rep.verdict.is_undecided


def cmd_lck_verdict(args, data):
    K = _field(data.get("poly"))
    _require_ot(K)
    U = _subgroup(K, data)
    try:
        v = lck_verdict(K, U, _precision(args))
    except InvalidOTInput as exc:
        raise InputError(exc.report.failed_check, "subgroup fails the Oeljeklaus-Toma prerequisites") from None
    out = {"field": K.to_json(), "signature": _signature_json(K), **v.to_json()}
    undecided = any(c.endswith("-undecided") for c in v.caveats)
    return out, undecided


def cmd_search_units(args, data):
    K = _field(data.get("poly"))
    budget = _budget(args)
    found = enumerate_units(K, budget)
    records = list(search_records(K, budget, units=found))
    out = {
        "field": K.to_json(),
        "coeff_bound": budget.coeff_bound,
        "visited": found.visited,
        "total": found.total,
        "truncated": found.truncation,
        "units": records,
    }
    return out, False


# --- scan -----------------------------------------------------------------------


def scan_record(line: str, budget: SearchBudget) -> dict:
    """Analyse one corpus line; construction failures become error records."""
    try:
        entry = _load_json(line, "poly")
        K = _field(entry.get("poly") if isinstance(entry, dict) else entry)
    except InputError as exc:
        return {"error": {"check": exc.check, "message": exc.message}, "input": line.strip()}
    rec = {"poly": K.poly.to_json(), "signature": [K.s, K.t], "warnings": list(K.warnings)}
    if K.s >= 1 and K.t >= 1:
        v = verdict_for_signature(K.s, K.t)
        rec["verdict"] = {"lck": v.lck, "reason": v.reason}
    else:
        rec["verdict"] = {"lck": "not-applicable", "reason": None}
    if K.t >= 1:
        part = partition_by_class(K, budget)
        rec["counts"] = {**part.counts(), "coeff_bound": budget.coeff_bound, "truncated": part.truncated}
    else:
        rec["counts"] = None
    return rec


def _scan_job(job):
    line, budget = job
    return scan_record(line, budget)


def run_scan(lines: list[str], budget: SearchBudget, jobs: int) -> list[dict]:
    work = [(ln, budget) for ln in lines]
    if jobs <= 1 or len(work) <= 1:
        return [_scan_job(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map preserves input order whatever the completion order
        return list(pool.map(_scan_job, work))


def scan_trailer(records: list[dict]) -> dict:
    sigs, verdicts = Counter(), Counter()
    errors = 0
    for r in records:
        if "error" in r:
            errors += 1
            continue
        key = f"{r['signature'][0]},{r['signature'][1]}"
        sigs[key] += 1
        verdicts[f"{key}:{r['verdict']['lck']}"] += 1
    return {
        "fields": len(records),
        "errors": errors,
        "signatures": dict(sorted(sigs.items())),
        "verdicts": dict(sorted(verdicts.items())),
    }


def _read_corpus(path: str) -> list[str]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError("corpus-file", f"cannot read {path}: {exc}") from None
    return [ln for ln in text.splitlines() if ln.strip()]


# --- output ---------------------------------------------------------------------


def _command_echo(args) -> dict:
    echo = {"subcommand": args.subcommand, "version": __version__}
    for key in ("input", "corpus"):
        if getattr(args, key, None) is not None:
            echo[key] = getattr(args, key)
    for key in ("poly", "unit", "generators"):
        v = getattr(args, key, None)
        if v is not None:
            # parsed so the echo is valid JSON input again
            try:
                echo[key] = json.loads(v)
            except json.JSONDecodeError:
                echo[key] = v
    echo.update(
        precision_bits=args.precision_bits,
        cap_bits=args.cap_bits,
        coeff_bound=args.coeff_bound,
        max_candidates=args.max_candidates,
        time_limit=args.time_limit,
        format=args.format,
    )
    return echo


def _header(args) -> dict:
    head = {"command": _command_echo(args)}
    if not args.no_timestamp:
        head["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    return head


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if _flat(v):
                lines.append(f"{pad}- {_inline(v)}")
            else:
                lines.append(f"{pad}-")
                lines += _text(v, indent + 1)
    else:
        lines.append(pad + _inline(obj))
    return lines


def _flat(v) -> bool:
    if isinstance(v, dict):
        return not v
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return True


def _inline(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def _scan_text_line(rec: dict) -> str:
    if "error" in rec:
        return f"ERROR {rec['error']['check']}: {rec['input']}"
    c = rec["counts"]
    counts = "-" if c is None else f"iso={c['isometrical']} homo={c['homothetical']} nonk={c['nonkronecker']}"
    v = rec["verdict"]
    warn = ",".join(rec["warnings"]) or "-"
    sig = f"({rec['signature'][0]},{rec['signature'][1]})"
    return f"[{','.join(rec['poly'])}] {sig} lck={v['lck']} reason={v['reason']} {counts} warnings={warn}"


def render(args, result, records=None, trailer=None) -> str:
    head = _header(args)
    if args.format == "json":
        if records is None:
            return dumps({**head, "result": result}) + "\n"
        body = [dumps(head)] + [dumps(r) for r in records] + [dumps({"trailer": trailer})]
        return "\n".join(body) + "\n"
    lines = ["# " + dumps(head)]
    if records is None:
        lines += _text(result)
    else:
        lines += [_scan_text_line(r) for r in records]
        lines.append("# trailer " + dumps(trailer))
    return "\n".join(lines) + "\n"


# --- entry point ----------------------------------------------------------------

COMMANDS = {
    "signature": cmd_signature,
    "classify-unit": cmd_classify_unit,
    "admissible": cmd_admissible,
    "lck-verdict": cmd_lck_verdict,
    "search-units": cmd_search_units,
}


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=64, help="working precision in bits (default 64)")
    common.add_argument("--cap-bits", type=int, default=1024, help="precision cap in bits (default 1024)")
    common.add_argument("--coeff-bound", type=int, default=2, help="search box [-B, B] (default 2)")
    common.add_argument("--max-candidates", type=int, default=None, help="stop enumeration after N vectors")
    common.add_argument("--time-limit", type=float, default=None, help="enumeration wall-clock limit in seconds")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--jobs", type=int, default=None, help=f"worker processes for scan (default ${JOBS_ENV} or 1)")
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp from the header")

    parser = argparse.ArgumentParser(prog="otlck", description="LCK verdicts for Oeljeklaus-Toma manifolds")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("input", nargs="?", help='JSON file: {"poly": [...], "unit": [...], "generators": [[...]]}')
        p.add_argument("--poly", help="defining polynomial, JSON array, constant term first")
        if name == "classify-unit":
            p.add_argument("--unit", help="unit coordinates in the power basis, JSON array")
        if name in ("admissible", "lck-verdict"):
            p.add_argument("--generators", help="JSON array of coordinate arrays")
    p = sub.add_parser("scan", parents=[common])
    p.add_argument("corpus", help='JSON-lines file, one {"poly": [...]} per line')
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.subcommand == "scan":
            budget = _budget(args)
            jobs = args.jobs if args.jobs is not None else _default_jobs()
            records = run_scan(_read_corpus(args.corpus), budget, max(1, jobs))
            stdout.write(render(args, None, records, scan_trailer(records)))
            return EXIT_OK
        _precision(args)
        result, undecided = COMMANDS[args.subcommand](args, _gather(args))
    except InputError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    stdout.write(render(args, result))
    return EXIT_UNDECIDED if undecided else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
