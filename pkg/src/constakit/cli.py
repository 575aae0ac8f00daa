"""constakit command line: coset dumps, code construction, table reproduction, self-check.

Exit codes: 0 success, 2 invalid parameters, 3 distance budget refused,
4 verification mismatch (table --verify, selfcheck).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import platform
import sys
import time
from dataclasses import asdict, dataclass, field

from . import __version__
from .codes import build_code, default_budget
from .cosets import CodeParams, cached_table
from .errors import BudgetExceeded, ParameterError
from .families import FamilyRequest, build_family
from .tables import INPUT_NAMES, TABLE_IDS, checksum, load_fixture, recompute_table, rows, verify_rows

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_MISMATCH = 0, 2, 3, 4


@dataclass
class RunManifest:
    command: str
    parameters: dict
    versions: dict
    seconds: float
    results_checksum: str
    extra: dict = field(default_factory=dict)


def _versions() -> dict:
    import numba
    import numpy

    return {"artifact": __version__, "python": platform.python_version(), "numpy": numpy.__version__, "numba": numba.__version__}


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _csv(rows_: list[dict]) -> str:
    buf = io.StringIO()
    if rows_:
        w = csv.DictWriter(buf, fieldnames=list(rows_[0]), lineterminator="\n")
        w.writeheader()
        for r in rows_:
            w.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in r.items()})
    return buf.getvalue()


# ---------------------------------------------------------------- cosets


def coset_dump(params: CodeParams) -> dict:
    table = cached_table(params)
    return {
        "q": params.q,
        "n": params.n,
        "r": params.r,
        "nr": params.nr,
        "m": params.M,
        "s": params.s,
        "cosets": [{"leader": ld, "size": len(el), "elements": el} for ld, el in table.cosets],
        "counts": {str(l): c for l, c in table.counts.items()},
        "leaders_by_size": {str(l): v for l, v in table.by_size.items()},
    }


def cmd_cosets(args) -> tuple[int, object]:
    data = coset_dump(CodeParams(args.q, args.n, args.r))
    if args.format == "json":
        print(dump_json(data))
    elif args.format == "csv":
        print(_csv([{"leader": c["leader"], "size": c["size"], "elements": " ".join(map(str, c["elements"]))} for c in data["cosets"]]), end="")
    else:
        print(f"q={data['q']} n={data['n']} r={data['r']} nr={data['nr']} ord={data['m']} s={data['s']}")
        for c in data["cosets"]:
            print(f"  C_{c['leader']:<6} size {c['size']:<4} {c['elements']}")
        for l, v in data["leaders_by_size"].items():
            print(f"  N_{l} = {len(v)}; leaders {v}")
    return EXIT_OK, data


# ---------------------------------------------------------------- build


def cmd_build(args) -> tuple[int, object]:
    budget = args.distance_budget if args.distance_budget is not None else default_budget()
    kwargs = dict(distance_budget=budget, workers=args.workers, require_distance=args.require_distance)
    if args.family:
        req = FamilyRequest(args.family, args.q, args.r, args.variant, n=args.n, p=args.p, s=args.s, b=args.b, p1=args.p1, p2=args.p2, strict=args.strict)
        spec = build_family(req, **kwargs)
    else:
        if args.n is None:
            raise ParameterError("n given", "raw construction needs -n")
        spec = build_code(CodeParams(args.q, args.n, args.r), args.variant, **kwargs)
    data = spec.to_dict()
    if args.format == "json":
        print(dump_json(data))
    elif args.format == "csv":
        print(_csv([data]), end="")
    else:
        d = data["exact_distance"] if data["distance_status"] == "exact" else "·"
        print(f"[{data['n']}, {data['dimension']}, {d}] over GF({data['q']}), lambda = {data['lambda_literal'] or data['lambda']}, {data['variant']} variant")
        for k in sorted(data):
            print(f"  {k}: {data[k]}")
    return EXIT_OK, data


# ---------------------------------------------------------------- table


def table_rows(table: int, computed: dict[int, dict]) -> list[dict]:
    out = []
    names = INPUT_NAMES[table]
    for row in rows(table):
        c = computed[row.row]
        rec = {"table": table, "row": row.row, **dict(zip(names, row.inputs))}
        rec.update({k: v for k, v in c.items() if k not in ("q", "r")})
        out.append(rec)
    return out


def cmd_table(args) -> tuple[int, object]:
    budget = args.distance_budget if args.distance_budget is not None else default_budget()
    computed = recompute_table(args.id, budget=budget, workers=args.workers)
    recs = table_rows(args.id, computed)
    if args.format == "json":
        print(dump_json(recs))
    else:
        print(_csv(recs), end="")
    if args.verify:
        bad = verify_rows(args.id, computed, load_fixture())
        for m in bad:
            print(f"MISMATCH {m}", file=sys.stderr)
        if bad:
            return EXIT_MISMATCH, recs
        print(f"table {args.id}: all {len(recs)} rows match the fixture", file=sys.stderr)
    return EXIT_OK, recs


# ---------------------------------------------------------------- selfcheck


def cmd_selfcheck(args) -> tuple[int, object]:
    from .selfcheck import run_selfcheck

    report = run_selfcheck(args.grid, inject_fault=args.inject_fault)
    for line in report.lines():
        print(line)
    return (EXIT_OK if report.ok else EXIT_MISMATCH), report.checks


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="constakit", description="Constacyclic codes from two-class cyclotomic coset structures.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--manifest", metavar="PATH", help="write a JSON run manifest (parameters, versions, timing, checksum)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cosets", help="dump the q-cyclotomic cosets of Z_(n,r)")
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-r", type=int, default=1)
    p.add_argument("--format", choices=("human", "json", "csv"), default="human")
    p.set_defaults(func=cmd_cosets)

    p = sub.add_parser("build", help="construct a code (raw q, n, r or a length family)")
    p.add_argument("--family", choices=("prime", "qpower", "ppower", "twoprime"))
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-n", type=int)
    p.add_argument("-r", type=int, default=1)
    p.add_argument("--p", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--p1", type=int)
    p.add_argument("--p2", type=int)
    p.add_argument("--variant", choices=("ceiling", "floor"), default="ceiling")
    p.add_argument("--distance-budget", type=int)
    p.add_argument("--require-distance", action="store_true", help="exit 3 instead of reporting 'exceeds budget'")
    p.add_argument("--strict", action="store_true", help="refuse unguaranteed bounds and unverified family hypotheses")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("human", "json", "csv"), default="json")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("table", help="recompute a published parameter table")
    p.add_argument("id", type=int, choices=TABLE_IDS)
    p.add_argument("--verify", action="store_true", help="compare against the bundled fixture (exit 4 on mismatch)")
    p.add_argument("--distance-budget", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("selfcheck", help="run the invariant suite over a parameter grid")
    p.add_argument("--grid", choices=("small", "full"), default="small")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selfcheck)
    return ap


def _parameters(args) -> dict:
    skip = {"func", "manifest", "workers"}  # workers never changes results
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)  # s = (q^M - 1)/nr can exceed the default digit limit
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        code, result = args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.manifest:
        m = RunManifest(args.command, _parameters(args), _versions(), round(time.perf_counter() - t0, 3), checksum(result), {"exit_code": code})
        with open(args.manifest, "w") as fh:
            fh.write(dump_json(asdict(m)) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
