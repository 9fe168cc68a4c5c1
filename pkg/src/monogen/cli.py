"""Command-line front end.

Every command can emit machine-readable output (``--json``): one JSON
object per line, big integers as decimal strings.  Exit codes: 0 success,
2 usage error, 3 verification mismatch, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, TextIO

from . import __version__
from .arith import Effort, FactorResult, NotSquarefree, Squarefree, is_probable_prime
from .dedekind import NotADiscriminantPrime, PrimeVerdict, classify_prime, generic_verdict
from .family import (
    FamilyParams,
    Irreducible,
    IrreducibilityVerdict,
    Reducible,
    build,
    disc_closed_form,
    disc_components,
)
from .index import Exact, FamilyScanRow, IndexReport, analyze, disc_factorization, scan_fp
from .poly_int import discriminant_via_resultant
from .poly_mod import ModPoly, factor_mod

SCHEMA_VERSION = "1"

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_IO = 0, 2, 3, 4

log = logging.getLogger("monogen")


@dataclass
class OutputRecord:
    command: str
    inputs: dict[str, Any]
    result: dict[str, Any]
    diagnostics: list[str] = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "OutputRecord":
        d = json.loads(line)
        return cls(d["command"], d["inputs"], d["result"], d.get("diagnostics", []), d["schema_version"])


# ----------------------------------------------------------------- encoding


def factors_to_dict(fr: FactorResult | None) -> dict[str, Any] | None:
    if fr is None:
        return None
    return {
        "sign": fr.sign,
        "factors": [[str(pp.prime), pp.exponent] for pp in fr.factors],
        "cofactor": str(fr.cofactor),
        "complete": fr.complete,
        "display": str(fr),
    }


def irreducibility_to_dict(v: IrreducibilityVerdict) -> dict[str, Any]:
    if isinstance(v, Irreducible):
        return {"status": "irreducible", "method": v.method, "primes": list(v.primes)}
    if isinstance(v, Reducible):
        return {"status": "reducible", "method": v.method, "witness": [str(c) for c in v.witness.coeffs]}
    return {"status": "unknown", "reason": v.reason}


def verdict_to_dict(v: PrimeVerdict) -> dict[str, Any]:
    return {
        "prime": str(v.prime),
        "divides_index": v.divides_index,
        "case": v.case.value,
        "condition": v.condition,
        "evidence": {k: (str(x) if isinstance(x, int) and not isinstance(x, bool) else x) for k, x in v.evidence.items()},
    }


def index_to_dict(ix) -> dict[str, Any] | None:
    if ix is None:
        return None
    if isinstance(ix, Exact):
        return {"kind": "exact", "value": str(ix.value)}
    return {"kind": "at_least", "value": str(ix.value), "undetermined": [str(q) for q in ix.undetermined]}


def squarefree_to_dict(v) -> dict[str, Any]:
    if isinstance(v, Squarefree):
        return {"status": "squarefree"}
    if isinstance(v, NotSquarefree):
        return {"status": "not_squarefree", "witness": [str(v.witness.prime), v.witness.exponent]}
    return {"status": "unknown", "reason": v.reason}


def report_to_dict(r: IndexReport) -> dict[str, Any]:
    return {
        "n": r.params.n,
        "a": str(r.params.a),
        "irreducibility": irreducibility_to_dict(r.irreducibility),
        "discriminant": str(r.discriminant),
        "disc_sign": r.disc_sign,
        "disc_factors": factors_to_dict(r.disc_factors),
        "verdicts": [verdict_to_dict(v) for v in r.verdicts],
        "index": index_to_dict(r.index),
        "monogenic": {"status": r.monogenic.status, "reason": r.monogenic.reason},
    }


def row_to_dict(row: FamilyScanRow) -> dict[str, Any]:
    return {
        "p": row.p,
        "h_factors": factors_to_dict(row.h_factors),
        "h_squarefree": squarefree_to_dict(row.h_squarefree),
        "index": index_to_dict(row.index),
        "monogenic": {"status": row.report.monogenic.status, "reason": row.report.monogenic.reason},
    }


# ----------------------------------------------------------------- human text


def _index_text(d: dict[str, Any] | None) -> str:
    if d is None:
        return "undefined"
    if d["kind"] == "exact":
        return d["value"]
    und = d.get("undetermined") or []
    return f"multiple of {d['value']}" + (f" (undetermined at {', '.join(und)})" if und else "")


def _verdict_line(v: dict[str, Any]) -> str:
    mark = "divides index" if v["divides_index"] else "does not divide index"
    ev = ", ".join(f"{k}={x}" for k, x in v["evidence"].items())
    return f"  p={v['prime']:>6}  case ({v['case']})  {mark}   [{v['condition']}; {ev}]"


def render_text(rec: OutputRecord) -> str:
    r, lines = rec.result, []
    if rec.command == "analyze":
        a = int(r["a"])
        lines.append(f"f(x) = (x^2 + 1)^{r['n']} {'-' if a > 0 else '+'} {abs(a)}*x^{r['n']}")
        irr = r["irreducibility"]
        lines.append(f"irreducibility: {irr['status']} ({irr.get('method') or irr.get('reason')})")
        df = r["disc_factors"]
        lines.append(f"discriminant:   {r['discriminant']}" + (f" = {df['display']}" if df else ""))
        lines.append("prime verdicts:")
        lines.extend(_verdict_line(v) for v in r["verdicts"])
        lines.append(f"index:          {_index_text(r['index'])}")
        mono = r["monogenic"]
        lines.append(f"monogenic:      {mono['status']}" + (f" ({mono['reason']})" if mono["reason"] else ""))
    elif rec.command == "disc":
        lines.append(f"discriminant: {r['discriminant']}")
        if r.get("factored"):
            lines.append(f"factored:     {r['factored']}")
        if "verified" in r:
            lines.append("resultant check: " + ("verified" if r["verified"] else f"MISMATCH (resultant {r['resultant']})"))
    elif rec.command == "classify":
        if r.get("divides_disc") is False:
            lines.append(f"{rec.inputs['p']} does not divide the discriminant, so it does not divide the index")
        else:
            lines.append(_verdict_line(r["verdict"]))
            if "generic" in r:
                g = r["generic"]
                lines.append(f"  generic Dedekind criterion: {'divides' if g['divides_index'] else 'does not divide'}"
                             f" ({'agrees' if r['agree'] else 'DISAGREES'})")
    elif rec.command == "fp-table":
        if "summary" in r:
            lines.append("squarefree H(p): " + ", ".join(map(str, r["squarefree_h"])))
        else:
            sq = r["h_squarefree"]
            status = sq["status"] + (f" ({sq['witness'][0]}^{sq['witness'][1]})" if "witness" in sq else "")
            lines.append(f"p={r['p']:>4}  ind={_index_text(r['index']):>6}  H(p) {status:<24} H = {r['h_factors']['display']}")
    elif rec.command == "scan":
        if "summary" in r:
            lines.append(f"computed {r['computed']}, cache hits {r['cache_hits']}")
        else:
            lines.append(f"n={r['n']:>3} a={r['a']:>5}  irreducibility={r['irreducibility']['status']:<11} "
                         f"index={_index_text(r['index']):<10} monogenic={r['monogenic']['status']}")
    elif rec.command == "factor-mod":
        lines.append(f"f mod {rec.inputs['p']} = {r['display']}")
    for d in rec.diagnostics:
        lines.append(f"  note: {d}")
    return "\n".join(lines)


def emit(rec: OutputRecord, as_json: bool, out: TextIO) -> None:
    out.write((rec.to_json() if as_json else render_text(rec)) + "\n")
    out.flush()


# ----------------------------------------------------------------- commands


def _inputs(args, *names) -> dict[str, Any]:
    d = {k: (str(getattr(args, k)) if isinstance(getattr(args, k), int) else getattr(args, k)) for k in names}
    d["effort"] = args.effort.value
    d["seed"] = args.seed
    return d


def cmd_analyze(args) -> tuple[int, list[OutputRecord]]:
    report = analyze(FamilyParams(args.n, args.a), args.effort, args.seed)
    rec = OutputRecord("analyze", _inputs(args, "n", "a"), report_to_dict(report), list(report.diagnostics))
    return EXIT_OK, [rec]


def cmd_disc(args) -> tuple[int, list[OutputRecord]]:
    params = FamilyParams(args.n, args.a)
    disc = disc_closed_form(params)
    result: dict[str, Any] = {"discriminant": str(disc)}
    diags = []
    _, _, _, t1, t2 = disc_components(params)
    if disc == 0:
        which = "2^n - a" if t1 == 0 else "2^n - (-1)^n a"
        diags.append(f"{which} = 0, so disc = 0: f has a repeated factor")
        result["factored"] = "0"
    else:
        result["factored"] = str(disc_factorization(params, args.effort, args.seed))
    code = EXIT_OK
    if args.verify:
        res = discriminant_via_resultant(build(params))
        result["resultant"] = str(res)
        result["verified"] = res == disc
        if res != disc:
            code = EXIT_MISMATCH
    return code, [OutputRecord("disc", _inputs(args, "n", "a") | {"verify": args.verify}, result, diags)]


def cmd_classify(args) -> tuple[int, list[OutputRecord]]:
    if not is_probable_prime(args.p):
        raise UsageError(f"p={args.p} is not prime")
    params = FamilyParams(args.n, args.a)
    inputs = _inputs(args, "n", "a", "p") | {"cross_check": args.cross_check}
    if disc_closed_form(params) == 0:
        raise UsageError("discriminant is 0 (f has a repeated factor); no prime classification applies")
    try:
        v = classify_prime(params, args.p)
    except NotADiscriminantPrime:
        return EXIT_OK, [OutputRecord("classify", inputs, {"divides_disc": False})]
    result: dict[str, Any] = {"divides_disc": True, "verdict": verdict_to_dict(v)}
    code = EXIT_OK
    if args.cross_check:
        g = generic_verdict(params, args.p)
        result["generic"] = verdict_to_dict(g)
        result["agree"] = g.divides_index == v.divides_index
        if not result["agree"]:
            code = EXIT_MISMATCH
    return code, [OutputRecord("classify", inputs, result)]


def cmd_fp_table(args) -> tuple[int, list[OutputRecord]]:
    if args.max < 3:
        raise UsageError("--max must be >= 3")
    rows = scan_fp(args.max, args.effort, args.seed, args.workers)
    inputs = _inputs(args, "max")
    records = [OutputRecord("fp-table", inputs, row_to_dict(r), list(r.diagnostics)) for r in rows]
    sqf = [r.p for r in rows if isinstance(r.h_squarefree, Squarefree)]
    records.append(OutputRecord("fp-table", inputs, {"summary": True, "squarefree_h": sqf}))
    return EXIT_OK, records


def cmd_factor_mod(args) -> tuple[int, list[OutputRecord]]:
    if not is_probable_prime(args.p):
        raise UsageError(f"p={args.p} is not prime")
    fac = factor_mod(ModPoly(args.p, build(FamilyParams(args.n, args.a)).coeffs), args.seed)
    result = {
        "unit": str(fac.unit),
        "factors": [[[str(c) for c in g.coeffs], e] for g, e in fac.factors],
        "display": str(fac),
    }
    return EXIT_OK, [OutputRecord("factor-mod", _inputs(args, "n", "a", "p"), result)]


def _cache_key(n: int, a: int, effort: str) -> tuple:
    return (n, a, SCHEMA_VERSION, effort)


def read_cache(path: str) -> dict[tuple, OutputRecord]:
    cached: dict[tuple, OutputRecord] = {}
    if not os.path.exists(path):
        return cached
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = OutputRecord.from_json(line)
            except (json.JSONDecodeError, KeyError):
                log.warning("ignoring malformed cache line")
                continue
            if rec.command != "scan" or rec.schema_version != SCHEMA_VERSION:
                continue
            cached[_cache_key(rec.result["n"], int(rec.result["a"]), rec.inputs["effort"])] = rec
    return cached


def cmd_scan(args, out: TextIO) -> int:
    n_lo, n_hi = args.n_range
    a_lo, a_hi = args.a_range
    if n_lo < 2:
        raise UsageError("n range must start at 2 or above")
    effort = args.effort.value
    cached = read_cache(args.cache) if args.cache else {}
    try:
        sink = open(args.cache, "a", encoding="utf-8") if args.cache else None
    except OSError as exc:
        print(f"error: cannot write cache {args.cache}: {exc}", file=sys.stderr)
        return EXIT_IO

    pairs = [(n, a) for n in range(n_lo, n_hi + 1) for a in range(a_lo, a_hi + 1) if a != 0]
    todo = [(n, a) for n, a in pairs if _cache_key(n, a, effort) not in cached]
    fresh: dict[tuple, IndexReport] = {}
    if args.workers > 1 and len(todo) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            futures = {pair: pool.submit(analyze, FamilyParams(*pair), args.effort, args.seed) for pair in todo}
            fresh = {pair: fut.result() for pair, fut in futures.items()}
    hits = 0
    try:
        for n, a in pairs:
            key = _cache_key(n, a, effort)
            if key in cached:
                hits += 1
                rec = cached[key]
            else:
                report = fresh.get((n, a)) or analyze(FamilyParams(n, a), args.effort, args.seed)
                inputs = {"n": str(n), "a": str(a), "effort": effort, "seed": args.seed}
                rec = OutputRecord("scan", inputs, report_to_dict(report), list(report.diagnostics))
                if sink:
                    sink.write(rec.to_json() + "\n")
                    sink.flush()
            emit(rec, args.json, out)
    finally:
        if sink:
            sink.close()
    summary = OutputRecord("scan", {"n_range": f"{n_lo}:{n_hi}", "a_range": f"{a_lo}:{a_hi}", "effort": effort},
                           {"summary": True, "computed": len(pairs) - hits, "cache_hits": hits})
    emit(summary, args.json, out)
    return EXIT_OK


# ----------------------------------------------------------------- parser


class UsageError(Exception):
    pass


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _effort(text: str) -> Effort:
    try:
        return Effort(text.lower())
    except ValueError:
        raise argparse.ArgumentTypeError(f"effort must be one of quick, default, deep (got {text!r})")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON record per line")
    common.add_argument("--effort", type=_effort, default=None,
                        help="factorization budget: quick, default, deep (env MONOGEN_EFFORT)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized factoring")
    common.add_argument("-v", "--verbose", action="store_true")

    na = argparse.ArgumentParser(add_help=False)
    na.add_argument("--n", type=int, required=True)
    na.add_argument("--a", type=int, required=True)

    parser = argparse.ArgumentParser(prog="monogen", description="Index and monogenity of (x^2+1)^n - a*x^n")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("analyze", parents=[common, na], help="full index report for one (n, a)")
    p = sub.add_parser("disc", parents=[common, na], help="closed-form discriminant")
    p.add_argument("--verify", action="store_true", help="also compute it as a Sylvester resultant")
    p = sub.add_parser("classify", parents=[common, na], help="index verdict for one prime")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--cross-check", action="store_true", help="also run the generic Dedekind criterion")
    p = sub.add_parser("fp-table", parents=[common], help="index of (x^2+1)^p - p*x^p for odd primes p")
    p.add_argument("--max", type=int, default=100)
    p.add_argument("--workers", type=int, default=1)
    p = sub.add_parser("scan", parents=[common], help="grid scan with an append-only cache")
    p.add_argument("--n-range", type=_range, required=True, metavar="LO:HI")
    p.add_argument("--a-range", type=_range, required=True, metavar="LO:HI")
    p.add_argument("--cache", metavar="PATH")
    p.add_argument("--workers", type=int, default=1)
    p = sub.add_parser("factor-mod", parents=[common, na], help="factor f modulo a prime")
    p.add_argument("--p", type=int, required=True)
    return parser


_COMMANDS = {
    "analyze": cmd_analyze,
    "disc": cmd_disc,
    "classify": cmd_classify,
    "fp-table": cmd_fp_table,
    "factor-mod": cmd_factor_mod,
}


def _glue_ranges(argv: list[str]) -> list[str]:
    # argparse reads "-5:5" as an option; bind it to its flag instead
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("--n-range", "--a-range"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Iterable[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(_glue_ranges(sys.argv[1:] if argv is None else list(argv)))
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.effort is None:
        try:
            args.effort = Effort.from_env()
        except ValueError:
            parser.error(f"invalid MONOGEN_EFFORT={os.environ.get('MONOGEN_EFFORT')!r}")
    if hasattr(args, "n") and hasattr(args, "a"):
        if args.n < 2:
            parser.error("--n must be >= 2")
        if args.a == 0:
            parser.error("--a must be nonzero")
    try:
        if args.command == "scan":
            return cmd_scan(args, out)
        code, records = _COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    for rec in records:
        emit(rec, args.json, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
