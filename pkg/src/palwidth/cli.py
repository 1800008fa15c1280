"""Command-line front end: ``palwidth <command> [flags]``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import List, Tuple

from . import identities, width
from .nilpotent import code_bits, encode, evaluate, render_nf
from .words import GroupSpec, parse, render

Records = List[dict]


def _spec(args) -> GroupSpec:
    return GroupSpec(args.rank, args.cls, args.quotient)


def _cache(args):
    return args.cache or os.environ.get("PALWIDTH_CACHE") or None


def _table(args, spec):
    return width.get_table(spec, args.max_rank_override, _cache(args))


def _element(args, spec):
    if args.word is None:
        raise ValueError("a word argument is required")
    return evaluate(parse(args.word, spec), spec)


def cmd_normalize(args) -> Tuple[Records, str, bool]:
    spec = _spec(args)
    g = _element(args, spec)
    rec = {"normal_form": render_nf(g)}
    lines = [rec["normal_form"]]
    if spec.quotient:
        rec.update(code=encode(g), bits=code_bits(g))
        lines.append(f"code {rec['code']} ({rec['bits']})")
    return [rec], "\n".join(lines), True


def cmd_length(args):
    spec = _spec(args)
    table = _table(args, spec)
    g = _element(args, spec)
    fact = width.witness(g, table)
    rec = {"element": render_nf(g), "length": width.palindromic_length(g, table), "witness": fact.render()}
    return [rec], f"{rec['length']}\n{rec['witness']}", True


def cmd_width(args):
    spec = _spec(args)
    w = _table(args, spec).width
    return [{"rank": spec.rank, "class": spec.cls, "width": w}], str(w), True


def cmd_spectrum(args):
    spec = _spec(args)
    hist = width.spectrum(spec, args.max_rank_override, _cache(args))
    recs = [{"length": k, "count": v} for k, v in hist.items()]
    return recs, "\n".join(f"{k} {v}" for k, v in hist.items()), True


def cmd_table(args):
    spec = _spec(args)
    table = _table(args, spec)
    recs = []
    from .nilpotent import all_elements

    for g in all_elements(spec):
        recs.append(
            {
                "code": encode(g),
                "alpha": "".join(map(str, g.alpha)),
                "beta": "".join(map(str, g.beta)),
                "length": width.palindromic_length(g, table),
                "witness": width.witness(g, table).render(),
            }
        )
    text = "\n".join(f"{r['alpha']}{r['beta']} {r['length']} {r['witness']}" for r in recs)
    return recs, text, True


def cmd_decompose(args):
    spec = _spec(args)
    g = _element(args, spec)
    fact = width.decompose_2n(g) if spec.quotient else width.decompose_free(g)
    rec = {"element": render_nf(g), "factors": len(fact), "factorization": fact.render(), "valid": fact.is_valid()}
    return [rec], f"{rec['factors']}\n{rec['factorization']}", rec["valid"]


def cmd_certify(args):
    n = args.rank
    cert = width.verify_lemma1(n)
    recs = [dict(s, check="bset_cover") for s in cert.statements]
    ok = cert.passed
    limit = width.DEFAULT_MAX_RANK[2] if args.max_rank_override is None else args.max_rank_override
    if 3 <= n <= limit:
        spec = GroupSpec(n, 2, True)
        table = _table(args, spec)
        holds = width.verify_minimum(width.all_commutators(spec), 2 * (n - 1), spec, table)
        recs.append({"check": "commutator_lower_bound", "statement": "min", "bound": 2 * (n - 1), "passed": holds})
        ok = ok and holds
    lines = []
    for r in recs:
        extra = {k: v for k, v in r.items() if k not in ("check", "statement", "passed")}
        lines.append(f"{r['check']} ({r['statement']}) {'pass' if r['passed'] else 'FAIL'} {extra or ''}".rstrip())
    return recs, "\n".join(lines), ok


def cmd_identities(args):
    reports = identities.run_suite(args.trials, args.seed)
    recs = [
        {"identity": r.name, "trials": r.trials, "failures": len(r.failures), "reproducers": r.failures}
        for r in reports
    ]
    text = "\n".join(f"{r['identity']}: {r['trials']} trials, {r['failures']} failures" for r in recs)
    return recs, text, all(r.passed for r in reports)


def cmd_palindromes(args):
    from .palindromes import palindrome_codes

    codes = palindrome_codes(_spec(args))
    return [{"code": c} for c in codes], "\n".join(map(str, codes)), True


COMMANDS = {
    "normalize": cmd_normalize,
    "length": cmd_length,
    "width": cmd_width,
    "spectrum": cmd_spectrum,
    "table": cmd_table,
    "decompose": cmd_decompose,
    "certify": cmd_certify,
    "identities": cmd_identities,
    "palindromes": cmd_palindromes,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="palwidth", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("word", nargs="?")
        p.add_argument("--rank", type=int, default=3)
        p.add_argument("--class", dest="cls", type=int, choices=(1, 2), default=2)
        p.add_argument("--quotient", action="store_true")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--cache")
        p.add_argument("--trials", type=int, default=1000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-rank-override", type=int)
    return parser


def serialize(records: Records, text: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(records if len(records) != 1 else records[0], indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        keys = list(dict.fromkeys(k for r in records for k in r))
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in records:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        return buf.getvalue().rstrip("\n")
    return text


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        records, text, ok = COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"palwidth {args.command}: error: {exc}", file=sys.stderr)
        return 2
    print(serialize(records, text, args.format))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
