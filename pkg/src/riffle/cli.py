"""Command-line front end.

    riffle sep      --deck redblack --k 1..12 --method exact
    riffle track    --n 52 --start bottom --k 1..12
    riffle fulldeck --n 52 --k 1..12
    riffle bounds   --n 52 --k 3..12
    riffle redblack --n 26
    riffle oracle   --deck 2,2 --a 2
    riffle simulate --n 52 --k 4 --reps 1000000 --seed 7
    riffle table    --id thumb

Every command writes CSV (default) or JSON records to stdout.  Exit status
is 0 on success, 2 on bad input and 3 when a work budget would be exceeded
(a JSON reason is written to stderr).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from fractions import Fraction

import mpmath

from . import asymptotics, exact, montecarlo, oracle, tables
from .errors import CapacityError, InputError

COLUMNS = ["deck", "a", "k", "metric", "value", "method", "error_bound", "provenance"]
TABLE_COLUMNS = COLUMNS + ["reference", "diff", "status", "note"]


def parse_range(text: str) -> list[int]:
    """"1..12", "3", "1,2,5" or mixtures such as "1..4,8"."""
    out = []
    try:
        for token in text.split(","):
            if ".." in token:
                lo, hi = token.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(token))
    except ValueError:
        raise InputError(f"cannot parse range {text!r}") from None
    return out


def as_fraction(x):
    if x is None or isinstance(x, Fraction):
        return x
    if isinstance(x, mpmath.mpf):
        man, exp = x.man_exp
        return Fraction(man) * Fraction(2)**exp
    return Fraction(x)


def fmt(x, digits: int) -> str:
    """Round half to even at ``digits`` decimals from the exact value."""
    x = as_fraction(x)
    if x is None:
        return ""
    q = round(x, digits)
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole = int(q)
    frac = int((q - whole) * 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def shuffle_params(args) -> list[tuple[int, object]]:
    if (args.k is None) == (args.a is None):
        raise InputError("give exactly one of --k and --a")
    if args.k is not None:
        return [(2**k, k) for k in parse_range(args.k)]
    return [(a, None) for a in parse_range(args.a)]


def record(deck, a, k, metric, value, method, bound=None, provenance=""):
    return {"deck": str(deck), "a": a, "k": k, "metric": metric, "value": value,
            "method": method, "error_bound": bound, "provenance": provenance}


# -- commands ---------------------------------------------------------------

def cmd_sep(args):
    deck = tables.parse_deck(args.deck)
    rows = []
    for a, k in shuffle_params(args):
        if args.method in ("exact", "both"):
            if deck.m == deck.n:
                value, _ = exact.full_deck_distances(deck.n, a)
                route = "rising-sequence formula over Eulerian classes"
            else:
                value = exact.general_sep(deck, a, args.budget_terms)
                route = "composition sum by series convolution"
            rows.append(record(deck, a, k, "SEP", value, "exact", None, route))
        if args.method in ("rot", "both"):
            if a < deck.m:
                rows.append(record(deck, a, k, "SEP", Fraction(1), "exact:a<m", None,
                                   "no composition of a into m positive parts"))
                continue
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                est = asymptotics.rule_of_thumb_sep(deck, a)
            route = "rule of thumb; error_bound is |eta| on 1-SEP"
            if not est.valid:
                route += "; " + est.note
            rows.append(record(deck, a, k, "SEP", est.sep_estimate, "rule-of-thumb",
                               est.eta_bound, route))
    return rows


def _start_position(text, n):
    text = text.strip().lower()
    if text == "bottom":
        return n
    if text == "top":
        return 1
    try:
        return int(text)
    except ValueError:
        raise InputError(f"--start must be bottom, top or a position, got {text!r}") from None


def cmd_track(args):
    i = _start_position(args.start, args.n)
    metrics = [m.strip().upper() for m in args.metric.split(",")]
    label = f"n={args.n},start={i}"
    rows = []
    for a, k in shuffle_params(args):
        sep, tv = exact.tracked_card_distances(args.n, a, i)
        for metric in metrics:
            value = {"TV": tv, "SEP": sep}.get(metric)
            if value is None:
                raise InputError(f"unknown metric {metric!r}")
            rows.append(record(label, a, k, metric, value, "exact:single-card", None,
                               "single-card transition row"))
    return rows


def cmd_fulldeck(args):
    rows = []
    for a, k in shuffle_params(args):
        sep, tv = exact.full_deck_distances(args.n, a)
        for metric, value in (("TV", tv), ("SEP", sep)):
            rows.append(record(f"{args.n}x1", a, k, metric, value,
                               "exact:rising-sequences", None,
                               "rising-sequence formula over Eulerian classes"))
    return rows


def cmd_bounds(args):
    n = args.n
    label = f"n={n},start={n}"
    rows = []
    for a, k in shuffle_params(args):
        sep, tv = exact.tracked_card_distances(n, a, n)
        sb = asymptotics.bottom_card_sep_bounds(n, a)
        tb = asymptotics.bottom_card_tv_bounds(n, a)
        c = mpmath.log(mpmath.mpf(a) / n, 2)
        for metric, value, pair, limit in (("SEP", sep, sb, asymptotics.sep_limit(c)),
                                           ("TV", tv, tb, asymptotics.tv_limit(c))):
            rows.append(record(label, a, k, metric, pair.lower, "bound:lower", None,
                               "explicit sandwich"))
            rows.append(record(label, a, k, metric, value, "exact:single-card", None,
                               "bottom-card law"))
            rows.append(record(label, a, k, metric, pair.upper, "bound:upper", None,
                               "explicit sandwich"))
            rows.append(record(label, a, k, metric, limit, "asymptotic:limit", None,
                               "large-n limit at a = n 2^c"))
    return rows


def cmd_redblack(args):
    n = args.n
    rows = []
    if args.start in ("sorted", "both"):
        rows.append(record(f"{n},{n}", 2, 1, "TV", exact.redblack_tv(n), "exact",
                           None, "reds atop blacks, (h, t) class sum"))
    if args.start in ("alternating", "both"):
        rows.append(record(f"alt{2 * n}", 2, 1, "TV", exact.alternating_tv(n, "printed"),
                           "printed-formula", None,
                           "alternating start, published closed form"))
        rows.append(record(f"alt{2 * n}", 2, 1, "TV", exact.alternating_tv(n, "classes"),
                           "exact:classes", None,
                           "alternating start, enumerated mass classes"))
    return rows


def cmd_oracle(args):
    deck = tables.parse_deck(args.deck)
    rows = []
    for a, k in shuffle_params(args):
        if args.start:
            start = tuple(int(ch) for ch in args.start)
            chain = oracle.build_quotient_chain(deck, a, args.budget_states,
                                                args.budget_terms)
            res = oracle.brute_distances(chain, start)
        else:
            start = deck.sorted_word()
            res = oracle.sorted_start_distances(deck, a, args.budget_terms)
        argmin = " ".join("".join(map(str, w)) for w in res.argmin)
        prov = f"start={''.join(map(str, start))}; least likely: {argmin}"
        rows.append(record(deck, a, k, "SEP", res.sep, "oracle", None, prov))
        rows.append(record(deck, a, k, "TV", res.tv, "oracle", None, prov))
        if not args.start:
            rows.append(record(deck, a, k, "SEP", exact.general_sep(deck, a, args.budget_terms),
                               "exact", None, "composition sum by series convolution"))
    return rows


def cmd_simulate(args):
    rows = []
    for a, k in shuffle_params(args):
        if args.feature == "word":
            deck = tables.parse_deck(args.deck)
            config = montecarlo.SamplerConfig(a, args.reps, args.seed, "word", deck=deck,
                                              workers=args.workers)
            label = str(deck)
        else:
            start = _start_position(args.start, args.n) if args.feature == "position" else None
            config = montecarlo.SamplerConfig(a, args.reps, args.seed, args.feature,
                                              n=args.n, start=start, workers=args.workers)
            label = f"n={args.n}" + (f",start={start}" if start else "")
        rep = montecarlo.estimate_distances(config)
        prov = f"seed={args.seed}; reps={args.reps}; feature={args.feature}"
        rows.append(record(label, a, k, "TV", rep.tv, "monte-carlo",
                           Fraction(rep.tv_se), prov + "; error_bound is one standard error"))
        if rep.sep is not None:
            rows.append(record(label, a, k, "SEP", rep.sep, "monte-carlo", None, prov))
    return rows


def cmd_table(args):
    out = []
    for cell in tables.build_table(args.id, args.budget_terms):
        rec = record(cell.row, 2**cell.k, cell.k, cell.metric, cell.value, cell.method,
                     cell.error_bound, cell.cell_id)
        rec.update(reference=cell.reference, diff=cell.diff, status=cell.status, note=cell.note)
        out.append(rec)
    return out


# -- plumbing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--digits", type=int, default=3)
    common.add_argument("--provenance", action="store_true",
                        help="explain where each reported value came from")
    common.add_argument("--budget-terms", type=int, default=exact.DEFAULT_TERM_BUDGET)
    common.add_argument("--budget-states", type=int, default=oracle.DEFAULT_STATE_BUDGET)

    def shuffles(p):
        p.add_argument("--k", help="shuffle counts; a = 2^k (e.g. 1..12)")
        p.add_argument("--a", help="shuffle parameters a (e.g. 2,3,16)")

    parser = argparse.ArgumentParser(prog="riffle", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sep", parents=[common], help="separation for a repeated-card deck")
    p.add_argument("--deck", required=True)
    p.add_argument("--method", choices=["exact", "rot", "both"], default="exact")
    shuffles(p)
    p.set_defaults(func=cmd_sep)

    p = sub.add_parser("track", parents=[common], help="distances for one tracked card")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--start", default="bottom")
    p.add_argument("--metric", default="tv,sep")
    shuffles(p)
    p.set_defaults(func=cmd_track)

    p = sub.add_parser("fulldeck", parents=[common], help="distinct-card deck")
    p.add_argument("--n", type=int, required=True)
    shuffles(p)
    p.set_defaults(func=cmd_fulldeck)

    p = sub.add_parser("bounds", parents=[common], help="bottom-card bounds and limits")
    p.add_argument("--n", type=int, required=True)
    shuffles(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("redblack", parents=[common], help="single 2-shuffle of a two-colour deck")
    p.add_argument("--n", type=int, required=True, help="cards of each colour")
    p.add_argument("--start", choices=["sorted", "alternating", "both"], default="both")
    p.set_defaults(func=cmd_redblack)

    p = sub.add_parser("oracle", parents=[common], help="brute-force distances (small decks)")
    p.add_argument("--deck", required=True)
    p.add_argument("--start", help="start word of labels, e.g. 1212 (default: sorted)")
    shuffles(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo estimates")
    p.add_argument("--n", type=int)
    p.add_argument("--deck")
    p.add_argument("--feature", choices=list(montecarlo.FEATURES), default="position")
    p.add_argument("--start", default="bottom")
    p.add_argument("--reps", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    shuffles(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("table", parents=[common], help="recompute a reference table")
    p.add_argument("--id", required=True, choices=sorted(tables.GOLDEN))
    p.set_defaults(func=cmd_table)
    return parser


def render(rows, args) -> str:
    columns = TABLE_COLUMNS if args.command == "table" else COLUMNS
    out = []
    for row in rows:
        rec = {}
        for col in columns:
            v = row.get(col)
            if col in ("value", "error_bound", "reference", "diff"):
                v = fmt(v, args.digits)
            elif col == "provenance":
                v = v if args.provenance else row["method"].split(":")[0]
            elif v is None:
                v = ""
            rec[col] = v
        out.append(rec)
    if args.format == "json":
        return json.dumps(out, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(out)
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows = args.func(args)
    except CapacityError as exc:
        sys.stderr.write(json.dumps(exc.as_dict()) + "\n")
        return 3
    except InputError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"riffle: error: {exc}\n")
        return 2
    sys.stdout.write(render(rows, args))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
