"""Command-line entry point: `dihedral-artin <subcommand> ...`.

Exit status 0 on success, 1 on a domain error (JSON object on stderr),
2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import conjugacy, geodesic, growth, langtools
from .canonical import to_canonical
from .errors import DomainError
from .oracle import CayleyBall, all_words, brute_force_conjugate, oracle_equal
from .words import GroupParams, parse_word, word_sort_key

FAMILY_ALIASES = {
    "p": "p_odd",
    "q": "q_odd",
    "p1": "p1_even",
    "p3": "p3_even",
    "pj": "p_j_even",
    "qs": "q_even_suffix",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _num(x):
    """Floats to 15 significant digits, recursively."""
    if isinstance(x, float):
        return float(f"{x:.15g}")
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    return x


def _dump(obj) -> str:
    return json.dumps(_num(obj), separators=(",", ":"))


def _m(text: str) -> GroupParams:
    try:
        m = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"m must be an integer, got {text!r}")
    if m < 3:
        raise argparse.ArgumentTypeError(f"m must be at least 3, got {m}")
    return GroupParams(m)


def _positive(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


def _word(args, text: str) -> str:
    return parse_word(text, args.m)


def _csv(rows, header=("n", "count")) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([f"{v:.15g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()


# ------------------------------------------------------------ handlers

def cmd_normalize(args) -> str:
    return to_canonical(_word(args, args.word), args.m).to_json()


def cmd_geodesic(args) -> str:
    g = args.m
    w = _word(args, args.word)
    e = to_canonical(w, g)
    out = {"word": w, "geodesic": geodesic.geodesic_word(e, g), "length": geodesic.geodesic_length(e, g)}
    if args.all:
        out["geodesics"] = sorted(geodesic.enumerate_geodesics(e, g, cap=args.cap), key=word_sort_key)
    if args.trace:
        trace: list = []
        geodesic.reduce_to_geodesic(w, g, trace=trace)
        out["trace"] = [list(step) for step in trace]
    return _dump(out)


def cmd_classify(args) -> str:
    g = args.m
    gw = geodesic.classify_geodesic(_word(args, args.word), g)
    split = gw.split
    return _dump({
        "word": gw.word,
        "type": str(gw.gtype),
        "unique": gw.gtype.unique,
        "tau1": split.tau1 if split else None,
        "tau2": split.tau2 if split else None,
        "j": gw.gtype.j,
    })


def cmd_conj(args) -> str:
    g = args.m
    if args.conj_cmd == "key":
        return conjugacy.conj_representative(_word(args, args.word), g).to_json()
    u, v = _word(args, args.u), _word(args, args.v)
    if args.conj_cmd == "test":
        if args.brute:
            return _dump(brute_force_conjugate(u, v, g, radius=args.radius))
        return _dump(conjugacy.is_conjugate(u, v, g))
    length, witness = conjugacy.pcl(u, v, g)
    return _dump({"u": u, "v": v, "pcl": length, "conjugator": witness})


def cmd_pcl(args) -> str:
    args.conj_cmd = "pcl"
    return cmd_conj(args)


def cmd_growth(args) -> str:
    g = args.m
    if args.report:
        from .plotting import render_report

        rep = growth.asymptotics_report(g, args.max_n, cap=args.cap)
        out_dir = Path(args.report)
        out_dir.mkdir(parents=True, exist_ok=True)
        table = _csv(
            ([r["n"], r["s"], r["c"], r["c_over_s"], r["n_c_over_s"],
              "" if r["paired_c_over_s"] is None else r["paired_c_over_s"],
              "" if r["s_rate"] is None else r["s_rate"],
              "" if r["c_rate"] is None else r["c_rate"]] for r in rep.rows()),
            header=("n", "s", "c", "c_over_s", "n_c_over_s", "paired_c_over_s", "s_rate", "c_rate"),
        )
        (out_dir / f"growth_m{g.m}.csv").write_text(table)
        summary = rep.summary()
        summary["figures"] = [p.name for p in render_report(rep, out_dir)]
        (out_dir / f"growth_m{g.m}.json").write_text(_dump(summary) + "\n")
        return table + _dump(summary)
    counts = (growth.conj_class_counts if args.classes else growth.sphere_sizes)(g, args.max_n, cap=args.cap)
    return _csv(enumerate(counts.s)).rstrip("\n")


def _family(args):
    family = FAMILY_ALIASES.get(args.family, args.family)
    return growth.denominator_polynomial(family, args.k, args.j)


def cmd_series(args) -> str:
    den = _family(args)
    coeffs = growth.series_coeffs(den, growth.IntPolynomial((1,)), args.n)
    return _csv((i, str(c)) for i, c in enumerate(coeffs)).rstrip("\n")


def cmd_root(args) -> str:
    poly = _family(args)
    r = growth.smallest_positive_root(poly, tol=args.tol)
    return _dump({
        "polynomial": str(poly),
        "value": r.value,
        "bracket": list(r.bracket),
        "tolerance": r.tolerance,
        "growth_rate": r.growth_rate,
    })


def cmd_automaton(args) -> str:
    g = args.m
    d = langtools.build_conjgeo_dfa(g)
    if args.action == "count":
        if args.n is None:
            raise UsageError("automaton count needs --n")
        return _csv(enumerate(langtools.dfa_counts(d, args.n))).rstrip("\n")
    if args.action == "accepts":
        return _dump(langtools.dfa_accepts(d, _word(args, args.word or "")))
    if args.emit == "dot":
        return d.to_dot(f"conjgeo_m{g.m}")
    return d.to_json()


def cmd_fftp(args) -> str:
    return _dump(langtools.fftp_check(args.m, args.max_len).as_dict())


def cmd_selftest(args) -> str:
    results = selftest(args.m, args.max_len)
    out = _dump(results)
    if not all(r["ok"] for r in results["checks"]):
        print(out, file=sys.stderr)
        raise SelfTestFailed("selftest found disagreements with the oracle")
    return out


class SelfTestFailed(DomainError):
    kind = "SelfTestFailed"


def selftest(g: GroupParams, max_len: int) -> dict:
    """Oracle-equivalence checks at small caps."""
    checks = []
    ball = CayleyBall(g, max_len, keep_words=False)
    words = [w for n in range(max_len + 1) for w in all_words(n)]

    bad = sum(1 for w in words if geodesic.word_length(w, g) != ball.length(w))
    checks.append({"name": "geodesic_length", "words": len(words), "mismatches": bad, "ok": bad == 0})

    short = [w for w in words if len(w) <= max(2, max_len // 2)]
    bad = sum(
        1 for u in short for v in short
        if (to_canonical(u, g) == to_canonical(v, g)) != oracle_equal(u, v, g)
    )
    checks.append({"name": "word_problem", "pairs": len(short) ** 2, "mismatches": bad, "ok": bad == 0})

    conj_words = [w for w in words if len(w) <= min(3, max_len)]
    bad = sum(
        1 for u in conj_words for v in conj_words
        if conjugacy.is_conjugate(u, v, g) != brute_force_conjugate(u, v, g)
    )
    checks.append({"name": "conjugacy", "pairs": len(conj_words) ** 2, "mismatches": bad, "ok": bad == 0})

    d = langtools.build_conjgeo_dfa(g)
    bad = sum(
        1 for w in words
        if langtools.dfa_accepts(d, w)
        != (geodesic.is_geodesic(w, g) and len(w) == conjugacy.conjugacy_length(w, g))
    )
    checks.append({"name": "conjgeo_automaton", "words": len(words), "mismatches": bad, "ok": bad == 0})
    return {"m": g.m, "max_len": max_len, "checks": checks}


# ------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dihedral-artin", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=_positive, default=1, help="accepted for compatibility; work is sequential")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def with_m(p, required=True):
        p.add_argument("--m", type=_m, required=required, default=None if required else GroupParams(3))
        return p

    p = with_m(sub.add_parser("normalize", help="canonical form as JSON"))
    p.add_argument("word")
    p.set_defaults(func=cmd_normalize)

    p = with_m(sub.add_parser("geodesic", help="a geodesic representative and the length"))
    p.add_argument("word")
    p.add_argument("--all", action="store_true", help="list every geodesic")
    p.add_argument("--trace", action="store_true", help="show the rewriting steps")
    p.add_argument("--cap", type=_positive, default=geodesic.GEODESIC_CAP)
    p.set_defaults(func=cmd_geodesic)

    p = with_m(sub.add_parser("classify", help="type of a geodesic word"))
    p.add_argument("word")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("conj", help="conjugacy keys, tests and permutation conjugators")
    conj_sub = p.add_subparsers(dest="conj_cmd", parser_class=_Parser)
    conj_sub.required = True
    q = with_m(conj_sub.add_parser("key"))
    q.add_argument("word")
    q = with_m(conj_sub.add_parser("test"))
    q.add_argument("u")
    q.add_argument("v")
    q.add_argument("--brute", action="store_true", help="use the breadth-first oracle instead")
    q.add_argument("--radius", type=_positive, default=None)
    q = with_m(conj_sub.add_parser("pcl"))
    q.add_argument("u")
    q.add_argument("v")
    p.set_defaults(func=cmd_conj)

    p = with_m(sub.add_parser("pcl", help="same as `conj pcl`"))
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_pcl)

    p = with_m(sub.add_parser("growth", help="sphere sizes or class counts as CSV"))
    p.add_argument("--max-n", type=_positive, required=True)
    p.add_argument("--classes", action="store_true")
    p.add_argument("--cap", type=_positive, default=growth.DEFAULT_CAP)
    p.add_argument("--report", metavar="DIR", help="write the asymptotics table, summary and figures")
    p.set_defaults(func=cmd_growth)

    for name, func, help_text in (
        ("series", cmd_series, "coefficients of 1/den"),
        ("root", cmd_root, "smallest positive root of a denominator"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--family", required=True, help="p, q, p1, p3, pj, qs or a full family name")
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--j", type=int, default=None)
        if name == "series":
            p.add_argument("--n", type=_positive, required=True)
        else:
            p.add_argument("--tol", type=float, default=1e-12)
        p.set_defaults(func=func)

    p = with_m(sub.add_parser("automaton", help="conjugacy-geodesic automaton"))
    p.add_argument("action", nargs="?", choices=("emit", "count", "accepts"), default="emit")
    p.add_argument("word", nargs="?")
    p.add_argument("--emit", choices=("dot", "json"), default="json")
    p.add_argument("--n", type=_positive, default=None)
    p.set_defaults(func=cmd_automaton)

    p = with_m(sub.add_parser("fftp", help="fellow-traveller check on non-geodesic words"))
    p.add_argument("--max-len", type=_positive, default=6)
    p.set_defaults(func=cmd_fftp)

    p = with_m(sub.add_parser("selftest", help="oracle equivalence at small caps"), required=False)
    p.add_argument("--max-len", type=_positive, default=4)
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        # `automaton accepts --m 3 WORD`: argparse stops filling optional positionals after a flag
        if extra and args.command == "automaton" and args.word is None and len(extra) == 1 \
                and not extra[0].startswith("-"):
            args.word, extra = extra[0], []
        if extra:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        out = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        print(parser.format_usage(), file=stderr, end="")
        return 2
    except DomainError as exc:
        print(json.dumps({"error": exc.kind, "message": str(exc)}), file=stderr)
        return 1
    print(out, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
