"""Command-line front end.

Subcommands: normalize, equal, haar, fuse, fusion-table, verify, predicates.
Exit codes: 0 success (and all checks passed for verify), 1 verification
failure, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from fractions import Fraction

from . import fusion as fus
from .crossed import CrossedElement, embed_pi, format_crossed_element
from .errors import ParseError
from .expressions import CrossedContext, parse_context, parse_expression
from .groups import PREDICATES, parse_model, predicate
from .haar import PMAX_DEFAULT, haar_state, mc_integral, norm_squared
from .verify import DEFAULT_SEED, SUITES
from .words import AO_STAR, Presentation, format_word_element

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _echo_config(args):
    config = {k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None}
    print(f"# config {json.dumps(config, default=str, sort_keys=True)}", file=sys.stderr)


def _format_value(x):
    if isinstance(x, CrossedElement):
        return format_crossed_element(x)
    return format_word_element(x)


def cmd_normalize(args):
    context = parse_context(args.context)
    value = parse_expression(args.expr, context)
    print(_format_value(value))
    return EXIT_OK


def _crossed_image(value, context):
    if isinstance(value, CrossedElement):
        return value
    return embed_pi(value)


def cmd_equal(args):
    context = parse_context(args.context)
    x = parse_expression(args.expr1, context)
    y = parse_expression(args.expr2, context)
    method = args.method

    if method == "nf":
        if isinstance(context, CrossedContext):
            print("error: --method nf applies to word contexts", file=sys.stderr)
            return EXIT_USAGE
        result = {"equal": x == y, "method": "nf", "exact": True}
    elif method == "exact":
        word_context = isinstance(context, Presentation)
        if word_context and context.kind != AO_STAR:
            print(
                f"error: --method exact decides equality for the full unitary group; "
                f"use --method mc with a matching --group for {context}",
                file=sys.stderr,
            )
            return EXIT_USAGE
        nrm = norm_squared(_crossed_image(x, context) - _crossed_image(y, context), p_max=args.degree_cap)
        result = {"equal": nrm == 0, "method": "exact", "exact": True, "norm_squared": str(nrm)}
    else:  # mc
        if args.group is None:
            print("error: --method mc needs --group", file=sys.stderr)
            return EXIT_USAGE
        model = parse_model(args.group)
        d = _crossed_image(x, context) - _crossed_image(y, context)
        sq = d.star() * d
        est = mc_integral(sq, model, args.samples or 10000, args.seed)
        threshold = max(1e-6, 5 * est.stderr)
        result = {
            "equal": abs(est.mean) < threshold,
            "method": "mc",
            "exact": False,
            "probabilistic": True,
            "norm_squared_estimate": abs(est.mean),
            "stderr": est.stderr,
            "samples": est.samples,
        }

    if args.json:
        print(json.dumps(result, sort_keys=True))
    else:
        note = " (probabilistic)" if result.get("probabilistic") else ""
        print(f"{str(result['equal']).lower()}{note}")
    return EXIT_OK


def cmd_haar(args):
    model = parse_model(args.group)
    context = CrossedContext(model.ambient_dim)
    value = parse_expression(args.expr, context)
    if args.mc:
        est = mc_integral(value, model, args.samples or 10000, args.seed)
        print(
            json.dumps(
                {
                    "mean_re": est.mean.real,
                    "mean_im": est.mean.imag,
                    "stderr": est.stderr,
                    "samples": est.samples,
                    "seed": est.seed,
                },
                sort_keys=True,
            )
        )
        return EXIT_OK
    if model.kind != "un":
        print("error: exact integration covers the full unitary group; use --mc", file=sys.stderr)
        return EXIT_USAGE
    print(str(haar_state(value, p_max=args.degree_cap)))
    return EXIT_OK


# -- fusion labels -----------------------------------------------------------


def fusion_instance(name: str):
    if name == "su2":
        return fus.SU2Fusion()
    kind, _, raw_n = name.partition(":")
    if kind == "un" and raw_n:
        return fus.UnFusion(int(raw_n))
    if kind == "torus" and raw_n:
        return fus.TorusFusion(int(raw_n))
    raise ValueError(f"no fusion data for {name!r} (available: un:N, su2, torus:N)")


def parse_label(text: str, data):
    text = text.strip()
    if isinstance(data, fus.SU2Fusion):
        if not text.startswith("j="):
            raise ParseError(f"spin labels look like j=3/2, got {text!r}")
        return Fraction(text[2:])
    if isinstance(data, fus.TorusFusion):
        if not (text.startswith("t[") and text.endswith("]")):
            raise ParseError(f"torus labels look like t[1,-1], got {text!r}")
        return tuple(int(p) for p in text[2:-1].split(","))
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(f"weight labels look like [2,0,-1], got {text!r}")
    return tuple(int(p) for p in text[1:-1].split(","))


def format_label(label, data):
    if isinstance(data, fus.SU2Fusion):
        return f"j={label}"
    if isinstance(data, fus.TorusFusion):
        return "t[" + ",".join(str(x) for x in label) + "]"
    return "[" + ",".join(str(x) for x in label) + "]"


def parse_flagged_label(text: str, data):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        body, _, flag = text[1:-1].rpartition(",")
        flag = flag.strip()
        if flag not in ("s", "e"):
            raise ParseError(f"flag must be s or e, got {flag!r}")
        return (parse_label(body, data), 1 if flag == "s" else 0)
    return (parse_label(text, data), 0)


def format_flagged_label(flagged, data):
    label, flag = flagged
    return f"({format_label(label, data)},{'s' if flag else 'e'})"


def cmd_fuse(args):
    data = fusion_instance(args.group)
    x = parse_flagged_label(args.x, data)
    y = parse_flagged_label(args.y, data)
    dec = fus.crossed_tensor(data, x, y)
    rows = sorted((format_flagged_label(lbl, data), mult) for lbl, mult in dec.items())
    if args.json:
        print(json.dumps([{"label": l, "mult": m} for l, m in rows]))
    else:
        for l, m in rows:
            print(f"{l} {m}")
    return EXIT_OK


def _fusion_table(data, grade_cap: int):
    if isinstance(data, fus.UnFusion):
        weights = _weights_within(data.n, grade_cap)
    elif isinstance(data, fus.TorusFusion):
        weights = _torus_within(data.n, grade_cap)
    else:
        weights = [Fraction(k, 2) for k in range(0, 2 * grade_cap + 1)]
    labels = sorted(((w, data.grade(w) % 2) for w in weights), key=lambda x: (str(x[0]), x[1]))
    table = {
        "group": str(data),
        "labels": [
            {
                "label": format_flagged_label(lbl, data),
                "dim": data.dim(lbl[0]),
                "grade": data.grade(lbl[0]),
            }
            for lbl in labels
        ],
        "products": [],
    }
    for x in labels:
        for y in labels:
            dec = fus.astar_tensor(data, x, y)
            table["products"].append(
                {
                    "x": format_flagged_label(x, data),
                    "y": format_flagged_label(y, data),
                    "result": [
                        {"label": format_flagged_label(lbl, data), "mult": mult}
                        for lbl, mult in sorted(dec.items(), key=lambda kv: str(kv[0]))
                    ],
                }
            )
    return table


def _weights_within(n, cap):
    out = []

    def rec(acc):
        if len(acc) == n:
            out.append(tuple(acc))
            return
        hi = acc[-1] if acc else cap
        for v in range(hi, -cap - 1, -1):
            if sum(abs(x) for x in acc) + abs(v) <= cap:
                rec(acc + [v])

    rec([])
    return [w for w in out if sum(abs(x) for x in w) <= cap]


def _torus_within(n, cap):
    out = []

    def rec(acc):
        if len(acc) == n:
            out.append(tuple(acc))
            return
        for v in range(-cap, cap + 1):
            if sum(abs(x) for x in acc) + abs(v) <= cap:
                rec(acc + [v])

    rec([])
    return out


def cmd_fusion_table(args):
    data = fusion_instance(args.group)
    table = _fusion_table(data, args.grade_cap)
    text = json.dumps(table, indent=None, separators=(",", ":")) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_predicates(args):
    model = parse_model(args.model)
    names = PREDICATES if args.which == "all" else (args.which,)
    for which in names:
        res = predicate(model, which, trials=args.trials, rng_seed=args.seed)
        witness = None
        if res.witness is not None:
            witness = {
                k: ({"re": v.real, "im": v.imag} if isinstance(v, complex) else v)
                for k, v in res.witness.items()
                if k != "matrix"
            }
        print(
            json.dumps(
                {"model": str(model), "predicate": which, "value": res.value, "witness": witness},
                sort_keys=True,
            )
        )
    return EXIT_OK


def cmd_verify(args):
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    params = _suite_params(args)
    ok = True
    for name in names:
        fn = SUITES.get(name)
        if fn is None:
            print(f"error: unknown suite {name!r}; available: {', '.join(sorted(SUITES))}", file=sys.stderr)
            return EXIT_USAGE
        accepted = set(inspect.signature(fn).parameters)
        report = fn(**{k: v for k, v in params.items() if k in accepted})
        for line in report.json_lines():
            print(line)
        ok = ok and report.passed
        summary = "PASS" if report.passed else "FAIL"
        print(f"# suite {name}: {summary} ({len(report.checks)} checks)", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def _suite_params(args):
    params = {}
    for key in ("n", "maxlen", "k", "samples", "trials", "seed", "points"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    return params


def build_parser():
    parser = argparse.ArgumentParser(
        prog="halfcomm",
        description="Half-commutative orthogonal Hopf algebras: normal forms, exact Haar states, fusion rules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="RNG seed for randomized checks")
    common.add_argument("--samples", type=int, default=None, help="Monte Carlo sample count")
    common.add_argument("--degree-cap", type=int, default=PMAX_DEFAULT, dest="degree_cap",
                        help="cap on the exact-integration degree")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("normalize", parents=[common], help="canonical form of an expression")
    p.add_argument("--context", required=True, help="ao-star:N | ah-star:N | au-star-star:N | crossed:N")
    p.add_argument("expr")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("equal", parents=[common], help="equality of two expressions")
    p.add_argument("--context", required=True)
    p.add_argument("--method", choices=("nf", "exact", "mc"), default="exact")
    p.add_argument("--group", help="group model for --method mc, e.g. kn:2")
    p.add_argument("expr1")
    p.add_argument("expr2")
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("haar", parents=[common], help="Haar integral of a crossed expression")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact Weingarten integration (default)")
    mode.add_argument("--mc", action="store_true", help="Monte Carlo estimation")
    p.add_argument("--group", required=True, help="group model, e.g. un:2")
    p.add_argument("expr")
    p.set_defaults(func=cmd_haar)

    p = sub.add_parser("fuse", parents=[common], help="tensor product of two (flagged) labels")
    p.add_argument("--group", required=True, help="un:N | su2 | torus:N")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("fusion-table", parents=[common], help="export a graded fusion table as JSON")
    p.add_argument("--group", required=True)
    p.add_argument("--grade-cap", type=int, default=2, dest="grade_cap")
    p.add_argument("--out", help="output path (stdout if omitted)")
    p.set_defaults(func=cmd_fusion_table)

    p = sub.add_parser("predicates", parents=[common], help="transpose/reality predicates of a group model")
    p.add_argument("--model", required=True)
    p.add_argument("--which", default="all", choices=("all",) + PREDICATES)
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(func=cmd_predicates)

    p = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    p.add_argument("--suite", required=True, help="suite name or 'all'")
    p.add_argument("--n", type=int)
    p.add_argument("--maxlen", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--points", type=int)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _echo_config(args)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
