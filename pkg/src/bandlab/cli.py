"""Command-line entry point.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import BandlabError
from .exact import LaurentPoly


def _frac(x) -> str:
    return str(x) if isinstance(x, LaurentPoly) else str(Fraction(x))


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like LO:HI, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError("window lower bound exceeds upper bound")
    return lo, hi


def _rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _type_a(n: int, word):
    from .rootdata import coxeter

    if n < 2:
        raise argparse.ArgumentTypeError("n must be at least 2")
    return coxeter(f"A{n - 1}", word)


# --------------------------------------------------------------------------
# subcommands


def cmd_rootdata(args) -> tuple[str, int]:
    from .rootdata import coxeter

    cox = coxeter(args.type, args.coxeter)
    return _dump(cox.to_json_obj()), 0


def cmd_steinberg(args) -> tuple[str, int]:
    from .slgroup import chi, steinberg_element, theta_power

    cox = _type_a(args.n, args.coxeter)
    t = args.theta
    if len(t) != cox.rank:
        raise BandlabError(f"need {cox.rank} values for --theta")
    a = steinberg_element(cox, t)
    out = {
        "coxeter": list(cox.word),
        "matrix": [[_frac(x) for x in row] for row in a.rows],
        "chi": [_frac(chi(a, i)) for i in range(1, cox.rank + 1)],
        "theta": {str(i): [_frac(theta_power(a, i, k)) for k in range(1, 5)]
                  for i in range(1, cox.rank + 1)},
    }
    return _dump(out), 0


def _band_json(b) -> dict:
    from .bands import theta_sik

    rows = [[_frac(x) for x in r] for r in b.rows()]
    table = {}
    for s in range(b.s_min, b.s_max):
        table[str(s)] = {str(i): _frac(theta_sik(b, s, i, 1)) for i in range(1, b.n)}
    return {"n": b.n, "coxeter": list(b.cox.word), "window": [b.s_min, b.s_max],
            "rows": rows, "theta": table}


def cmd_band(args) -> tuple[str, int]:
    from .bands import random_band

    cox = _type_a(args.n, args.coxeter)
    lo, hi = args.window
    if not lo <= 0 <= hi:
        raise BandlabError("band window must contain 0")
    b = random_band(args.n, cox, lo, hi, args.seed)
    out = _band_json(b)
    out["seed"] = args.seed
    return _dump(out), 0


def cmd_miura(args) -> tuple[str, int]:
    from .bands import make_rng, random_rational
    from .gauge import lce_from_coords, miura_H
    from .qchar import theta_symbolic, z_sym

    n = args.n
    cox = _type_a(n, None)
    lo, hi = args.window
    sym_theta = {s: {i: theta_symbolic(n, i, 1, s) for i in range(1, n)} for s in range(lo, hi + 1)}
    if not args.numeric:
        out = {"n": n, "window": [lo, hi], "symbols": "Z[j,s] = Delta_{w0 varpi_j, w0 varpi_j}(l(s))",
               "theta": {str(s): {str(i): str(p) for i, p in row.items()} for s, row in sym_theta.items()}}
        return _dump(out), 0
    rng = make_rng(args.seed)
    M = cox.max_m
    z = {(j, s): random_rational(rng, nonzero=True) for s in range(lo - M, hi + 1) for j in range(1, n)}
    l = {s: lce_from_coords([z[(j, s)] for j in range(1, n)]) for s in range(lo - M, hi + 1)}
    a = miura_H(l, cox)
    assign = {z_sym(j, s): v for (j, s), v in z.items()}
    rows, ok = {}, True
    for s in range(lo, hi + 1):
        row = {}
        for i in range(1, n):
            sv = sym_theta[s][i].eval(assign)
            nv = a[s].leading_minor(i)
            ok &= sv == nv
            row[str(i)] = {"symbolic": _frac(sv), "numeric": _frac(nv)}
        rows[str(s)] = row
    out = {"n": n, "window": [lo, hi], "seed": args.seed, "agree": ok, "theta": rows}
    return _dump(out), 0 if ok else 1


def cmd_qchar(args) -> tuple[str, int]:
    from .qchar import baxter_expand, check_qchar, classical_specialize, qchar_kr

    q = qchar_kr(args.n, args.i, args.k, args.s)
    if args.classical:
        poly = classical_specialize(q)
    elif args.baxter:
        poly = baxter_expand(q, "U-" if args.baxter.lower() in ("u-", "uminus") else "U")
    else:
        poly = q.poly
    if not args.json:
        return str(poly) + "\n", 0
    out = dict(q.header())
    out.update({"poly": poly.to_json_obj(), "text": str(poly), "dim": _frac(q.dim()),
                "checks": check_qchar(q)})
    return _dump(out), 0


def _build_quiver(args):
    from .cluster import build_gamma_quiver, build_theta_quiver, build_xi_quiver
    from .golden import load_quiver
    from .rootdata import coxeter

    cox = coxeter(args.type, args.coxeter)
    if args.seed == "theta":
        return build_theta_quiver(cox, args.layers, frozen_boundary=not args.no_frozen)
    lo, hi = args.window
    if args.seed == "xi":
        return build_xi_quiver(cox, lo, hi, frozen_boundary=not args.no_frozen)
    labels = None
    if (str(cox.type), cox.word) == ("A3", (1, 3, 2)):
        labels = load_quiver("gamma_A3_132.txt").labels
    return build_gamma_quiver(cox, lo, hi, labels=labels)


def _render_quiver(q, fmt: str) -> str:
    if fmt == "dot":
        return q.to_dot()
    if fmt == "json":
        return _dump({
            "vertices": sorted(q.vertices),
            "labels": dict(sorted(q.labels.items())),
            "frozen": sorted(q.frozen),
            "arrows": [[u, v, k] for (u, v), k in sorted(q.arrows.items())],
        })
    return q.to_text()


def cmd_cluster(args) -> tuple[str, int]:
    from .cluster import Seed, exchange_relation, mutate

    q = _build_quiver(args)
    if args.action == "build":
        return _render_quiver(q, args.format), 0
    if not args.at:
        raise BandlabError("mutate needs at least one --at vertex")
    seed = Seed.initial(q)
    steps = []
    for v in args.at:
        if v not in q.vertices:
            raise BandlabError(f"no vertex {v!r}")
        rel = exchange_relation(seed, v).labelled(seed.quiver.labels)
        seed = mutate(seed, v)
        num, den = seed.fraction(v)
        steps.append({"at": v, "relation": rel, "new_variable": str(seed.vars[v]),
                      "numerator": str(num), "denominator": str(den)})
    symbols = {str(Seed.initial(q).symbol_of(v)): v for v in sorted(q.vertices)}
    out = {"steps": steps, "symbols": symbols}
    if args.format == "json":
        return _dump(out), 0
    return _dump(out) + _render_quiver(seed.quiver, "text"), 0


def cmd_verify(args) -> tuple[str, int]:
    from .verify import RunConfig, run_verify

    cfg = RunConfig(type=args.type, coxeter=args.coxeter, n=args.n, trials=args.trials,
                    seed=args.seed, timings=args.timings)
    rep = run_verify(args.suite, cfg)
    return rep.to_json(), 0 if rep.passed else 1


def cmd_export(args) -> tuple[str, int]:
    if args.what == "quiver":
        text = _render_quiver(_build_quiver(args), args.format)
    elif args.what == "poly":
        text = _dump(LaurentPoly.parse(args.expr).to_json_obj())
    elif args.what == "qchar":
        from .qchar import qchar_kr

        q = qchar_kr(args.n, args.i, args.k, args.s)
        text = _dump({"header": q.header(), "poly": q.poly.to_json_obj()})
    else:
        from .bands import random_band

        cox = _type_a(args.n, args.coxeter_a)
        lo, hi = args.window
        b = random_band(args.n, cox, lo, hi, args.rng_seed)
        text = _dump(dict(_band_json(b), seed=args.rng_seed, g=b.to_json_obj()["g"]))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        return "", 0
    return text, 0


# --------------------------------------------------------------------------
# parser


def _add_quiver_args(p) -> None:
    p.add_argument("--seed", choices=["theta", "xi", "gamma"], default="theta")
    p.add_argument("--type", required=True)
    p.add_argument("--coxeter", default=None, help="comma-separated word, default 1,2,...,r")
    p.add_argument("--layers", type=int, default=3)
    p.add_argument("--window", type=_window, default=(-3, 1))
    p.add_argument("--no-frozen", action="store_true", help="do not freeze the window boundary")
    p.add_argument("--format", choices=["text", "dot", "json"], default="text")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bandlab", description="Exact computations with (G,c)-bands.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rootdata", help="Coxeter data of a Cartan type and word")
    p.add_argument("--type", required=True)
    p.add_argument("--coxeter", default=None)
    p.set_defaults(func=cmd_rootdata)

    p = sub.add_parser("steinberg", help="element of the Steinberg section and its characters")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=_rationals, required=True)
    p.add_argument("--coxeter", default=None)
    p.set_defaults(func=cmd_steinberg)

    p = sub.add_parser("band", help="random band window")
    p.add_argument("action", choices=["random"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coxeter", default=None)
    p.add_argument("--window", type=_window, default=(-4, 4))
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_band)

    p = sub.add_parser("miura", help="discrete Miura map on L^{c,e} windows")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--window", type=_window, default=(0, 2))
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--symbolic", action="store_true")
    mode.add_argument("--numeric", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_miura)

    p = sub.add_parser("qchar", help="q-character of a Kirillov-Reshetikhin module")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--s", type=int, default=0)
    form = p.add_mutually_exclusive_group()
    form.add_argument("--classical", action="store_true")
    form.add_argument("--baxter", choices=["u", "u-", "U", "U-"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_qchar)

    p = sub.add_parser("cluster", help="build quivers and mutate seeds")
    p.add_argument("action", choices=["build", "mutate"])
    _add_quiver_args(p)
    p.add_argument("--at", action="append", help="vertex id such as 1,2 (repeatable)")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("verify", help="run a verification suite")
    from .verify import SUITES

    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--type", default=None)
    p.add_argument("--coxeter", default=None)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="deterministic serialization")
    p.add_argument("what", choices=["quiver", "poly", "qchar", "band"])
    p.add_argument("--out", default=None)
    p.add_argument("--expr", default="0")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--coxeter-a", default=None, help="word for band export")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--seed", choices=["theta", "xi", "gamma"], default="theta")
    p.add_argument("--type", default="A2")
    p.add_argument("--coxeter", default=None)
    p.add_argument("--layers", type=int, default=3)
    p.add_argument("--window", type=_window, default=(-3, 1))
    p.add_argument("--no-frozen", action="store_true")
    p.add_argument("--format", choices=["text", "dot", "json"], default="text")
    p.set_defaults(func=cmd_export)
    return ap


def _join_windows(argv: list[str]) -> list[str]:
    """Let ``--window -4:4`` through: argparse would read -4:4 as an option."""
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--window":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--window={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_windows(sys.argv[1:] if argv is None else list(argv)))
    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be at least 1")
    try:
        text, code = args.func(args)
    except (BandlabError, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"bandlab: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"bandlab: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
