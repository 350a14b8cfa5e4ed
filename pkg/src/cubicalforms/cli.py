"""Command-line front end: ``cubicalforms <subcommand> ...``.

Exit codes: 0 success, 1 mathematical mismatch or failed check, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import CubicalFormsError, MismatchAgainstPaper

__all__ = ["main", "build_parser", "parse_mod", "thread_cap"]

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def thread_cap():
    """Parallelism cap from CUBICALFORMS_THREADS (default 1).

    All computations here are deterministic and currently run on one
    thread; the value is validated so a bad setting is reported early.
    """
    raw = os.environ.get("CUBICALFORMS_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"CUBICALFORMS_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"CUBICALFORMS_THREADS must be a positive integer, got {raw!r}")
    return n


def parse_mod(text):
    """``"2,a1,a2"`` -> ``(2, ("a1", "a2"))``; the prime is optional."""
    from .weierstrass import CURVE_VARS

    prime, killed = None, []
    for item in (s.strip() for s in text.split(",")):
        if not item:
            continue
        if item.lstrip("-").isdigit():
            if prime is not None:
                raise UsageError(f"more than one prime in --mod {text!r}")
            prime = int(item)
        elif item in CURVE_VARS:
            killed.append(item)
        else:
            raise UsageError(f"unknown variable {item!r} in --mod {text!r}")
    return prime, tuple(killed)


def _positive(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {n}")
    return n


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    p = _Parser(prog="cubicalforms", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats=("text", "json")):
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    w = sub.add_parser("weierstrass", help="z(x), formal group law, formal inverse")
    w.add_argument("what", choices=("fgl", "zseries", "inverse"))
    w.add_argument("--order", type=_positive, default=4)
    w.add_argument("--gamma13", action="store_true", help="use the Gamma_1(3) curve")
    w.add_argument("--mod", help="reduce modulo an ideal, e.g. 2,a1,a2")
    common(w)

    c = sub.add_parser("cubical", help="the cubical structure r_U and its mod-2 check")
    c.add_argument("what", choices=("rU", "appendixB"))
    c.add_argument("--order", type=_positive, default=5)
    c.add_argument("--gamma13", action="store_true")
    c.add_argument("--mod")
    common(c)

    i = sub.add_parser("involution", help="the Gamma_1(3) involution and Pontryagin series")
    i.add_argument("what", choices=("g", "check", "pontryagin"))
    i.add_argument("--order", type=_positive, default=8)
    i.add_argument("--rank", type=_positive, default=1, help="number of torus roots for pontryagin")
    i.add_argument("--mod")
    common(i)

    q = sub.add_parser("qchar", help="theta function, level-3 genus and character product")
    q.add_argument("what", choices=("phi", "genus", "psi", "character", "eisenstein"))
    q.add_argument("--x-order", type=_positive, default=9)
    q.add_argument("--q-order", type=_positive, default=5)
    q.add_argument("--form", choices=("product", "exp"), default="product")
    q.add_argument("--shift", choices=("none", "-omega", "minus-omega", "omega"), default="none",
                   help="argument shift; write --shift=-omega or --shift minus-omega")
    q.add_argument("--roots", type=_positive, default=1)
    q.add_argument("--weight", type=_positive, default=2)
    common(q)

    s = sub.add_parser("ssq", help="the homotopy-fixed-point spectral sequence")
    s.add_argument("what", choices=("chart", "check"))
    s.add_argument("--kmax", type=_positive, default=48)
    s.add_argument("--filtration-max", type=_positive, default=16)
    s.add_argument("--u2-max", type=_positive, default=8)
    s.add_argument("--u1-max", type=_positive, default=16)
    s.add_argument("--row", type=int, default=0, help="alpha-part of the chart row")
    common(s, ("ascii-chart", "json", "text"))

    v = sub.add_parser("verify", help="recompute every pinned formula and property")
    v.add_argument("--suite", choices=("paper",), default="paper")
    v.add_argument("--criteria", help="comma-separated subset of 1-9")
    common(v)
    return p


def _emit(args, text):
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=False)


def _series_out(args, series, extra=None):
    if args.format == "json":
        data = series.to_json()
        data["text"] = str(series)
        if extra:
            data.update(extra)
        return _dump(data)
    return str(series)


def _mod(args):
    if not args.mod:
        return None
    return parse_mod(args.mod)


def run_weierstrass(args):
    from .weierstrass import WeierstrassCurve, fgl, formal_inverse, z_series

    curve = WeierstrassCurve.gamma13() if args.gamma13 else WeierstrassCurve.general()
    if args.what == "fgl":
        if args.order < 2:
            raise UsageError("fgl needs --order >= 2")
        s = fgl(curve, args.order)
    elif args.what == "zseries":
        if args.order < 3:
            raise UsageError("zseries needs --order >= 3")
        s = z_series(curve, args.order)
    else:
        s = formal_inverse(curve, args.order)
    mod = _mod(args)
    if mod:
        s = s.reduce_mod(*mod)
    return EXIT_OK, _series_out(args, s)


def run_cubical(args):
    from .cubical import appendix_b_pipeline, cubical_structure
    from .weierstrass import WeierstrassCurve

    if args.what == "appendixB":
        report = appendix_b_pipeline(max(args.order, 4))
        if args.format == "json":
            data = dict(report)
            data["checks"] = [{"name": n, "passed": ok} for n, ok in report["checks"]]
            return EXIT_OK, _dump(data)
        lines = [f"{k}: {v}" for k, v in report.items() if k != "checks"]
        lines += [f"[PASS] {n}" for n, _ in report["checks"]]
        return EXIT_OK, "\n".join(lines)
    if args.order < 1:
        raise UsageError("--order must be positive")
    curve = WeierstrassCurve.gamma13() if args.gamma13 else WeierstrassCurve.general()
    r = cubical_structure(curve, args.order, mod=_mod(args))
    extra = {}
    if args.order >= 4:
        extra["coefficients"] = {"x0*x1*x2": str(r.coefficient((1, 1, 1)))}
    if args.order >= 5:
        for e, name in (((2, 1, 1), "x0^2*x1*x2"), ((1, 2, 1), "x0*x1^2*x2"), ((1, 1, 2), "x0*x1*x2^2")):
            extra["coefficients"][name] = str(r.coefficient(e))
    return EXIT_OK, _series_out(args, r, extra)


def run_involution(args):
    from .involution import gamma13_g, pontryagin_series, twisted_compose_check

    if args.what == "g":
        s = gamma13_g(args.order)
        mod = _mod(args)
        if mod:
            s = s.reduce_mod(*mod)
        return EXIT_OK, _series_out(args, s)
    if args.what == "pontryagin":
        if args.rank < 1:
            raise UsageError("--rank must be at least 1")
        s = pontryagin_series(args.rank, args.order)
        return EXIT_OK, _series_out(args, s)
    res = twisted_compose_check(args.order)
    fields = ("twisted", "plain", "plain_mod2")
    if args.format == "json":
        data = {k: (str(v) if k in fields else v) for k, v in res.items()}
        return EXIT_OK, _dump(data)
    lines = [f"{k}: {res[k]}" for k in fields]
    lines += [f"{k}: {res[k]}" for k in res if k.endswith("_is_identity")]
    code = EXIT_OK if res["twisted_is_identity"] and res["plain_mod2_is_identity"] else EXIT_MISMATCH
    return code, "\n".join(lines)


def run_qchar(args):
    from . import qchar

    xo, qo = args.x_order, args.q_order
    shift = {"none": None, "minus-omega": "-omega"}.get(args.shift, args.shift)
    if args.what == "phi":
        if args.form == "exp":
            if shift is not None:
                raise UsageError("the exponential form is only available without a shift")
            s = qchar.phi_exp(xo, qo)
        else:
            s = qchar.phi_product(xo, qo, shift)
    elif args.what == "genus":
        s = qchar.level3_genus_x(xo, qo)
    elif args.what == "psi":
        s = qchar.psi_series(xo, qo)
    elif args.what == "character":
        s = qchar.character_product(args.roots, xo, qo)
    else:
        if args.weight < 2 or args.weight % 2:
            raise UsageError("--weight must be an even integer >= 2")
        s = qchar.eisenstein_G(args.weight, qo)
    if args.format == "json":
        return EXIT_OK, _dump(s.to_json())
    return EXIT_OK, str(s)


def run_ssq(args):
    from . import ssq

    window = ssq.Window(args.kmax, args.filtration_max, args.u2_max, args.u1_max)
    if args.what == "check":
        results = ssq.suite(window)
        ok = all(r[1] for r in results)
        if args.format == "json":
            return (EXIT_OK if ok else EXIT_MISMATCH), _dump(
                [{"name": n, "passed": p, "detail": d} for n, p, d in results])
        lines = [f"[{'PASS' if p else 'FAIL'}] {n} ({d})" for n, p, d in results]
        return (EXIT_OK if ok else EXIT_MISMATCH), "\n".join(lines)
    chart = ssq.e_infinity_chart(window, l=args.row)
    if args.format == "json":
        return EXIT_OK, _dump(chart)
    if args.format == "text":
        lines = [f"{g['degree']} filtration {g['filtration']}: {g['representative']} "
                 f"order {g['order']}{'' if g['determinate'] else ' (undecided)'}"
                 for g in chart["generators"]]
        return EXIT_OK, "\n".join(lines)
    return EXIT_OK, ssq.render_ascii_chart(chart)


def run_verify(args):
    from .verify import format_report, run_suite

    criteria = None
    if args.criteria:
        try:
            criteria = sorted({int(c) for c in args.criteria.split(",")})
        except ValueError:
            raise UsageError(f"bad --criteria {args.criteria!r}") from None
        if any(c < 1 or c > 9 for c in criteria):
            raise UsageError("criteria are numbered 1-9")
    checks = run_suite(args.suite, criteria)
    ok = all(c.passed for c in checks)
    if args.format == "json":
        text = _dump({"suite": args.suite, "passed": ok, "checks": [
            {"criterion": c.criterion, "name": c.name, "passed": c.passed, "detail": c.detail}
            for c in checks]})
    else:
        text = format_report(checks)
    return (EXIT_OK if ok else EXIT_MISMATCH), text


DISPATCH = {
    "weierstrass": run_weierstrass,
    "cubical": run_cubical,
    "involution": run_involution,
    "qchar": run_qchar,
    "ssq": run_ssq,
    "verify": run_verify,
}


def main(argv=None):
    try:
        thread_cap()
        args = build_parser().parse_args(argv)
        code, text = DISPATCH[args.command](args)
        _emit(args, text)
        return code
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MismatchAgainstPaper as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except CubicalFormsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
