"""Command-line front end.

    g2net eval FILE [--mirror] [--r-kuperberg | --r NUM] [--q NUM] [--json] [--stats]
    g2net verify
    g2net examples
    g2net coeffs [--json]

Exit codes: 0 success, 1 evaluation error, 2 parse or validation error,
3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

from . import __version__
from .coeffs import KUPERBERG_R, build_table, identity_residuals
from .net import NetParseError, PlanarityError, mirror, parse
from .ring import FieldValue, PoleError

EXIT_OK, EXIT_EVAL, EXIT_PARSE, EXIT_VERIFY = 0, 1, 2, 3


def _number(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def specialize(value: FieldValue, *, r_kuperberg: bool = False, r=None, q=None):
    """Apply the requested substitutions; numeric q gives a Fraction."""
    if r_kuperberg:
        value = value.substitute_r(KUPERBERG_R)
    elif r is not None:
        value = value.substitute_r(FieldValue(r))
    if q is not None:
        return value.evaluate(q)
    return value


def render(value, as_json: bool) -> str:
    if isinstance(value, Fraction):
        return json.dumps({"value": str(value)}) if as_json else str(value)
    return json.dumps(value.to_json()) if as_json else str(value)


def cmd_eval(args) -> int:
    from .reduce import Evaluator, StuckError
    try:
        d = parse(_read(args.file))
    except (NetParseError, PlanarityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.mirror:
        d = mirror(d)
    ev = Evaluator()
    start = time.perf_counter()
    try:
        value = ev.evaluate(d)
        out = specialize(value, r_kuperberg=args.r_kuperberg, r=args.r, q=args.q)
    except PoleError as exc:
        print(f"error: pole under specialization: {exc}", file=sys.stderr)
        return EXIT_EVAL
    except (StuckError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL
    elapsed = time.perf_counter() - start
    if args.json:
        payload = {"value": json.loads(render(out, True))}
        if args.stats:
            payload["stats"] = dict(ev.stats.as_dict(), seconds=elapsed)
        print(json.dumps(payload))
    else:
        print(render(out, False))
        if args.stats:
            for k, v in ev.stats.as_dict().items():
                print(f"# {k}: {v}", file=sys.stderr)
            print(f"# seconds: {elapsed:.4f}", file=sys.stderr)
    return EXIT_OK


def cmd_coeffs(args) -> int:
    table = build_table().as_dict()
    if args.json:
        print(json.dumps({k: v.to_json() for k, v in table.items()}, indent=1))
    else:
        width = max(map(len, table))
        for k, v in table.items():
            print(f"{k:<{width}}  {v}")
    return EXIT_OK


def cmd_examples(args) -> int:
    from .examples import NAMES, expected, load
    from .reduce import invariant
    c7 = build_table().sevenC
    bad = 0
    for name in NAMES:
        got = invariant(load(name))
        want = expected(name)
        ok = got == want
        bad += not ok
        print(f"{'ok ' if ok else 'BAD'} {name:<8} 7c * {got / c7}")
        if not ok:
            print(f"    expected 7c * {want / c7}")
    return EXIT_OK if not bad else EXIT_VERIFY


def verification_checks(seed: int = 0) -> List[Tuple[str, Callable[[], bool]]]:
    """Named self-checks; each callable returns True on success."""
    from . import liealg
    from .examples import NAMES, expected, load
    from .generate import random_diagram, reidemeister2_pair, reidemeister3_pair
    from .reduce import invariant, verify_rule_closures
    from .skein import crossing_change_residual

    table = build_table()
    checks: List[Tuple[str, Callable[[], bool]]] = []
    checks.append(("coefficient identities",
                   lambda: all(v.is_zero() for v in identity_residuals(table).values())))
    checks.append(("root data: Weyl dimensions 1, 7, 14, 27", lambda: [
        liealg.weyl_dimension(w) for w in liealg.ROOTS.highest_weights.values()] == [1, 7, 14, 27]))
    checks.append(("root data: chord eigenvalues", lambda: list(liealg.chord_eigenvalues().values())
                   == [Fraction(1, 2), Fraction(1, 4), 0, Fraction(-1, 12)]))
    checks.append(("root data: crossing coefficients",
                   lambda: liealg.derive_skein_coefficients()
                   == (table.alpha, table.beta, table.gamma, table.delta)))

    def rosso_jones():
        poly = liealg.rosso_jones_unknot()
        c7 = table.sevenC.num
        return poly == type(poly)({(2 * e, k): c for (e, k), c in c7.terms.items()})
    checks.append(("root data: quantum dimension of V", rosso_jones))
    for res in verify_rule_closures(table):
        checks.append((f"rule closure {res.name}", lambda res=res: res.ok))
    for name in NAMES:
        checks.append((f"example {name}", lambda name=name: invariant(load(name)) == expected(name)))
        checks.append((f"mirror {name}", lambda name=name:
                       invariant(mirror(load(name))) == invariant(load(name)).invert_q()))

    def crossing_change():
        rng = random.Random(seed)
        for _ in range(10):
            d = random_diagram(rng, max_crossings=4)
            if any(not crossing_change_residual(d, c).is_zero() for c in d.crossings()):
                return False
        return True
    checks.append(("crossing-change relation on random diagrams", crossing_change))

    def moves(make):
        def run():
            rng = random.Random(seed)
            return all(invariant(a) == invariant(b) for a, b in (make(rng) for _ in range(10)))
        return run
    checks.append(("Reidemeister II", moves(reidemeister2_pair)))
    checks.append(("Reidemeister III", moves(reidemeister3_pair)))
    return checks


def cmd_verify(args) -> int:
    failed = 0
    for name, check in verification_checks():
        try:
            ok = bool(check())
        except Exception as exc:  # a crash is a failed check, reported by name
            ok = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    print(f"{'all checks passed' if not failed else f'{failed} check(s) failed'}")
    return EXIT_OK if not failed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="g2net", description="Exact (g2, V) invariant of framed links and 3-nets.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a NET file ('-' for stdin)")
    e.add_argument("file")
    e.add_argument("--mirror", action="store_true", help="evaluate the mirror image")
    rg = e.add_mutually_exclusive_group()
    rg.add_argument("--r-kuperberg", action="store_true", help="substitute r = -(q^2+q+1+q^-2+q^-3+q^-4)")
    rg.add_argument("--r", type=_number, metavar="NUM", help="substitute a rational value for r")
    e.add_argument("--q", type=_number, metavar="NUM", help="evaluate at a rational q")
    e.add_argument("--json", action="store_true")
    e.add_argument("--stats", action="store_true", help="report rule counts and cache use")
    e.set_defaults(func=cmd_eval)

    sub.add_parser("verify", help="run the internal consistency checks").set_defaults(func=cmd_verify)
    sub.add_parser("examples", help="evaluate the bundled examples").set_defaults(func=cmd_examples)
    c = sub.add_parser("coeffs", help="print the coefficient table")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_coeffs)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
