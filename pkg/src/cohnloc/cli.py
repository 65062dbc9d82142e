"""Command-line front end.

Groups are read from a file (see :mod:`cohnloc.formats`) or named with a
leading ``@`` from the built-in list, e.g. ``@S3``.  Exit codes: 0 pass,
1 check failure, 2 input error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import hashlib
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BudgetExceeded, CohnlocError, InputError, NotAUnit, ParseError, TheoremViolation
from .formats import format_lambda_matrix, parse_group, parse_matrix
from .groupring import parse_element
from .homology import DEFAULT_BUDGET_MB, group_homology
from .localization import (
    LambdaContext,
    LambdaMatrix,
    canonical_map,
    format_lambda,
    lambda_invert,
    lambda_is_unit,
    lambda_matrix_invert,
    theorem_b_report,
    wh_membership,
    ws_membership,
)
from .suites import BUILTIN_GROUPS, SUITES, builtin_group, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class RunReport:
    command: str
    digest: str
    outcome: str = "value"
    details: list = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, key, value):
        self.details.append((key, str(value)))

    def render(self, timing=False):
        lines = [f"command: {self.command}", f"inputs: sha256:{self.digest}"]
        for k, v in self.details:
            if "\n" in v:
                lines.append(f"{k}:")
                lines += ["  " + ln for ln in v.rstrip("\n").split("\n")]
            else:
                lines.append(f"{k}: {v}")
        lines.append(f"outcome: {self.outcome}")
        if timing:
            lines.append(f"wall time: {self.wall_time:.3f} s")
        return "\n".join(lines) + "\n"


def _digest(*parts):
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode())
        h.update(b"\0")
    return h.hexdigest()[:16]


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def load_group(spec):
    """Return ``(group, text used for the digest)``."""
    if spec.startswith("@"):
        name = spec[1:]
        if name not in BUILTIN_GROUPS:
            raise InputError(f"unknown built-in group {name!r}; choose from {', '.join(BUILTIN_GROUPS)}")
        return builtin_group(name), spec
    text = _read(spec)
    return parse_group(text), text


def cmd_analyze(args):
    G, text = load_group(args.group)
    rep = RunReport("analyze", _digest(text))
    ctx = LambdaContext(G)
    hist = Counter(G.element_orders)
    rep.add("order", G.order)
    rep.add("element orders", " ".join(f"{k}:{hist[k]}" for k in sorted(hist)))
    rep.add("p-quotients", ", ".join(f"({p}, {Q.order})" for p, Q in zip(ctx.primes, ctx.quotients))
            or "none")
    tb = theorem_b_report(G, ctx)
    rep.add("lower central series orders", " ".join(map(str, tb.lower_central_series_orders)))
    rep.add("result", f"Λ = {ctx.describe()}; {'nilpotent' if tb.nilpotent else 'not nilpotent'}")
    for p, w in tb.omegas.items():
        rep.add(f"omega_{p}", w)
    return rep, EXIT_PASS


def cmd_invert(args):
    G, gtext = load_group(args.group)
    mtext = _read(args.matrix)
    rep = RunReport("invert", _digest(gtext, mtext))
    M = parse_matrix(mtext, G)
    wh = wh_membership(M)
    rep.add("W^h", "yes" if wh else "no")
    rep.add("W^s", "yes" if ws_membership(M) else "no")
    ctx = LambdaContext(G)
    L = LambdaMatrix.from_group_ring(ctx, M)
    inv = lambda_matrix_invert(L)  # raises NotInvertibleOverZ outside W^h
    rep.add("inverse", format_lambda_matrix(inv))
    ident = LambdaMatrix.identity(ctx, M.rows)
    ok = L @ inv == ident and inv @ L == ident
    rep.add("check M M^-1 = M^-1 M = 1", "pass" if ok else "fail")
    rep.outcome = "pass" if ok else "fail"
    return rep, EXIT_PASS if ok else EXIT_FAIL


def cmd_localize_element(args):
    G, gtext = load_group(args.group)
    rep = RunReport("localize-element", _digest(gtext, args.element))
    e = parse_element(args.element, G)
    ctx = LambdaContext(G)
    image = canonical_map(ctx, e)
    rep.add("Λ", ctx.describe())
    rep.add("image", format_lambda(image))
    unit = lambda_is_unit(image)
    rep.add("unit", "yes" if unit else "no")
    if unit:
        rep.add("inverse", format_lambda(lambda_invert(image)))
    return rep, EXIT_PASS


def cmd_homology(args):
    G, gtext = load_group(args.group)
    rep = RunReport("homology", _digest(gtext, str(args.degree), str(args.prime)))
    normalized = True if args.normalized_bar else None
    H = group_homology(G, args.degree, args.prime, normalized, args.budget_mb)
    coeff = "Z" if args.prime is None else f"Z_({args.prime})"
    rep.add(f"H_{args.degree}(G, {coeff})", H)
    return rep, EXIT_PASS


def cmd_verify(args):
    rep = RunReport(f"verify {args.suite}", _digest(args.suite, str(args.bound)))
    kwargs = {}
    if args.suite == "quillen":
        kwargs = {"bound": args.bound, "budget_mb": args.budget_mb}
    elif args.suite == "example2":
        kwargs = {"budget_mb": args.budget_mb, "stretch": args.stretch}
    checks = run_suite(args.suite, **kwargs)
    for c in checks:
        rep.add("PASS" if c.passed else "FAIL", c.name + (f" [{c.detail}]" if c.detail else ""))
    ok = all(c.passed for c in checks)
    rep.outcome = "pass" if ok else "fail"
    return rep, EXIT_PASS if ok else EXIT_FAIL


def build_parser():
    ap = argparse.ArgumentParser(prog="cohnloc", description=__doc__.split("\n")[0])
    ap.add_argument("--budget-mb", type=int, default=DEFAULT_BUDGET_MB,
                    help="memory budget for bar-resolution matrices")
    ap.add_argument("--timing", action="store_true", help="append wall time to the report")
    # the same flags after the subcommand; SUPPRESS keeps the top-level value otherwise
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-mb", type=int, default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    a = command("analyze", "p-quotients, nilpotency and the shape of Λ(G)")
    a.add_argument("group")
    a.set_defaults(fn=cmd_analyze)

    i = command("invert", "invert a square matrix over Z[G] in Λ(G)")
    i.add_argument("group")
    i.add_argument("matrix")
    i.set_defaults(fn=cmd_invert)

    e = command("localize-element", "image of a Z[G] element in Λ(G)")
    e.add_argument("group")
    e.add_argument("element", help="e.g. '(2)*g0 + (-1)*g1'")
    e.set_defaults(fn=cmd_localize_element)

    h = command("homology", "integral group homology via the bar resolution")
    h.add_argument("group")
    h.add_argument("degree", type=int)
    h.add_argument("--prime", type=int, default=None, help="use Z_(p) coefficients")
    h.add_argument("--normalized-bar", action="store_true")
    h.set_defaults(fn=cmd_homology)

    v = command("verify", "run a bundled verification suite")
    v.add_argument("suite", help=", ".join(SUITES))
    v.add_argument("--bound", type=int, default=4, help="degree bound for the quillen suite")
    v.add_argument("--stretch", action="store_true",
                   help="example2: also compute H_3 of the binary icosahedral group")
    v.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None):
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        rep, code = args.fn(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except TheoremViolation as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (InputError, NotAUnit, ParseError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CohnlocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep.wall_time = time.perf_counter() - start
    sys.stdout.write(rep.render(args.timing))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
