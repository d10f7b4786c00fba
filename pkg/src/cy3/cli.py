"""``cy3`` command line.

Exit status: 0 success, 1 a computation failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import verify
from .chern import ChernPair, hilbert_polynomial, is_integer_valued
from .errors import Cy3Error
from .exact import MultiPoly
from .forms import cube, pair
from .matcher import (
    EXPANSIONS,
    FamilyWitness,
    PAPER_FAMILY,
    build_certificate,
    enumerate_matches,
    modular_obstruction,
    paper_equation,
    paper_match_problem,
    standard_equation,
    verify_family,
)
from .modelfile import dumps_model, load_model, parse_assignment, resolve_divisor
from .models import distinguish as distinguish_models
from .models import model_x_phi, model_x_t
from .report import canonical, dumps, make_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Output:
    """Collects results, then prints aligned text or a canonical JSON report."""

    def __init__(self, args, argv):
        self.json = getattr(args, "json", False)
        self.argv = list(argv)
        self.inputs: dict = {}
        self.results: dict = {}
        self.lines: list[str] = []
        self.citations: list[str] = []

    def put(self, key, value, shown=None):
        self.results[key] = value
        self.lines.append((key, value if shown is None else shown))

    def text(self, line: str):
        self.lines.append((None, line))

    def emit(self, stream=None):
        stream = stream or sys.stdout
        if self.json:
            stream.write(dumps(make_report(self.argv, self.inputs, self.results, self.citations)))
            return
        width = max((len(k) for k, _ in self.lines if k), default=0)
        for key, value in self.lines:
            if key is None:
                stream.write(f"{value}\n")
            else:
                shown = value if isinstance(value, str) else canonical(value)
                stream.write(f"{key.ljust(width)}  {shown}\n")


def _model_input(ref: str) -> tuple[object, str]:
    model = load_model(ref)
    return model, dumps_model(model)


def cmd_verify_paper(args, out: Output) -> int:
    checks = verify.run_suite()
    out.inputs = {"x_phi": dumps_model(model_x_phi()), "x_t": dumps_model(model_x_t())}
    out.results = verify.suite_report(checks)
    for c in checks:
        out.text(c.line())
        if c.citation and c.citation not in out.citations:
            out.citations.append(c.citation)
    n_fail = sum(c.status == verify.FAIL for c in checks)
    out.text(f"{sum(c.status == verify.PASS for c in checks)} passed, {n_fail} failed")
    return EXIT_FAIL if n_fail else EXIT_OK


def _divisor_at(args):
    model, text = _model_input(args.model)
    d = resolve_divisor(model, args.divisor)
    at = parse_assignment(args.at)
    if at:
        d = d.substitute(at)
    return model, text, d, at


def cmd_cube(args, out: Output) -> int:
    model, text, d, at = _divisor_at(args)
    out.inputs = {"model": text, "divisor": args.divisor, "at": at}
    out.put("model", model.name)
    out.put("divisor", str(d))
    out.put("D^3", cube(model.cup, d))
    return EXIT_OK


def cmd_c2(args, out: Output) -> int:
    model, text, d, at = _divisor_at(args)
    out.inputs = {"model": text, "divisor": args.divisor, "at": at}
    out.put("model", model.name)
    out.put("divisor", str(d))
    out.put("D.c2", pair(model.c2, d))
    return EXIT_OK


def cmd_hilbert(args, out: Output) -> int:
    if args.model:
        model, text, d, at = _divisor_at(args)
        p = model.chern_pair(d)
        out.inputs = {"model": text, "divisor": args.divisor, "at": at}
    else:
        if args.d3 is None or args.dc2 is None:
            raise Cy3Error("hilbert needs --model/--divisor or both --d3 and --dc2")
        p = ChernPair(args.d3, args.dc2)
        out.inputs = {"d3": args.d3, "dc2": args.dc2}
    if not p.is_numeric():
        raise Cy3Error(f"Chern pair {p} is symbolic; bind its parameters with --at")
    hp = hilbert_polynomial(p)
    values = {str(n): hp(n) for n in args.n}
    out.put("(D^3, D.c2)", p, str(p))
    out.put("P(n)", str(hp))
    out.put("integer-valued", is_integer_valued(hp), str(is_integer_valued(hp)))
    out.put("values", values, ", ".join(f"P({n}) = {v}" for n, v in values.items()))
    return EXIT_OK


def cmd_distinguish(args, out: Output) -> int:
    (m1, t1), (m2, t2) = _model_input(args.model1), _model_input(args.model2)
    out.inputs = {"model1": t1, "model2": t2}
    d = distinguish_models(m1, m2)
    out.text(d.verdict)
    out.results = {"distinguished": d.distinguished, "verdict": d.verdict, "invariants": d.invariants}
    for inv in d.invariants:
        out.text(
            f"  {inv.name}: c2 divisible by 6: {inv.c2_divisible_by_6}; "
            f"cubic form divisible by 3: {inv.cube_divisible_by_3} ({inv.cube_route})"
        )
    return EXIT_OK


def _parse_box(items) -> tuple[int | None, dict[str, int]]:
    default, per = None, {}
    for item in items or ():
        if "=" in item:
            per.update(parse_assignment([item]))
        elif item.strip().lstrip("-").isdigit():
            default = int(item)
        else:
            raise Cy3Error(f"--box {item!r}: expected INT or NAME=INT")
    return default, per


def cmd_match(args, out: Output) -> int:
    eq = paper_equation() if args.equation == "paper" else standard_equation()
    default, per = _parse_box(args.box)
    fixed = parse_assignment(args.fix)
    out.inputs = {"equation": args.equation, "bound": args.bound, "box": args.box or [], "fix": fixed}
    out.put("equation", f"{eq} = 0")
    p = modular_obstruction(eq)
    if p is not None:
        out.put("solutions", [])
        out.put("infeasible", f"no solution modulo {p}, hence none over the integers; search skipped")
        return EXIT_OK
    box = {}
    for name in eq.variables:
        if name in fixed:
            continue
        if name in per:
            box[name] = per[name]
        elif default is not None:
            box[name] = default
        else:
            raise Cy3Error(f"no --box bound for parameter {name}")
    problem = paper_match_problem(args.bound, box, args.equation, fixed)
    sols = enumerate_matches(problem, workers=args.workers)
    order = problem.order
    out.put("parameters", "(" + ", ".join(order) + ")")
    out.put("count", len(sols))
    out.results["solutions"] = [
        {"values": list(s.values(order)), "H^3": s.common_value} for s in sols
    ]
    for s in sols[: args.limit] if args.limit else sols:
        out.text("(" + ", ".join(map(str, s.values(order))) + f")  H^3 = {s.common_value}")
    if args.certify and sols:
        cert = build_certificate(sols[0], model_x_phi(), model_x_t(), expansion=args.equation)
        out.results["certificate"] = cert
        out.text(f"certificate: (H^3, H.c2) = {cert.pairs[0]} on both sides, P(n) = {cert.hilbert}")
        out.text(f"  {cert.note}")
    return EXIT_OK


def cmd_family_check(args, out: Output) -> int:
    eq = paper_equation() if args.equation == "paper" else standard_equation()
    check = verify_family(FamilyWitness(PAPER_FAMILY, eq))
    out.inputs = {"equation": args.equation, "family": PAPER_FAMILY}
    out.put("equation", f"{eq} = 0")
    out.put("family", ", ".join(f"{k} = {MultiPoly.coerce(v)}" for k, v in PAPER_FAMILY.items()))
    out.put("composed", check.composed)
    out.put("holds", check.holds)
    exceeds = check.exceeds_bound
    out.put("exceeds C for C >= 1", exceeds, ", ".join(f"{k}: {v}" for k, v in exceeds.items()))
    if not check.holds:
        p = modular_obstruction(eq)
        if p is not None:
            out.put("obstruction", f"the equation has no solution modulo {p}")
    return EXIT_OK if check.holds else EXIT_FAIL


def cmd_export(args, out: Output) -> int:
    body = dumps_model(load_model(args.model))
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cy3", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="emit a canonical JSON report")
        p.set_defaults(func=func)
        return p

    add("verify-paper", cmd_verify_paper, "run the full reproduction suite")

    for name, func, what in (("cube", cmd_cube, "D^3"), ("c2", cmd_c2, "D.c2")):
        p = add(name, func, f"evaluate {what} symbolically")
        p.add_argument("--model", required=True, help="builtin:x_phi, builtin:x_t or a model file")
        p.add_argument("--divisor", required=True, help="template:NAME or e.g. 'E000 + x*L1'")
        p.add_argument("--at", action="append", metavar="NAME=INT", help="bind a parameter")

    p = add("hilbert", cmd_hilbert, "Hilbert polynomial from (D^3, D.c2)")
    p.add_argument("--model")
    p.add_argument("--divisor")
    p.add_argument("--at", action="append", metavar="NAME=INT")
    p.add_argument("--d3", type=int)
    p.add_argument("--dc2", type=int)
    p.add_argument("--n", type=int, nargs="*", default=[1, 2, 3])

    p = add("distinguish", cmd_distinguish, "compare topological divisibility invariants")
    p.add_argument("model1")
    p.add_argument("model2")

    p = add("match", cmd_match, "enumerate parameters with equal H^3")
    p.add_argument("--equation", choices=EXPANSIONS, default="paper")
    p.add_argument("--bound", type=int, default=0, help="all parameters strictly greater")
    p.add_argument("--box", action="append", metavar="INT|NAME=INT", help="inclusive upper bounds")
    p.add_argument("--fix", action="append", metavar="NAME=INT", help="pin a parameter")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--limit", type=int, default=0, help="print at most this many solutions")
    p.add_argument("--certify", action="store_true", help="certify the first solution")

    p = add("family-check", cmd_family_check, "compose the closed-form family into the equation")
    p.add_argument("--equation", choices=EXPANSIONS, default="paper")

    p = add("export", cmd_export, "write a model in the JSON model-file schema")
    p.add_argument("--model", required=True)
    p.add_argument("--out")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    out = Output(args, ["cy3"] + argv)
    try:
        status = args.func(args, out)
    except (Cy3Error, OSError) as exc:
        print(f"cy3: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out.emit()
    return status


if __name__ == "__main__":
    sys.exit(main())
