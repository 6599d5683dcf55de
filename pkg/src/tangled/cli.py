"""Command-line front end.

Model files are line based::

    # comment
    points 3
    edge 0 1
    edge 1 2
    val q 1

Exit codes: 0 when every check passes, 1 when a check fails or a
countermodel is found, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import algebra, constructions, laws
from .kernel import TANGLE_ALGORITHMS, Model, OracleBoundError, PointSet, QuasiOrder, closure, interior
from .logic import ParseError, Var, evaluate, parse, variables
from .logic.semantics import countermodel_search

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ModelFileError(ValueError):
    pass


class InputError(ValueError):
    pass


def parse_model(text: str, source: str = "<model>") -> Model:
    size = None
    edges: list[tuple[int, int, int]] = []
    vals: dict[str, tuple[int, list[int]]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        head, args = line[0], line[1:]
        try:
            if head == "points":
                if size is not None:
                    raise ModelFileError("points declared twice")
                (size,) = map(int, args)
                if size < 0:
                    raise ModelFileError("negative point count")
            elif head == "edge":
                x, y = map(int, args)
                edges.append((lineno, x, y))
            elif head == "val":
                if not args:
                    raise ModelFileError("val needs a name")
                name = args[0]
                if name in vals:
                    raise ModelFileError(f"duplicate valuation {name!r}")
                vals[name] = (lineno, [int(a) for a in args[1:]])
            else:
                raise ModelFileError(f"unknown directive {head!r}")
        except ModelFileError as exc:
            raise ModelFileError(f"{source}:{lineno}: {exc}") from None
        except ValueError:
            raise ModelFileError(f"{source}:{lineno}: malformed line {raw.strip()!r}") from None
    if size is None:
        raise ModelFileError(f"{source}: missing 'points' line")
    for lineno, x, y in edges:
        if not (0 <= x < size and 0 <= y < size):
            raise ModelFileError(f"{source}:{lineno}: edge ({x}, {y}) out of range for {size} points")
    valuation = {}
    for name, (lineno, members) in vals.items():
        bad = [x for x in members if not 0 <= x < size]
        if bad:
            raise ModelFileError(f"{source}:{lineno}: index {bad[0]} out of range for {size} points")
        try:
            Var(name)
        except ValueError:
            raise ModelFileError(f"{source}:{lineno}: invalid name {name!r}") from None
        valuation[name] = PointSet.of(size, members)
    return Model(QuasiOrder.from_edges(size, [(x, y) for _, x, y in edges]), valuation)


def load_model(path: str | Path) -> Model:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_model(text, str(path))


def dump_model(model: Model) -> str:
    lines = [f"points {model.size}"]
    lines += [f"edge {x} {y}" for x, y in model.order.edges()]
    for name, s in model.valuation.items():
        lines.append(" ".join(["val", name, *map(str, s)]))
    return "\n".join(lines) + "\n"


def resolve_set(model: Model, expr: str) -> PointSet:
    """A literal ``{i, j}`` or a formula over the model's valuation names."""
    expr = expr.strip()
    if expr.startswith("{"):
        if not expr.endswith("}"):
            raise InputError(f"unterminated set literal {expr!r}")
        body = expr[1:-1].replace(",", " ").split()
        try:
            return PointSet.of(model.size, [int(x) for x in body])
        except ValueError as exc:
            raise InputError(f"bad set literal {expr!r}: {exc}") from None
    try:
        f = parse(expr)
    except ParseError as exc:
        raise InputError(str(exc)) from None
    unknown = sorted(variables(f) - set(model.valuation))
    if unknown:
        raise InputError(f"unknown set name {unknown[0]!r}")
    return evaluate(f, model)


# --- commands -------------------------------------------------------------


def cmd_tangle(model_path: str, sets: Sequence[str], algo: str = "gfp", all_algos: bool = False) -> tuple[str, int]:
    model = load_model(model_path)
    gamma = [resolve_set(model, s) for s in sets]
    if not gamma:
        raise InputError("tangle needs at least one set")
    if not all_algos:
        return f"{TANGLE_ALGORITHMS[algo](model.order, gamma)}\n", EXIT_OK
    results = {name: fn(model.order, gamma) for name, fn in TANGLE_ALGORITHMS.items()}
    lines = [f"{name}: {value}" for name, value in results.items()]
    agree = len(set(results.values())) == 1
    verdict = "AGREE" if agree else "DISAGREE"
    lines.append(f"{results['gfp']} {verdict}")
    return "\n".join(lines) + "\n", EXIT_OK if agree else EXIT_FAIL


def cmd_closure(model_path: str, expr: str) -> tuple[str, int]:
    model = load_model(model_path)
    return f"{closure(model.order, resolve_set(model, expr))}\n", EXIT_OK


def cmd_interior(model_path: str, expr: str) -> tuple[str, int]:
    model = load_model(model_path)
    return f"{interior(model.order, resolve_set(model, expr))}\n", EXIT_OK


def cmd_eval(model_path: str, formula_text: str) -> tuple[str, int]:
    model = load_model(model_path)
    try:
        f = parse(formula_text)
    except ParseError as exc:
        raise InputError(str(exc)) from None
    value = evaluate(f, model)
    failing = ~value
    if not failing:
        return f"{value}\nVALID\n", EXIT_OK
    return f"{value}\nNOT VALID: fails at {failing.members[0]}\n", EXIT_FAIL


def cmd_laws(model_path: str, seed: int = 0) -> tuple[str, int]:
    model = load_model(model_path)
    reports = laws.sweep_all(model.order, seed)
    lines = [str(r) for r in reports]
    ok = all(r.passed for r in reports)
    lines.append("ALL PASS" if ok else "FAILURES")
    return "\n".join(lines) + "\n", EXIT_OK if ok else EXIT_FAIL


def cmd_countermodel(formula_text: str, max_points: int = 3) -> tuple[str, int]:
    try:
        f = parse(formula_text)
    except ParseError as exc:
        raise InputError(str(exc)) from None
    found = countermodel_search(f, max_points)
    if found is None:
        return f"# no countermodel up to {max_points} points\n", EXIT_OK
    m = found.model
    names = sorted(variables(f))
    full_val = {name: m.value(name) for name in names}
    text = (
        f"# countermodel for {f}\n"
        f"# falsified at point {found.point}\n"
        + dump_model(Model(m.order, full_val))
    )
    return text, EXIT_FAIL


def cmd_witness(m: int) -> tuple[str, int]:
    report = constructions.sigma_witness(m)
    verdict = "PASS" if report.overall else "FAIL"
    return f"WITNESS m={m}: {verdict}\n", EXIT_OK if report.overall else EXIT_FAIL


def cmd_enumerate(n: int, law: str = "all", seed: int = 0) -> tuple[str, int]:
    names = list(laws.CHECKERS) if law == "all" else [law]
    for name in names:
        if name not in laws.CHECKERS:
            raise InputError(f"unknown law {name!r}")
    orders = constructions.enumerate_quasiorders(n)
    lines = []
    ok = True
    for name in names:
        failures = sum(not laws.sweep_law(R, name, seed).passed for R in orders)
        ok &= failures == 0
        lines.append(f"{name}: {len(orders)} orders, {failures} failures")
    lines.append(f"enumerate n={n}: {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines) + "\n", EXIT_OK if ok else EXIT_FAIL


def cmd_dissect(model_path: str, alpha: str, r: int, s: int) -> tuple[str, int]:
    model = load_model(model_path)
    a = resolve_set(model, alpha)
    try:
        found = algebra.dissect_witness_search(model.order, a, r, s)
    except algebra.PreconditionError as exc:
        raise InputError(str(exc)) from None
    if found is None:
        return "NO WITNESS\n", EXIT_FAIL
    opens = " ".join(str(x) for x in found.opens) or "-"
    others = " ".join(str(x) for x in found.others) or "-"
    return f"opens: {opens}\nothers: {others}\n", EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tangled", description="Tangled closure over finite quasi-orders.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tangle", help="tangled closure of a family of sets")
    t.add_argument("model")
    t.add_argument("sets", nargs="+", help="valuation names, formulas, or literals like {0,2}")
    t.add_argument("--algo", choices=sorted(TANGLE_ALGORITHMS), default="gfp")
    t.add_argument("--all-algos", action="store_true")

    for name in ("closure", "interior"):
        c = sub.add_parser(name)
        c.add_argument("model")
        c.add_argument("set")

    e = sub.add_parser("eval", help="denotation and validity of a formula")
    e.add_argument("model")
    e.add_argument("formula")

    lw = sub.add_parser("laws", help="sweep every law over one model")
    lw.add_argument("model")
    lw.add_argument("--seed", type=int, default=0)

    cm = sub.add_parser("countermodel", help="bounded countermodel search")
    cm.add_argument("formula")
    cm.add_argument("--max-points", type=int, default=3)

    w = sub.add_parser("witness", help="check the chain witness of index m")
    w.add_argument("m", type=int)

    en = sub.add_parser("enumerate", help="sweep laws over every quasi-order on n points")
    en.add_argument("n", type=int)
    en.add_argument("law", nargs="?", default="all")
    en.add_argument("--seed", type=int, default=0)

    d = sub.add_parser("dissect", help="bounded dissection witness search")
    d.add_argument("model")
    d.add_argument("alpha")
    d.add_argument("r", type=int)
    d.add_argument("s", type=int)
    return p


def run(argv: Sequence[str] | None = None) -> tuple[str, int]:
    args = build_parser().parse_args(argv)
    c = args.command
    if c == "tangle":
        return cmd_tangle(args.model, args.sets, args.algo, args.all_algos)
    if c == "closure":
        return cmd_closure(args.model, args.set)
    if c == "interior":
        return cmd_interior(args.model, args.set)
    if c == "eval":
        return cmd_eval(args.model, args.formula)
    if c == "laws":
        return cmd_laws(args.model, args.seed)
    if c == "countermodel":
        return cmd_countermodel(args.formula, args.max_points)
    if c == "witness":
        return cmd_witness(args.m)
    if c == "enumerate":
        return cmd_enumerate(args.n, args.law, args.seed)
    return cmd_dissect(args.model, args.alpha, args.r, args.s)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        out, code = run(argv)
    except (ModelFileError, InputError, OracleBoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
