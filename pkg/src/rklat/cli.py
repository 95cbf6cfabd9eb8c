"""Command-line front end: ``rklat gen | check | compute``.

Exit codes: 0 when everything passed (or failed exactly as expected), 1 on
a property failure, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import falgebra as fa
from . import generate as gen
from .falgebra import AtomSpace, FElem, Idem
from .operators import ExtensionError, Operator, extend_cone_map, rk_abs, rk_inf, rk_neg, rk_pos, rk_sup
from .pomodule import ModuleElem, ModuleSpace, support_of_element
from .serialize import (
    Instance,
    ParseError,
    dump_felem,
    dump_idem,
    dump_module_elem,
    dump_operator_blocks,
    dump_rational,
    dump_value,
    dumps,
    instance_to_dict,
    loads_instance,
)
from .verify.suites import SUITES, SuiteParams, UnknownSuiteError, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SEED_ENV = "RKLAT_SEED"
COMPUTE_WHAT = ("sup", "inf", "pos", "neg", "abs", "extend", "freudenthal", "support", "cmp-idem")


class UsageError(Exception):
    pass


def _seed(args) -> int:
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return args.seed


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> Instance:
    return loads_instance(_read(path))


# -- gen -------------------------------------------------------------------


def build_instance(atoms: int, dim_x: int, dim_y: int, denom_cap: int, seed: int) -> Instance:
    """Random instance with modules X, Y, A, operators S, T, R (positive), F (functional)."""
    rng = gen.trial_rng(seed, 0, salt=7)
    space = AtomSpace(atoms)
    kinds = ("none", "monomial")
    X = gen.module_space(rng, space, dim_x, denom_cap, kinds)
    Y = gen.module_space(rng, space, dim_y, denom_cap, kinds)
    K = ModuleSpace(space, 1)
    inst = Instance(space)
    inst.modules.update(X=X, Y=Y, A=K)
    for name, dom, cod, positive in (("S", X, Y, False), ("T", X, Y, False), ("R", X, Y, True), ("F", X, K, False)):
        inst.operators[name] = gen.operator(rng, dom, cod, denom_cap, positive=positive)
        inst.operator_refs[name] = ("X", "Y" if cod is Y else "A")
    cut = gen.idem(rng, space)
    inst.cone_map_specs.update({
        "swap": {"rule": "swap", "module": "A"},
        "cut": {"rule": "idempotent-cut", "module": "X", "idem": dump_idem(cut)},
        "restrict-R": {"rule": "restriction", "operator": "R"},
    })
    inst.elements.update(
        a=gen.felem(rng, space, denom_cap),
        b=gen.felem(rng, space, denom_cap),
        p=gen.idem(rng, space),
        x=gen.element(rng, X, denom_cap, positive=True),
        y=gen.element(rng, X, denom_cap),
    )
    inst.element_modules.update(x="X", y="X")
    inst.seeds = [seed]
    return inst


def cmd_gen(args) -> int:
    for flag in ("atoms", "dim_x", "dim_y", "denom_cap"):
        if getattr(args, flag) < 1:
            raise UsageError(f"--{flag.replace('_', '-')} must be >= 1")
    inst = build_instance(args.atoms, args.dim_x, args.dim_y, args.denom_cap, _seed(args))
    text = dumps(instance_to_dict(inst))
    if args.out == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc.strerror}") from None
    return EXIT_OK


# -- check -----------------------------------------------------------------


def cmd_check(args) -> int:
    inst = _load(args.instance) if args.instance is not None else None
    if args.cone_map is not None and inst is not None and args.cone_map not in inst.cone_map_specs \
            and args.cone_map not in ("swap", "restriction", "idempotent-cut"):
        raise UsageError(f"unknown cone map {args.cone_map!r}")
    params = SuiteParams(
        trials=args.trials, n_atoms=args.atoms, dim_x=args.dim_x, dim_y=args.dim_y,
        denom_cap=args.denom_cap, subdiv=args.subdiv, cone_map=args.cone_map, instance=inst,
    )
    try:
        report = run_suite(args.suite, params, _seed(args))
    except UnknownSuiteError as exc:
        raise UsageError(str(exc.args[0])) from None
    print(report.to_json() if args.format == "json" else report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


# -- compute ---------------------------------------------------------------


def _lookup(inst: Instance, name: str, kinds: tuple):
    if Operator in kinds and name in inst.operators:
        return inst.operators[name]
    value = inst.elements.get(name)
    if value is not None and isinstance(value, kinds):
        return value
    wanted = "/".join(k.__name__ for k in kinds)
    raise UsageError(f"unknown {wanted} id {name!r}")


def _operator_doc(inst: Instance, T: Operator) -> dict:
    return {"domain": inst.module_id(T.domain), "codomain": inst.module_id(T.codomain), "blocks": dump_operator_blocks(T)}


def _as_text(value) -> str:
    if isinstance(value, FElem):
        return " ".join(dump_felem(value))
    if isinstance(value, Idem):
        return " ".join(str(b) for b in dump_idem(value))
    if isinstance(value, Operator):
        lines = []
        for a, block in enumerate(value.blocks):
            rows = "; ".join(" ".join(dump_rational(v) for v in row) for row in block)
            lines.append(f"atom {a}: [{rows}]")
        return "\n".join(lines)
    if isinstance(value, ModuleElem):
        return "\n".join(" ".join(dump_rational(v) for v in row) for row in value.coords)
    return str(value)


def _as_json(inst: Instance, value):
    if isinstance(value, FElem):
        return dump_felem(value)
    if isinstance(value, Idem):
        return dump_idem(value)
    if isinstance(value, Operator):
        return _operator_doc(inst, value)
    if isinstance(value, ModuleElem):
        return dump_module_elem(value)
    return value


def compute(inst: Instance, what: str, ids: Sequence[str], N: int = 0, upper: bool = False):
    arity = {"sup": 2, "inf": 2, "cmp-idem": 2}.get(what, 1)
    if len(ids) != arity:
        raise UsageError(f"compute {what} takes {arity} object id(s), got {len(ids)}")
    if what in ("sup", "inf", "pos", "neg", "abs"):
        ops = [_lookup(inst, i, (Operator,)) for i in ids]
        if what in ("sup", "inf"):
            if ops[0].domain != ops[1].domain or ops[0].codomain != ops[1].codomain:
                raise UsageError("operators must share domain and codomain")
            return (rk_sup if what == "sup" else rk_inf)(*ops)
        return {"pos": rk_pos, "neg": rk_neg, "abs": rk_abs}[what](ops[0])
    if what == "extend":
        if ids[0] not in inst.cone_map_specs:
            raise UsageError(f"unknown cone map id {ids[0]!r}")
        return extend_cone_map(inst.cone_map(ids[0]))
    if what == "freudenthal":
        if N < 0:
            raise UsageError("--N must be >= 0")
        b = _lookup(inst, ids[0], (FElem,))
        return fa.freudenthal_upper(b, N) if upper else fa.freudenthal_lower(b, N)
    if what == "support":
        v = _lookup(inst, ids[0], (FElem, Idem, ModuleElem))
        if isinstance(v, ModuleElem):
            return support_of_element(v)
        return fa.support(v.as_felem() if isinstance(v, Idem) else v)
    if what == "cmp-idem":
        a, b = (_lookup(inst, i, (FElem,)) for i in ids)
        return fa.cmp_idem(a, b)
    raise UsageError(f"unknown computation {what!r}")


def cmd_compute(args) -> int:
    inst = _load(args.instance)
    try:
        value = compute(inst, args.what, args.ids, N=args.N, upper=args.upper)
    except ExtensionError as exc:
        doc = {"error": type(exc).__name__, "message": str(exc), "witness": dump_value(exc.witness)}
        print(json.dumps(doc, indent=2) if args.format == "json" else f"{doc['error']}: {doc['message']}")
        return EXIT_FAIL
    if isinstance(value, Operator) and (value.domain not in inst.modules.values()
                                        or value.codomain not in inst.modules.values()):
        raise UsageError("result lives outside the instance's modules")
    print(json.dumps(_as_json(inst, value), indent=2) if args.format == "json" else _as_text(value))
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def _shape_flags(p: argparse.ArgumentParser, defaults: dict):
    p.add_argument("--atoms", type=int, default=defaults.get("atoms"), help="number of atoms (default: %(default)s)")
    p.add_argument("--dim-x", type=int, default=defaults.get("dim_x"), help="domain dimension m (default: %(default)s)")
    p.add_argument("--dim-y", type=int, default=defaults.get("dim_y"), help="codomain dimension k (default: %(default)s)")
    p.add_argument("--denom-cap", type=int, default=defaults.get("denom_cap"),
                   help="largest denominator of random rationals (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rklat",
        description="Exact operator-lattice computations over finite f-algebras.",
        epilog=f"Exit codes: 0 passed, 1 property failure, 2 usage or input error. {SEED_ENV} overrides --seed.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a random instance file")
    _shape_flags(g, {"atoms": 2, "dim_x": 2, "dim_y": 2, "denom_cap": 16})
    g.add_argument("--seed", type=int, default=0, help="random seed (default: %(default)s)")
    g.add_argument("--out", default="-", help="output path, '-' for stdout (default: %(default)s)")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="run a property suite")
    c.add_argument("instance", nargs="?", help="instance file ('-' for stdin); omit for random instances")
    c.add_argument("--suite", required=True, choices=SUITES, metavar="SUITE",
                   help="one of: " + ", ".join(SUITES))
    c.add_argument("--trials", type=int, default=None, help="trial budget (default: per suite)")
    c.add_argument("--seed", type=int, default=0, help="campaign seed (default: %(default)s)")
    c.add_argument("--subdiv", type=int, default=None, help="grid denominator (default: per suite)")
    c.add_argument("--cone-map", default=None,
                   help="cone map for the extension suite: swap, or an id from the instance")
    _shape_flags(c, {})
    c.add_argument("--format", choices=("text", "json"), default="text", help="report format (default: %(default)s)")
    c.set_defaults(func=cmd_check)

    m = sub.add_parser("compute", help="evaluate one operation on instance objects")
    m.add_argument("instance", help="instance file ('-' for stdin)")
    m.add_argument("what", choices=COMPUTE_WHAT, metavar="WHAT", help="one of: " + ", ".join(COMPUTE_WHAT))
    m.add_argument("ids", nargs="+", help="object ids from the instance")
    m.add_argument("--N", type=int, default=0, help="dyadic level for freudenthal (default: %(default)s)")
    m.add_argument("--upper", action="store_true", help="freudenthal: dyadic ceiling instead of floor")
    m.add_argument("--format", choices=("text", "json"), default="json", help="output format (default: %(default)s)")
    m.set_defaults(func=cmd_compute)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if getattr(args, "trials", None) is not None and args.trials < 0:
            raise UsageError("--trials must be >= 0")
        for flag in ("subdiv", "atoms", "dim_x", "dim_y", "denom_cap"):
            value = getattr(args, flag, None)
            if value is not None and value < 1:
                raise UsageError(f"--{flag.replace('_', '-')} must be >= 1")
        return args.func(args)
    except ParseError as exc:
        print(f"rklat: parse error at {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        print(f"rklat: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
