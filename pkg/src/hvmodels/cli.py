"""Command-line front end.

Subcommands:
  algebra check|show FILE     validate / print a lattice given by a file
  eval SCRIPT                 run let-bindings and formula evaluations
  lift MOR NAMES              lift a name along a locale morphism
  check SUITE                 run a law suite and report violations

Exit code 0 means zero violations; structured validation errors exit 1.
Reports are deterministic: identical inputs give byte-identical JSON.
"""

import argparse
import json
import sys
from pathlib import Path

from . import checks
from . import transfer as tr
from .errors import CrossAlgebra, HvError, ParseError
from .formula import parse_formula
from .lattice import is_boolean, load_algebra, make_boolean, make_chain
from .names import NameStore, parse_name_literal
from .valuation import EvalContext


def _builtin_algebra(name):
    return {
        "chain2": lambda: make_chain(2),
        "two": lambda: make_chain(2),
        "chain3": lambda: make_chain(3),
        "four": lambda: make_boolean(2),
        "boolean4": lambda: make_boolean(2),
    }.get(name, lambda: None)()


def _load_algebra_file(path):
    p = Path(path)
    return load_algebra(p.read_text(), name=p.stem)


class Session:
    """Resolved context for one command: algebras by identifier plus the
    cap/seed configuration every sweep must respect."""

    def __init__(self, args):
        self.algebras = {}
        for spec in args.algebra or []:
            if "=" in spec:
                name, _, path = spec.partition("=")
                alg = _load_algebra_file(path)
                alg.name = name
                self.algebras[name] = alg
            else:
                alg = _builtin_algebra(spec)
                if alg is None:
                    raise ParseError(f"unknown algebra {spec!r}; use NAME=PATH")
                alg.name = spec
                self.algebras[spec] = alg
        self.selected = [s.partition("=")[0] for s in (args.algebra or [])]
        self.rank = getattr(args, "rank", 2)
        self.max_domain = getattr(args, "max_domain", 2)
        self.budget = getattr(args, "budget", None)
        self.seed = getattr(args, "seed", checks.DEFAULT_SEED)

    def resolve(self, name, near=None):
        if name in self.algebras:
            return self.algebras[name]
        alg = _builtin_algebra(name)
        if alg is not None:
            alg.name = name
            self.algebras[name] = alg
            return alg
        if near is not None:
            candidate = Path(near).parent / f"{name}.alg"
            if candidate.exists():
                self.algebras[name] = _load_algebra_file(candidate)
                return self.algebras[name]
        raise ParseError(f"cannot resolve algebra {name!r}")

    def config(self, command):
        return {
            "command": command,
            "rank": self.rank,
            "max_domain": self.max_domain,
            "budget": self.budget,
            "seed": self.seed,
            "algebras": {n: a.content_hash() for n, a in sorted(self.algebras.items())},
        }


def _emit(args, payload, text):
    print(text)
    if getattr(args, "json", None):
        Path(args.json).write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n"
        )


def _table_text(algebra, table, title):
    width = max(len(l) for l in algebra.labels) + 1
    head = " " * width + " ".join(l.rjust(width) for l in algebra.labels)
    lines = [f"{title}:", head]
    for i, row in enumerate(table):
        lines.append(
            algebra.labels[i].rjust(width)
            + " ".join(algebra.labels[v].rjust(width) for v in row)
        )
    return "\n".join(lines)


def cmd_algebra(args, session):
    algebra = _load_algebra_file(args.file)
    payload = {
        "config": session.config(f"algebra {args.mode}"),
        "file": Path(args.file).name,
        "name": algebra.name,
        "elements": list(algebra.labels),
        "bottom": algebra.labels[algebra.bottom],
        "top": algebra.labels[algebra.top],
        "boolean": is_boolean(algebra),
        "hash": algebra.content_hash(),
        "valid": True,
    }
    if args.mode == "check":
        text = (f"{algebra.name}: valid frame with {algebra.n} elements\n"
                f"bottom: {payload['bottom']}  top: {payload['top']}\n"
                f"boolean: {'yes' if payload['boolean'] else 'no'}")
        _emit(args, payload, text)
        return 0
    parts = [f"{algebra.name}: {algebra.n} elements: " + " ".join(algebra.labels)]
    order = [
        f"{algebra.labels[a]} <= {algebra.labels[b]}"
        for a in range(algebra.n)
        for b in range(algebra.n)
        if a != b and algebra.leq[a, b]
    ]
    parts.append("order: " + ("; ".join(order) if order else "(discrete)"))
    parts.append(_table_text(algebra, algebra.meet_table, "meet"))
    parts.append(_table_text(algebra, algebra.join_table, "join"))
    parts.append(_table_text(algebra, algebra.impl_table, "implication"))
    payload["tables"] = {
        "meet": algebra.meet_table.tolist(),
        "join": algebra.join_table.tolist(),
        "implication": algebra.impl_table.tolist(),
    }
    _emit(args, payload, "\n".join(parts))
    return 0


def _run_script(session, path):
    """Shared reader for eval scripts and .names files.

    Lines: `algebra IDENT`, `let NAME = <name literal>`,
    `fragment NAME...`, `eval "<formula>"`, `lift NAME`.
    """
    store = None
    ctx = None
    bindings = {}
    fragment = []
    evals = []
    lift_target = None
    algebra_name = None
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "algebra":
            algebra = session.resolve(rest, near=path)
            algebra_name = rest
            store = NameStore(algebra)
            ctx = EvalContext(store)
            continue
        if store is None:
            raise ParseError("script must start with 'algebra IDENT'", lineno)
        if head == "let":
            name, _, literal = rest.partition("=")
            name = name.strip()
            if not name.isidentifier():
                raise ParseError(f"bad binding name {name!r}", lineno)
            bindings[name] = parse_name_literal(store, literal.strip(), bindings)
            continue
        if head == "fragment":
            for ident in rest.split():
                if ident not in bindings:
                    raise ParseError(f"unknown name {ident!r}", lineno)
                fragment.append(bindings[ident])
            ctx = EvalContext(store, fragment=tuple(fragment))
            continue
        if head == "eval":
            text = rest.strip()
            if text.startswith('"') and text.endswith('"') and len(text) >= 2:
                text = text[1:-1]
            phi = parse_formula(text, constants=bindings)
            evals.append((text, phi, lineno))
            continue
        if head == "lift":
            if rest not in bindings:
                raise ParseError(f"unknown name {rest!r}", lineno)
            lift_target = rest
            continue
        raise ParseError(f"unrecognized line {line!r}", lineno)
    if store is None:
        raise ParseError("script must declare an algebra")
    return {
        "algebra_name": algebra_name,
        "store": store,
        "ctx": ctx,
        "bindings": bindings,
        "evals": evals,
        "lift_target": lift_target,
    }


def cmd_eval(args, session):
    script = _run_script(session, args.script)
    store, ctx = script["store"], script["ctx"]
    algebra = store.algebra
    results = []
    lines = []
    for text, phi, lineno in script["evals"]:
        value = ctx.eval(phi)
        results.append({"formula": text, "value": algebra.labels[value]})
        lines.append(f"{text}  =  {algebra.labels[value]}")
    payload = {
        "config": session.config("eval"),
        "script": Path(args.script).name,
        "algebra": script["algebra_name"],
        "bindings": {
            n: store.to_literal(v) for n, v in script["bindings"].items()
        },
        "results": results,
    }
    _emit(args, payload, "\n".join(lines) if lines else "(no eval lines)")
    return 0


def cmd_lift(args, session):
    mor_path = Path(args.morphism)
    name, morphism = tr.parse_morphism(
        mor_path.read_text(),
        _MorphismAlgebras(session, mor_path),
    )
    script = _run_script(session, args.names)
    store_a = script["store"]
    if store_a.algebra.content_hash() != morphism.source.content_hash():
        raise CrossAlgebra(
            "the names file algebra differs from the morphism source"
        )
    target = args.name or script["lift_target"]
    if target is None:
        if not script["bindings"]:
            raise ParseError("names file binds nothing to lift")
        target = list(script["bindings"])[-1]
    if target not in script["bindings"]:
        raise ParseError(f"no binding named {target!r}")
    x = script["bindings"][target]
    store_b = NameStore(morphism.target)
    wl = tr.lift(morphism, x, store_a, store_b)
    ctx_b = EvalContext(store_b)
    related = tr.is_generalized_related(morphism, x, wl.image, store_a, store_b, ctx_b)
    witness = [
        [store_a.to_literal(u), store_b.to_literal(v)] for u, v in wl.witness
    ]
    lines = [
        f"morphism {name} : {morphism.source.name} -> {morphism.target.name}",
        f"name {target} = {store_a.to_literal(x)}",
        f"image = {store_b.to_literal(wl.image)}",
        "witness bijection:",
    ]
    lines += [f"  {u} -> {v}" for u, v in witness] or ["  (empty domain)"]
    lines.append(f"generalized related: {'yes' if related else 'no'}")
    payload = {
        "config": session.config("lift"),
        "morphism": name,
        "name": target,
        "source": store_a.to_literal(x),
        "image": store_b.to_literal(wl.image),
        "witness": witness,
        "generalized_related": bool(related),
    }
    _emit(args, payload, "\n".join(lines))
    return 0


class _MorphismAlgebras(dict):
    """Mapping view that resolves algebra identifiers lazily, looking for
    IDENT.alg next to the morphism file when IDENT is not known."""

    def __init__(self, session, near):
        super().__init__()
        self.session = session
        self.near = near

    def __contains__(self, name):
        try:
            self[name]
            return True
        except HvError:
            return False

    def __missing__(self, name):
        alg = self.session.resolve(name, near=self.near)
        self[name] = alg
        return alg


def cmd_check(args, session):
    suite = args.suite
    reports = []
    if suite == "properties":
        table = checks.test_algebras()
        chosen = session.selected or list(table)
        for name in chosen:
            algebra = table.get(name) or session.resolve(name)
            reports.append(
                checks.valuation_property_suite(
                    algebra, rank=session.rank, max_domain=session.max_domain,
                    budget=session.budget,
                )
            )
    elif suite == "counterexample":
        reports.append(checks.counterexample_suite())
        reports.append(checks.injective_suite(rank=session.rank))
    elif suite == "preservation":
        reports.append(
            checks.preservation_suite(rank=session.rank,
                                      max_domain=session.max_domain)
        )
    elif suite == "functoriality":
        reports.append(
            checks.functoriality_suite(rank=session.rank,
                                       max_domain=session.max_domain)
        )
    elif suite == "hset-laws":
        reports.append(checks.hset_law_suite(seed=session.seed, rank=session.rank))
    else:
        raise ParseError(f"unknown suite {suite!r}")
    text = "\n".join(r.render_text() for r in reports)
    payload = {
        "config": session.config(f"check {suite}"),
        "reports": [r.to_json_dict() for r in reports],
        "ok": all(r.ok for r in reports),
    }
    _emit(args, payload, text)
    return 0 if payload["ok"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hvm",
        description="Lattice-valued set models: algebras, names, valuation, "
                    "lifting and H-sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--rank", type=int, default=2,
                       help="name rank ceiling for sweeps (default 2)")
        p.add_argument("--max-domain", type=int, default=2,
                       help="domain-size cap for enumerated names (default 2)")
        p.add_argument("--budget", type=int, default=None,
                       help="hard ceiling on enumeration/search work")
        p.add_argument("--seed", type=int, default=checks.DEFAULT_SEED,
                       help="seed for sampled corpora (default %(default)s)")
        p.add_argument("--algebra", action="append", metavar="NAME[=PATH]",
                       help="select a builtin algebra or register a file")
        p.add_argument("--json", metavar="PATH",
                       help="also write a deterministic JSON report")

    p = sub.add_parser("algebra", help="validate or print an algebra file")
    p.add_argument("mode", choices=("check", "show"))
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_algebra)

    p = sub.add_parser("eval", help="run an evaluation script")
    p.add_argument("script")
    common(p)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("lift", help="lift a name along a locale morphism")
    p.add_argument("morphism", help="morphism file (.mor)")
    p.add_argument("names", help="names script (.names)")
    p.add_argument("--name", help="binding to lift (default: the designated "
                                  "or last one)")
    common(p)
    p.set_defaults(fn=cmd_lift)

    p = sub.add_parser("check", help="run a law suite")
    p.add_argument(
        "suite",
        choices=("counterexample", "properties", "preservation",
                 "functoriality", "hset-laws"),
    )
    common(p)
    p.set_defaults(fn=cmd_check)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        session = Session(args)
        return args.fn(args, session)
    except (HvError, OSError) as ex:
        print(f"error: {type(ex).__name__}: {ex}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
