"""Command-line interface.

Exit codes: 0 success or verified, 1 checked and negative, 2 input error,
3 budget exceeded.  Results go to stdout as JSON (or DOT where offered),
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time

from . import jsonio
from .errors import BudgetExceeded, InputError, InvariantViolation
from .functor import (
    check_representation,
    colimit_quasiorder,
    kappa_map,
    normalize_functor,
    validate_embedding,
    validate_functor,
)
from .lattice import (
    SublatticeEmbedding,
    con_lattice,
    enumerate_01_sublattices,
    principal_congruence,
    princ_poset,
    zeta_map,
)
from .oracle import DEFAULT_BUDGET, OracleBudget
from .poset import is_catb_morphism

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ENV = "PRINC_CONG_BUDGET"


class Negative(Exception):
    """A check ran to completion and came out negative."""

    def __init__(self, reason, payload=None):
        super().__init__(reason)
        self.payload = payload or {}


class OverBudget(Negative):
    pass


def budget_from_env(environ=os.environ) -> OracleBudget:
    """Defaults overridden by ``PRINC_CONG_BUDGET``, either a JSON object or
    ``key=value`` pairs separated by commas."""
    raw = environ.get(BUDGET_ENV, "").strip()
    if not raw:
        return DEFAULT_BUDGET
    if raw.startswith("{"):
        try:
            values = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError("%s is not valid JSON: %s" % (BUDGET_ENV, exc)) from None
    else:
        values = {}
        for item in raw.split(","):
            key, sep, value = item.partition("=")
            if not sep:
                raise InputError("%s entry %r is not key=value" % (BUDGET_ENV, item))
            values[key.strip()] = value.strip()
    fields = {f.name: f.type for f in dataclasses.fields(OracleBudget)}
    kwargs = {}
    for key, value in values.items():
        if key not in fields:
            raise InputError("%s has unknown budget field %r" % (BUDGET_ENV, key))
        try:
            kwargs[key] = float(value) if key == "time_limit" else int(value)
        except ValueError:
            raise InputError("%s field %s=%r is not a number" % (BUDGET_ENV, key, value)) from None
    return dataclasses.replace(DEFAULT_BUDGET, **kwargs)


def _budget(args) -> OracleBudget:
    budget = budget_from_env()
    changes = {}
    if getattr(args, "max_size", None) is not None:
        changes["max_lattice_size"] = args.max_size
    if getattr(args, "time_limit", None) is not None:
        changes["time_limit"] = args.time_limit
    return dataclasses.replace(budget, **changes)


def _lattice(args):
    if not args.lattice:
        raise InputError("--lattice is required")
    return jsonio.lattice_from_json(jsonio.load(args.lattice))


def _functor(args):
    if not args.functor:
        raise InputError("--functor is required")
    return jsonio.functor_from_json(jsonio.load(args.functor))


def _no_dot(args):
    if args.format == "dot":
        raise InputError("--format dot is not available for %s" % args.verb)


def cmd_princ(args):
    L = _lattice(args)
    P = princ_poset(L)
    if args.format == "dot":
        names = {P.label(k): str(c) for k, c in enumerate(P.congruences)}
        return jsonio.poset_to_dot(P.poset, "Princ", names)
    return jsonio.princ_to_json(P)


def cmd_con(args):
    L = _lattice(args)
    congs = con_lattice(L)
    if args.format == "dot":
        from .poset import Poset

        labels = [c.encoding() for c in congs]
        up = [sum(1 << j for j, d in enumerate(congs) if c <= d) for c in congs]
        return jsonio.poset_to_dot(Poset(labels, up, check=False), "Con")
    return {
        "lattice": jsonio.lattice_to_json(L),
        "count": len(congs),
        "congruences": [jsonio.congruence_to_json(c) for c in congs],
    }


def cmd_cg(args):
    _no_dot(args)
    L = _lattice(args)
    if not args.pair:
        raise InputError("--pair A B is required")
    a, b = args.pair
    c = principal_congruence(L, a, b)
    return {"pair": [a, b], "congruence": jsonio.congruence_to_json(c),
            "is_delta": c.num_blocks == len(L), "is_nabla": c.num_blocks == 1}


def cmd_sublattices(args):
    _no_dot(args)
    L = _lattice(args)
    subs = enumerate_01_sublattices(L, args.max_count)
    return {"count": len(subs), "truncated": subs.truncated,
            "sublattices": [e.labels() for e in subs]}


def cmd_zeta(args):
    _no_dot(args)
    L = _lattice(args)
    if not args.subset:
        raise InputError("--subset is required")
    emb = SublatticeEmbedding.from_labels(L, args.subset)
    z = zeta_map(emb)
    return {"subset": emb.labels(), "map": jsonio.map_to_json(z),
            "catb": is_catb_morphism(z).to_json()}


def cmd_validate_functor(args):
    _no_dot(args)
    report = validate_functor(_functor(args))
    if not report.ok:
        raise Negative("functor violates the required laws", report.to_json())
    return report.to_json()


def cmd_normalize(args):
    _no_dot(args)
    N = normalize_functor(_functor(args))
    return {
        "trivial": N.trivial,
        "functor": jsonio.functor_to_json(N.functor),
        "alpha": {i: jsonio.map_to_json(a) for i, a in N.alpha.items()},
    }


def cmd_kappa(args):
    _no_dot(args)
    N = normalize_functor(_functor(args))
    if N.trivial:
        return {"trivial": True, "results": {}}
    G = N.functor
    indices = [args.index] if args.index else list(G.base.elements)
    results = {}
    for j in indices:
        data = colimit_quasiorder(G, j)
        try:
            kappa = kappa_map(G, j, data)
        except InvariantViolation as exc:
            raise Negative(str(exc), {"index": j, "colimit": jsonio.colimit_to_json(data)}) from None
        results[j] = {"colimit": jsonio.colimit_to_json(data), "kappa": jsonio.map_to_json(kappa),
                      "order_isomorphism": True}
    return {"trivial": False, "results": results}


def cmd_check_rep(args):
    _no_dot(args)
    F = _functor(args)
    if not args.embedding:
        raise InputError("--embedding is required")
    E = jsonio.embedding_from_json(jsonio.load(args.embedding), F.base)
    if args.lattice:
        L = _lattice(args)
        if L != E.lattice:
            raise InputError("--lattice differs from the lattice of the embedding functor")
    report = validate_functor(F)
    if not report.ok:
        raise InputError("invalid functor: %s" % report.violations[0].message)
    emb_report = validate_embedding(E, strict=args.strict)
    if not emb_report.ok:
        raise InputError("invalid embedding functor: %s" % emb_report.violations[0].message)
    xi = check_representation(F, E.lattice, E)
    if xi is None:
        raise Negative("no isomorphism family")
    return {"representable": True, "natural_iso": jsonio.natural_iso_to_json(xi)}


def cmd_search_rep(args):
    from .search import search_representation

    _no_dot(args)
    F = _functor(args)
    budget = _budget(args)
    report = search_representation(F, budget, strict=args.strict)
    print("search: %d lattices, %d candidates, %.3fs"
          % (report.lattices_examined, report.candidates_examined, report.elapsed), file=sys.stderr)
    out = {
        "found": report.found,
        "lattices_examined": report.lattices_examined,
        "candidates_examined": report.candidates_examined,
        "largest_size": report.largest_size,
        "budget": dataclasses.asdict(budget),
        "reason": report.reason,
        "notes": report.notes,
    }
    if args.timings:
        out["elapsed_seconds"] = report.elapsed
    if report.found:
        out["lattice"] = jsonio.lattice_to_json(report.lattice)
        out["embedding"] = jsonio.embedding_to_json(report.embedding)
        out["natural_iso"] = jsonio.natural_iso_to_json(report.natural_iso)
        return out
    if report.budget_exceeded:
        raise OverBudget(report.reason, out)
    raise Negative(report.reason, out)


def cmd_oracle_check(args):
    from .verify import run_oracle_suite

    _no_dot(args)
    if args.size is None:
        raise InputError("--size is required")
    budget = _budget(args)
    seed = args.seed if args.seed is not None else 0
    t0 = time.monotonic()
    result = run_oracle_suite(args.size, budget, seed=seed, samples=args.samples)
    print("oracle-check: %.3fs" % (time.monotonic() - t0), file=sys.stderr)
    if not result["ok"]:
        raise Negative("oracle disagreement", result)
    return result


COMMANDS = {
    "princ": cmd_princ,
    "con": cmd_con,
    "cg": cmd_cg,
    "sublattices": cmd_sublattices,
    "zeta": cmd_zeta,
    "validate-functor": cmd_validate_functor,
    "normalize": cmd_normalize,
    "kappa": cmd_kappa,
    "check-rep": cmd_check_rep,
    "search-rep": cmd_search_rep,
    "oracle-check": cmd_oracle_check,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--lattice", metavar="PATH")
    common.add_argument("--functor", metavar="PATH")
    common.add_argument("--embedding", metavar="PATH")
    common.add_argument("--pair", nargs=2, metavar=("A", "B"))
    common.add_argument("--subset", nargs="+", metavar="X")
    common.add_argument("--index", metavar="J")
    common.add_argument("--format", choices=("json", "dot"), default="json")
    common.add_argument("--seed", type=int)
    common.add_argument("--size", type=int)
    common.add_argument("--samples", type=int, default=20)
    common.add_argument("--max-size", type=int)
    common.add_argument("--max-count", type=int)
    common.add_argument("--time-limit", type=float)
    common.add_argument("--strict", action="store_true",
                        help="require the embedding functor to reflect the order too")
    common.add_argument("--timings", action="store_true",
                        help="include wall-clock timings in the JSON output")
    parser = _Parser(prog="princcong", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in COMMANDS:
        sub.add_parser(verb, parents=[common])
    return parser


def _emit(out, args):
    if isinstance(out, str):
        sys.stdout.write(out)
        return
    if args is not None and args.seed is not None:
        out = {"seed": args.seed, **out}
    sys.stdout.write(jsonio.dumps(out))


def main(argv=None) -> int:
    args = None
    try:
        args = build_parser().parse_args(argv)
        _emit(COMMANDS[args.verb](args), args)
        return EXIT_OK
    except OverBudget as exc:
        _emit({"ok": False, "reason": str(exc), **exc.payload}, args)
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    except Negative as exc:
        _emit({"ok": False, "reason": str(exc), **exc.payload}, args)
        print("negative: %s" % exc, file=sys.stderr)
        return EXIT_NEGATIVE
    except InputError as exc:
        witness = getattr(exc, "witness", None)
        msg = "input error: %s" % exc
        if witness is not None:
            msg += " (witness: %s)" % json.dumps(list(witness))
        print(msg, file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
