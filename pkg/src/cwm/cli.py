"""Command-line front end.

Exit codes: 0 success / solutions found, 1 exhaustively nonexistent (or
failed verification), 2 usage error, 3 method inapplicable, 4 node
budget exceeded.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from pathlib import Path

from . import catalog as catalog_mod
from . import constructions
from . import margins as margins_mod
from .exhaust import (
    MethodInapplicable,
    icw_census,
    search,
    side_margin_solutions,
)
from .groupring import (
    WitnessFormatError,
    fold,
    verify,
    witness_format,
    witness_parse,
)
from .numbertheory import (
    mcfarland_multiplier,
    orbits,
    prime_power_multiplier,
)
from .orbittable import build, default_factorization, render

EXIT_OK = 0
EXIT_NONE = 1
EXIT_USAGE = 2
EXIT_INAPPLICABLE = 3
EXIT_BUDGET = 4


def _derive_multiplier(n: int, k: int, given):
    if given is not None:
        print(f"using supplied multiplier {given} (soundness rests on the caller)")
        return given
    t = prime_power_multiplier(n, k)
    if t is None and math.gcd(n, k) == 1:
        t = mcfarland_multiplier(n, k)
    if t is None:
        raise MethodInapplicable(f"no multiplier derivable for n={n}, k={k}")
    return t


def _pick_factorization(n, k, t, args):
    if args.d and args.m:
        return args.d, args.m
    return default_factorization(n, k, t)


def cmd_orbits(args) -> int:
    if args.multiplier is None and args.k is None:
        print("orbits needs --multiplier or --k", file=sys.stderr)
        return EXIT_USAGE
    t = args.multiplier if args.multiplier is not None else _derive_multiplier(
        args.n, args.k, None
    )
    fact = _pick_factorization(args.n, args.k or 0, t, args)
    if fact is None:
        part = orbits(args.n, t)
        print(f"orbits of Z_{args.n} under x -> {t}x (no coprime split):")
        for rep, members in part.orbits:
            print(f"  <{rep}>_{len(members)} = {{{', '.join(map(str, members))}}}")
        return EXIT_OK
    d, m = fact
    table = build(args.n, d, m, t)
    print(f"orbit table for n={args.n} = {d} x {m}, multiplier {t}")
    print(render(table), end="")
    return EXIT_OK


def cmd_margins(args) -> int:
    s = math.isqrt(args.k)
    if s * s != args.k:
        print(f"k = {args.k} is not a perfect square", file=sys.stderr)
        return EXIT_USAGE
    t = _derive_multiplier(args.n, args.k, args.multiplier)
    fact = _pick_factorization(args.n, args.k, t, args)
    if fact is None:
        part = orbits(args.n, t)
        sides = [(args.n, part, args.coeff_bound)]
    else:
        d, m = fact
        table = build(args.n, d, m, t)
        sides = [
            (d, table.row_orbits, args.coeff_bound * m),
            (m, table.col_orbits, args.coeff_bound * d),
        ]
    for modulus, part, bound in sides:
        raw = margins_mod.solve_margin_system(s, args.k, part.sizes, bound)
        print(f"fold onto Z_{modulus}: orbit sizes {part.sizes}, |b_i| <= {bound}")
        print(f"  {len(raw)} solutions of the two moment equations")
        consistent = margins_mod.fold_consistency_filter(raw, part, args.k)
        print(f"  {len(consistent)} remain after full fold consistency")
        for sol in consistent:
            print(f"    b = {sol.values}  scaled = {sol.scaled}")
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        t = args.multiplier
        outcome = search(
            args.n,
            args.k,
            multiplier=t,
            coeff_bound=args.coeff_bound,
            mode=args.mode,
            node_budget=args.node_budget,
            jobs=args.jobs,
        )
    except MethodInapplicable as exc:
        print(f"method inapplicable: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    kind = f"CW({args.n},{args.k})" if args.coeff_bound == 1 else (
        f"ICW_{args.coeff_bound}({args.n},{args.k})"
    )
    print(
        f"{kind}: {outcome.classes} equivalence classes "
        f"({outcome.solutions_found} solutions found, "
        f"{outcome.leaves_tested} candidates tested, {outcome.nodes_visited} nodes)"
    )
    for sol in outcome.solutions:
        print(f"  {sol}")
    if args.out and outcome.solutions:
        Path(args.out).write_text(
            witness_format(outcome.solutions[0], args.k, args.coeff_bound)
        )
        print(f"witness written to {args.out}")
    if not outcome.exhaustive:
        print("node budget exceeded; search is NOT exhaustive", file=sys.stderr)
        return EXIT_BUDGET
    if outcome.classes == 0:
        print("exhaustively none: margin systems and orbit search rule every candidate out")
        return EXIT_NONE
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        elem, k, bound = witness_parse(Path(args.witness).read_text())
    except (OSError, WitnessFormatError) as exc:
        print(f"cannot read witness: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ok = verify(elem, k, bound)
    kind = f"CW({elem.order},{k})" if bound == 1 else f"ICW_{bound}({elem.order},{k})"
    if not ok:
        print(f"{kind}: FAILED verification")
        return EXIT_NONE
    pos, neg = len(elem.positives), len(elem.negatives)
    print(f"{kind}: OK, |P|={pos} |N|={neg}")
    return EXIT_OK


def cmd_fold(args) -> int:
    try:
        elem, k, _ = witness_parse(Path(args.witness).read_text())
    except (OSError, WitnessFormatError) as exc:
        print(f"cannot read witness: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if elem.order % args.m:
        print(f"{args.m} does not divide {elem.order}", file=sys.stderr)
        return EXIT_USAGE
    b = fold(elem, args.m)
    print(f"fold onto Z_{args.m}: {list(b.coeffs)}")
    print(f"sum = {sum(b.coeffs)}, sum of squares = {sum(c*c for c in b.coeffs)} (k = {k})")
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.what == "kronecker":
        a, ka, _ = witness_parse(Path(args.inputs[0]).read_text())
        b, kb, _ = witness_parse(Path(args.inputs[1]).read_text())
        out = constructions.kronecker(a, b)
        k = ka * kb
    elif args.what == "cw14m":
        out = constructions.cw14m_family(args.m)
        k = 16
    elif args.what == "type2":
        b, kb, _ = witness_parse(Path(args.inputs[0]).read_text())
        c, kc, _ = witness_parse(Path(args.inputs[1]).read_text())
        out = constructions.type_ii(b, c)
        k = 4 * kb
    else:  # pragma: no cover - argparse restricts choices
        return EXIT_USAGE
    print(f"constructed CW({out.order},{k}): {out}")
    if args.out:
        Path(args.out).write_text(witness_format(out, k, 1))
        print(f"witness written to {args.out}")
    return EXIT_OK


def _catalog_root(args) -> Path:
    if args.dir:
        return Path(args.dir)
    return Path(os.environ.get("CW_CATALOG_DIR", "cw_catalog"))


def cmd_catalog(args) -> int:
    root = _catalog_root(args)
    if args.action == "seed":
        cat = catalog_mod.seed_known_results(root)
        print(f"seeded {len(cat.records)} records into {root}")
        return EXIT_OK
    cat = catalog_mod.Catalog(root)
    for w in cat.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.action == "status":
        if args.n is None or args.k is None:
            print("catalog status needs --n and --k", file=sys.stderr)
            return EXIT_USAGE
        rec = cat.record(args.n, args.k)
        if rec is None:
            print(f"({args.n},{args.k}): open (no record)")
        else:
            wit = f", witness {rec.witness}" if rec.witness else ""
            print(f"({args.n},{args.k}): {rec.status} [{rec.provenance}]{wit}")
        return EXIT_OK
    if args.action == "table":
        print(cat.render_table(args.nmax, args.kmax), end="")
        return EXIT_OK
    if args.action == "import":
        added = cat.import_dir(args.path)
        cat.save()
        print(f"imported {len(added)} witnesses")
        return EXIT_OK
    if args.action == "close":
        added = cat.close_under_constructions()
        cat.save()
        for rec in added:
            print(f"added ({rec.n},{rec.k}): {rec.provenance}")
        print(f"{len(added)} new records")
        return EXIT_OK
    return EXIT_USAGE  # pragma: no cover


def cmd_census(args) -> int:
    rows = icw_census(mode="all", jobs=args.jobs)
    print("n     k    d  m   t   |M|  classes  solutions")
    for r in rows:
        print(
            f"{r.n:<5} {r.k:<4} {r.d:<2} {r.m:<3} {r.multiplier:<3} {r.multiplier_order:<4} "
            f"{r.classes:<8} {r.solutions_found}"
        )
    return EXIT_OK


def seed_demo() -> int:
    """Walk through the order-63, weight-16 search end to end."""
    n, k, t = 63, 16, 2
    s = math.isqrt(k)
    d, m = default_factorization(n, k, t)
    table = build(n, d, m, t)
    print(f"demo: n = {n} = {d} x {m}, k = {k}, multiplier {t}")
    print()
    print(render(table), end="")
    print()
    for modulus, part, bound in (
        (d, table.row_orbits, m),
        (m, table.col_orbits, d),
    ):
        sols = side_margin_solutions(s, k, part, 1, bound)
        print(f"margins onto Z_{modulus} (orbit sizes {part.sizes}, bound {bound}):")
        for sol in sols:
            print(f"  b = {sol.values}  scaled = {sol.scaled}")
    print()
    outcome = search(n, k)
    print(f"search: {outcome.classes} equivalence classes")
    for sol in outcome.solutions:
        pos = ", ".join(map(str, sol.positives))
        neg = ", ".join(map(str, sol.negatives))
        print(f"  P = {{{pos}}}")
        print(f"  N = {{{neg}}}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cwm", description="circulant weighing matrix toolkit"
    )
    ap.add_argument("--seed-demo", action="store_true", help="run the worked walk-through")
    ap.add_argument("--stats", action="store_true", help="print a timing line at the end")
    sub = ap.add_subparsers(dest="command")

    p = sub.add_parser("orbits", help="render the orbit table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--multiplier", "-t", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--m", type=int, default=None)

    p = sub.add_parser("margins", help="solve the intersection-number systems")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--multiplier", "-t", type=int, default=None)
    p.add_argument("--coeff-bound", type=int, default=1)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--m", type=int, default=None)

    p = sub.add_parser("search", help="exhaustive orbit search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--multiplier", "-t", type=int, default=None)
    p.add_argument("--coeff-bound", type=int, default=1)
    p.add_argument("--mode", choices=("first", "all", "count"), default="all")
    p.add_argument("--jobs", "-j", type=int, default=1)
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--out", type=str, default=None)

    p = sub.add_parser("verify", help="check a witness file")
    p.add_argument("witness")

    p = sub.add_parser("fold", help="intersection numbers of a witness")
    p.add_argument("witness")
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("construct", help="build new matrices from old")
    p.add_argument("what", choices=("kronecker", "cw14m", "type2"))
    p.add_argument("inputs", nargs="*")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--out", type=str, default=None)

    p = sub.add_parser("catalog", help="result catalog")
    p.add_argument("action", choices=("seed", "status", "table", "import", "close"))
    p.add_argument("path", nargs="?")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--dir", type=str, default=None)

    p = sub.add_parser("census", help="contracted searches for the open cases")
    p.add_argument("--jobs", "-j", type=int, default=1)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    t0 = time.time()
    try:
        if args.seed_demo:
            code = seed_demo()
        elif args.command == "orbits":
            code = cmd_orbits(args)
        elif args.command == "margins":
            code = cmd_margins(args)
        elif args.command == "search":
            code = cmd_search(args)
        elif args.command == "verify":
            code = cmd_verify(args)
        elif args.command == "fold":
            code = cmd_fold(args)
        elif args.command == "construct":
            code = cmd_construct(args)
        elif args.command == "catalog":
            code = cmd_catalog(args)
        elif args.command == "census":
            code = cmd_census(args)
        else:
            ap.print_help()
            code = EXIT_USAGE
    except MethodInapplicable as exc:
        print(f"method inapplicable: {exc}", file=sys.stderr)
        code = EXIT_INAPPLICABLE
    except (ValueError, WitnessFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    if args.stats:
        print(f"[stats] elapsed {time.time() - t0:.3f}s")
    return code


if __name__ == "__main__":
    sys.exit(main())
