"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 for
parse errors, unknown groups and exceeded caps.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import LEMMA_CHECKS, abelianization_order, psi_codomain, theorem_verdict, thomas_membership
from .catalog import UnavailableGroup, catalog_listing, parse_group_spec
from .characters import character_table, count_degree_n_characters, fusion_stable_characters
from .errors import CapExceeded, CosetEnumerationError, FusionViolation, NotAPGroup, VerdictMismatch
from .fusion import goldschmidt_family, principal_radical_family, verify_element_fusion_family
from .orbit import COLLECTIONS, orbit_category, verify_theorem_char
from .structure import prime_divisors, sylow_subgroup

SCHEMA = "charfusion.report/1"

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(ValueError):
    pass


def _load(spec_text: str):
    spec = parse_group_spec(spec_text)
    return spec, spec.build()


def _primes(G, prime: int | None) -> list[int]:
    primes = prime_divisors(G.order)
    if prime is None:
        return primes
    if prime not in primes:
        raise UsageError(f"{prime} does not divide |G| = {G.order}")
    return [prime]


def _need_prime(args, G) -> int:
    if args.prime is None:
        raise UsageError("--prime is required")
    return _primes(G, args.prime)[0]


# -- subcommands ----------------------------------------------------------------


def cmd_analyze(args) -> tuple[dict, bool]:
    spec, G = _load(args.group)
    n = args.degree
    verdict = theorem_verdict(G, spec.label)
    primes = []
    for p in _primes(G, args.prime):
        pv = verdict.per_prime[p]
        S = sylow_subgroup(G, p)
        stable = len(fusion_stable_characters(G, p, n))
        total = count_degree_n_characters(character_table(S), n)
        primes.append({
            "p": p,
            "sylow_order": pv.sylow_order,
            "principal_p_radical_classes": [
                {"generators": r["generators"], "normalizer_index": r["normalizer_index"], "rank_nq": r["rank_nq"]}
                for r in pv.classes
            ],
            "char_counts": {str(n): {"stable": stable, "total": total}},
            "alpha_verdict": {"surjective": pv.alpha_surjective, "bijective": pv.alpha_bijective},
        })
    psi = psi_codomain(G, n)
    # built-in self-test: degree-one characters must count Hom(G, U(1))
    ab = psi_codomain(G, 1).product_size if n != 1 else psi.product_size
    expect = abelianization_order(G)
    report = {
        "group": spec.label,
        "order": G.order,
        "primes": primes,
        "theorem_verdict": verdict.to_json(),
        "psi": {"n": n, "product_size": psi.product_size,
                "counts": {str(p): c for p, c in sorted(psi.counts.items())}},
        "self_test": {"n1_product_size": ab, "abelianization_order": expect, "ok": ab == expect},
    }
    return report, ab == expect and verdict.consistent()


def cmd_chartable(args) -> tuple[dict, bool]:
    spec, G = _load(args.group)
    T = character_table(G)
    if args.format == "json":
        return {"group": spec.label, "character_table": T.to_json()}, True
    cells = [[str(r) for r in T.classes.representatives], [str(s) for s in T.classes.sizes]]
    cells += [[str(v) for v in row] for row in T.irreducibles]
    width = max(len(c) for row in cells for c in row)
    rows = ["  ".join(c.rjust(width) for c in row) for row in cells]
    return {"group": spec.label, "order": G.order, "table": rows}, True


def cmd_fusion(args) -> tuple[dict, bool]:
    spec, G = _load(args.group)
    p = _need_prime(args, G)
    builders = {"principal": principal_radical_family, "goldschmidt": goldschmidt_family}
    names = list(builders) if args.family == "both" else [args.family]
    out, ok = [], True
    for name in names:
        fam = builders[name](G, p)
        rep = verify_element_fusion_family(G, p, fam, mode=args.mode)
        replay = rep.replay_all()
        ok = ok and rep.ok and replay
        out.append({**rep.to_json(), "replayed": replay})
    return {"group": spec.label, "order": G.order, "p": p, "families": out}, ok


def cmd_limit(args) -> tuple[dict, bool]:
    spec, G = _load(args.group)
    p = _need_prime(args, G)
    cat = orbit_category(G, p, args.collection)
    rep = verify_theorem_char(G, p, args.degree, category=cat)
    return {"group": spec.label, "collection": args.collection, "category": cat.to_json(),
            "report": rep.to_json()}, rep.ok


def cmd_catalog(args) -> tuple[dict, bool]:
    return {"catalog": catalog_listing()}, True


def cmd_check(args) -> tuple[dict, bool]:
    spec, G = _load(args.group)
    if args.lemma == "thomas":
        hits = thomas_membership(G)
        return {"group": spec.label, "check": "thomas", "matches": [m.to_json() for m in hits]}, True
    fn, takes_prime = LEMMA_CHECKS[args.lemma]
    if takes_prime:
        reports = [fn(G, p) for p in _primes(G, args.prime)]
    else:
        reports = [fn(G)]
    ok = all(r.status != "fail" for r in reports)
    return {"group": spec.label, "check": args.lemma, "reports": [r.to_json() for r in reports]}, ok


# -- output ---------------------------------------------------------------------


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v)}")
    else:
        lines.append(pad + json.dumps(obj))
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    return "\n".join(_text(report))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")

    parser = argparse.ArgumentParser(prog="charfusion", description="Fusion-stable characters of finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def group_cmd(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("group", help="perm:<cycles>;... | catalog:<Name>(<params>) | pres: gens:<k>; rel: <words>")
        sp.add_argument("--prime", type=int)
        sp.set_defaults(func=fn)
        return sp

    sp = group_cmd("analyze", cmd_analyze, "rank-criterion verdict and psi codomain")
    sp.add_argument("--degree", type=int, default=1)
    group_cmd("chartable", cmd_chartable, "exact character table")
    sp = group_cmd("fusion", cmd_fusion, "conjugation families and element fusion")
    sp.add_argument("--family", choices=("principal", "goldschmidt", "both"), default="both")
    sp.add_argument("--mode", choices=("elements", "subgroups"), default="elements")
    sp = group_cmd("limit", cmd_limit, "limit over the orbit category against fusion-stable characters")
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--collection", choices=COLLECTIONS, default="principal_p_radical")

    sp = sub.add_parser("catalog", parents=[common], help="catalog listing")
    sp.add_argument("action", choices=("list",))
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("check", parents=[common], help="lemma checks")
    sp.add_argument("lemma", choices=sorted(LEMMA_CHECKS) + ["thomas"])
    sp.add_argument("group")
    sp.add_argument("--prime", type=int)
    sp.set_defaults(func=cmd_check)
    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    if getattr(args, "degree", 1) < 1:
        print("error: --degree must be positive", file=sys.stderr)
        return EXIT_ERROR
    try:
        report, ok = args.func(args)
    except (VerdictMismatch, FusionViolation) as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (CapExceeded, CosetEnumerationError) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (UsageError, ValueError, KeyError, UnavailableGroup, NotAPGroup) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = {"schema": SCHEMA, "command": args.command, "ok": ok, **report}
    print(render(report, args.format))
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(cli_main())
