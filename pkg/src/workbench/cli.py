"""Command-line entry point: `workbench <command> ...`."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .affine_weyl import AffineWeylGroup
from .cache import CacheFile
from .hecke import HeckeAlgebra
from .rings import GenericQ, PrimeField
from .root_datum import PRESETS, build_datum, dominant_cocharacters, height, is_dominant
from .satake import Satake
from .harness import DEFAULT_PRIMES, SUITES, run_suite

CONVENTIONS = """\
conventions:
  T_s^2 = q + (q-1) T_s (so T_s^2 = -T_s at q = 0), T_w T_w' = T_ww' when lengths add.
  Base alcove in the anti-dominant chamber; s0 = t[-theta^vee] s_theta.
  Elements: e, s0 s1 ..., pi^k, t[a,b,...]; juxtaposition is the product.
"""


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip().strip("[]()")
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def _primes(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _group(name: str) -> AffineWeylGroup:
    return AffineWeylGroup(build_datum(name))


def cmd_datum(args) -> int:
    if args.action == "list":
        for name in PRESETS:
            print(name)
        return 0
    if not args.group:
        print("datum describe needs --group", file=sys.stderr)
        return 2
    d = build_datum(args.group)
    G = AffineWeylGroup(d)
    if args.json:
        print(json.dumps(d.to_json(), sort_keys=True))
        return 0
    print(f"{d.name}: rank {d.rank}, semisimple rank {d.semisimple_rank}")
    print(f"  simple roots    {[list(a) for a in d.simple_roots]}")
    print(f"  simple coroots  {[list(a) for a in d.simple_coroots]}")
    print(f"  positive roots  {len(d.positive_roots)}, |W| = {len(G.weyl)}")
    print(f"  highest root    {list(d.highest_root)}")
    print(f"  2rho            {list(d.two_rho)}")
    if G.omega_order is not None:
        print(f"  Omega           cyclic of order {G.omega_order}")
    elif G.omega_free_rank:
        print(f"  Omega           free of rank {G.omega_free_rank}, torsion {list(G.omega_torsion)}")
    else:
        print(f"  Omega           torsion {list(G.omega_torsion)}")
    return 0


def cmd_adm(args) -> int:
    G = _group(args.group)
    mu = _ints(args.mu)
    if args.no_cache:
        adm = G.admissible_set(mu)
    else:
        cache = CacheFile(G)
        adm = cache.admissible_set(mu)
        cache.save()
    if args.report:
        for w, length in G.a_mu_report(mu):
            print(f"{length}\t{G.format(w)}")
    else:
        print(len(adm))
    return 0


def cmd_mul(args) -> int:
    G = _group(args.group)
    if args.p is None:
        ring = GenericQ()
    else:
        ring = PrimeField(args.p, args.q, allow_p2=args.allow_p2)
    H = HeckeAlgebra(G, ring)
    print(H.format(H.mul(H.parse(args.lhs), H.parse(args.rhs))))
    return 0


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    primes = _primes(args.primes)
    reports = []
    for name in names:
        opts = {"use_cache": not args.no_cache, "allow_p2": args.allow_p2}
        if name in ("central", "bernstein", "monoidal"):
            rep = run_suite(name, args.group, args.height, primes, args.coord_bound, **opts)
        else:
            rep = run_suite(name, args.group, args.height, primes, **opts)
        reports.append(rep)
        if not args.json:
            print(rep.summary(), flush=True)
    if args.json:
        payload = [r.to_json(timing=not args.no_timing) for r in reports]
        print(json.dumps(payload, sort_keys=True, indent=1))
    return 0 if all(r.passed for r in reports) else 1


def _adm_sizes(args) -> tuple[list[str], list[list]]:
    G = _group(args.group)
    cache = None if args.no_cache else CacheFile(G)
    rows = []
    for mu in dominant_cocharacters(G.datum, args.height, args.coord_bound):
        adm = cache.admissible_set(mu) if cache else G.admissible_set(mu)
        rows.append([",".join(map(str, mu)), height(G.datum, mu), len(adm)])
    if cache:
        cache.save()
    return ["mu", "height", "adm_size"], rows


def _strata(args) -> tuple[list[str], list[list]]:
    G = _group(args.group)
    mu = _ints(args.mu)
    return ["element", "length"], [[G.format(w), n] for w, n in G.a_mu_report(mu)]


def _matrix(args) -> tuple[list[str], list[list]]:
    G = _group(args.group)
    S = Satake(HeckeAlgebra(G, PrimeField(args.p)))
    keys, rows = S.basis_change_matrix(dominant_cocharacters(G.datum, args.height, args.coord_bound))
    labels = [",".join(map(str, k)) for k in keys]
    return ["mu"] + labels, [[lab] + row for lab, row in zip(labels, rows)]


TABLES = {"adm-sizes": _adm_sizes, "strata": _strata, "matrix": _matrix}


def render(header: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([dict(zip(header, row)) for row in rows], indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_export(args) -> int:
    if args.table == "strata" and args.mu is None:
        print("export --table strata needs --mu", file=sys.stderr)
        return 2
    text = render(*TABLES[args.table](args), args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="workbench",
        description="Extended affine Weyl groups, mod p Iwahori-Hecke algebras and their centres.",
        epilog=CONVENTIONS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("datum", help="list or describe preset root data")
    p.add_argument("action", choices=["list", "describe"])
    p.add_argument("--group")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_datum)

    p = sub.add_parser("adm", help="size or listing of an admissible set")
    p.add_argument("--group", required=True)
    p.add_argument("--mu", required=True, help="comma separated, e.g. 1,0")
    p.add_argument("--report", action="store_true", help="list elements with their lengths")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_adm)

    p = sub.add_parser("mul", help="multiply two Hecke algebra elements")
    p.add_argument("--group", required=True)
    p.add_argument("--p", type=int, help="prime; omit for generic Z[q]")
    p.add_argument("--q", type=int, default=0, help="image of q in F_p (default 0)")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--allow-p2", action="store_true")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=[*SUITES, "all"])
    p.add_argument("--group", required=True)
    p.add_argument("--height", type=int, default=6, help="bound on <2rho, mu>")
    p.add_argument("--coord-bound", type=int, help="coordinate box for groups with a centre")
    p.add_argument("--primes", default=",".join(map(str, DEFAULT_PRIMES)))
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--allow-p2", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-timing", action="store_true", help="omit durations from JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write a table as JSON or CSV")
    p.add_argument("--table", choices=list(TABLES), required=True)
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.add_argument("--group", required=True)
    p.add_argument("--height", type=int, default=6)
    p.add_argument("--coord-bound", type=int)
    p.add_argument("--mu")
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
