"""Command-line surface.

Exit codes: 0 success, 1 user/input error, 2 internal consistency failure
(or a failed verification report).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .errors import OrbitPairsError
from .oracle import verify
from .orbits import n_lambda, orbit_census, per_ideal_total
from .posets import OrderIdeal, Partition, lattice, partitions_of
from .qpoly import QPolynomial, format_poly, latex_poly
from .quiver import c_tau, enumerate_types, genfunc_check, n_tau, r_n1
from .refined import refined_matrix

REFINED_LIMIT = 8


class ResultStore:
    """File-backed cache of computed orbit-pair counts, keyed by the
    canonical (capped) partition string.  A corrupt cache file is ignored
    with a warning, never trusted."""

    def __init__(self, path=None):
        self.path = path
        self.entries: dict[str, list] = {}
        if path is None:
            return
        try:
            with open(path) as fh:
                data = json.load(fh)
            if not isinstance(data, dict):
                raise ValueError("cache root must be an object")
            for key, coeffs in data.items():
                Partition.parse(key)
                QPolynomial.from_json({"coeffs": coeffs})
            self.entries = data
        except FileNotFoundError:
            pass
        except (ValueError, OSError) as exc:
            print(f"warning: ignoring corrupt cache {path}: {exc}", file=sys.stderr)
            self.entries = {}

    def get(self, lam: Partition):
        entry = self.entries.get(str(lam))
        if entry is None:
            return None
        return QPolynomial.from_json({"coeffs": entry})

    def __setitem__(self, lam: Partition, poly: QPolynomial):
        self.entries[str(lam)] = poly.to_json()["coeffs"]
        if self.path is not None:
            with open(self.path, "w") as fh:
                json.dump(self.entries, fh, indent=1, sort_keys=True)


def _poly_out(p: QPolynomial, args) -> str:
    if args.latex:
        return latex_poly(p)
    return format_poly(p)


def _emit_rows(header: list[str], rows: list[list[str]], args) -> str:
    if args.json:
        return json.dumps([dict(zip(header, row)) for row in rows], indent=1)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    if args.latex:
        lines = ["\\begin{tabular}{|" + "c|" * len(header) + "}", "\\hline"]
        for row in rows:
            lines.append(" $ " + " $ & $ ".join(row) + " $\\\\")
        lines += ["\\hline", "\\end{tabular}"]
        return "\n".join(lines)
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    out = [" | ".join(h.ljust(w) for h, w in zip(header, widths))]
    for row in rows:
        out.append(" | ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(out)


def cmd_nlambda(args) -> int:
    lam = Partition.parse(args.partition)
    store = ResultStore(args.cache)
    poly = n_lambda(lam, store)
    if args.json:
        obj = {"partition": str(lam), **poly.to_json()}
        if args.at is not None:
            obj["at"] = {"q": args.at, "value": int(poly(args.at))}
        print(json.dumps(obj))
    else:
        print(_poly_out(poly, args))
        if args.at is not None:
            print(f"at q={args.at}: {poly(args.at)}")
    return 0


def cmd_table(args) -> int:
    store = ResultStore(args.cache)
    rows = []
    for lam in partitions_of(args.n):
        poly = n_lambda(lam, store)
        name = "(" + ", ".join(str(p) for p in lam.expand()) + ")"
        if args.json:
            rows.append([str(lam), poly.to_json()["coeffs"]])
        else:
            rows.append([name, _poly_out(poly, args)])
    header = ["partition", "coeffs" if args.json else "orbit count"]
    print(_emit_rows(header, rows, args))
    return 0


def cmd_census(args) -> int:
    lam = Partition.parse(args.partition)
    I = OrderIdeal.parse(args.max)
    census = orbit_census(lam, I)
    rows = [[format_poly(a), format_poly(n)]
            for a, n in sorted(census.items(), key=lambda e: (e[0].degree, e[0].coeffs))]
    print(_emit_rows(["cardinality", "number of orbits"], rows, args))
    total = per_ideal_total(lam, I)
    print(f"total: {_poly_out(total, args)}")
    return 0


def cmd_refined(args) -> int:
    lam = Partition.parse(args.partition)
    if lam.weight > REFINED_LIMIT and not args.force:
        raise ValueError(
            f"|lambda| = {lam.weight} exceeds the refined limit {REFINED_LIMIT}"
            " (use --force to override)")
    ideals = lattice(lam).ideals
    matrix = refined_matrix(lam)
    rows = []
    grand = QPolynomial()
    for I in ideals:
        row = [f"[{I}]"]
        row_sum = QPolynomial()
        for L in ideals:
            entry = matrix[(I, L)]
            row.append(format_poly(entry))
            row_sum = row_sum + entry
            grand = grand + entry
        row.append(format_poly(row_sum))
        rows.append(row)
    header = ["first \\ second"] + [f"[{L}]" for L in ideals] + ["row sum"]
    print(_emit_rows(header, rows, args))
    print(f"grand total: {_poly_out(grand, args)}")
    return 0


def cmd_quiver(args) -> int:
    poly = r_n1(args.n)
    if args.breakdown:
        rows = [[str(tau), format_poly(c_tau(tau)), format_poly(n_tau(tau))]
                for tau in enumerate_types(args.n)]
        print(_emit_rows(["type", "classes", "orbit count"], rows, args))
    if args.json:
        print(json.dumps({"n": args.n, **poly.to_json()}))
    else:
        print(_poly_out(poly, args))
    return 0


def cmd_verify(args) -> int:
    lam = Partition.parse(args.partition)
    mode = "full-endos" if args.full_endos else "quick"
    report = verify(lam, args.p, mode)
    if args.json:
        print(json.dumps(report, indent=1))
    else:
        for check in report["checks"]:
            tag = "PASS" if check["pass"] else "FAIL"
            print(f"{tag} {check['name']}")
            if not check["pass"]:
                print(f"  expected: {check['expected']}")
                print(f"  actual:   {check['actual']}")
    return 0 if report["pass"] else 2


def cmd_conjecture(args) -> int:
    bad = []
    for n in range(1, args.n_max + 1):
        for lam in partitions_of(n):
            poly = n_lambda(lam)
            if not poly.has_nonnegative_coefficients():
                bad.append((lam, poly))
    if bad:
        for lam, poly in bad:
            print(f"negative coefficient: n_({lam}) = {poly}")
        return 2
    print(f"no negative coefficients in any n_lambda for |lambda| <= {args.n_max}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitpairs",
        description="Exact orbit counting for pairs in finite modules over "
                    "discrete valuation rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_formats(p):
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true")
        fmt.add_argument("--csv", action="store_true")
        fmt.add_argument("--latex", action="store_true")

    p = sub.add_parser("nlambda", help="number of orbits of pairs for one shape")
    p.add_argument("partition")
    p.add_argument("--at", type=int, metavar="Q")
    p.add_argument("--cache", metavar="FILE")
    add_formats(p)
    p.set_defaults(func=cmd_nlambda)

    p = sub.add_parser("table", help="orbit counts for all partitions of n")
    p.add_argument("n", type=int)
    p.add_argument("--cache", metavar="FILE")
    add_formats(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("census", help="stabilizer-orbit cardinality census")
    p.add_argument("partition")
    p.add_argument("--max", required=True, metavar="POINTS",
                   help="maximal points of the ideal, e.g. '1:4,0:1'")
    add_formats(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("refined", help="orbit-pair matrix over element orbits")
    p.add_argument("partition")
    p.add_argument("--force", action="store_true")
    add_formats(p)
    p.set_defaults(func=cmd_refined)

    p = sub.add_parser("quiver", help="quiver representation count R_{n,1}")
    p.add_argument("n", type=int)
    p.add_argument("--breakdown", action="store_true")
    add_formats(p)
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("verify", help="brute-force comparison at q = p")
    p.add_argument("partition")
    p.add_argument("p", type=int)
    p.add_argument("--full-endos", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="scan for negative coefficients")
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_conjecture)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OrbitPairsError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 2


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
