"""Command-line front end.

Exit codes: 0 on success, 1 on a mathematical failure (oracle
disagreement, failing verification suite), 2 on malformed input or flags.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import complexes as cx
from . import degeneration as dg
from . import formats
from . import strata as st
from . import suites


def _parse_dims_flag(text: str) -> st.GradedDims:
    try:
        parts = [int(x) for x in text.split(",")]
        return st.GradedDims(parts)
    except ValueError as exc:
        raise formats.DocumentError(f"bad --dims {text!r}: {exc}") from exc


def cmd_poset(args) -> int:
    dims = _parse_dims_flag(args.dims)
    R = st.enumerate_R(dims)
    maximal = set(st.maximal_elements(dims))
    rows = []
    for rv in R:
        rows.append({
            "r": list(rv.r),
            "length": rv.length(),
            "maximal": rv in maximal,
            "h": list(rv.cohomology_dims()),
            "stratum_dim": st.stratum_dim(rv),
        })
    if args.json:
        print(json.dumps({"dims": list(dims.n), "poset": rows}, indent=2))
    else:
        print(f"rank poset for dims {dims.n}: {len(rows)} strata, "
              f"{len(maximal)} maximal")
        for row in rows:
            mark = "max" if row["maximal"] else "   "
            print(f"  r={tuple(row['r'])} |r|={row['length']} {mark} "
                  f"h={tuple(row['h'])} dim={row['stratum_dim']}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(st.hasse_dot(dims) + "\n")
        print(f"wrote Hasse diagram to {args.dot}")
    return 0


def _page_report(limit: dg.LimitResult) -> list[str]:
    lines = []
    for nu, page in enumerate(limit.ss.pages):
        rv = cx.rank_vector(page)
        lines.append(f"  page {nu}: dims {page.dims.n} ranks {rv.r}")
    if limit.label is not None:
        chain = [e.r for e in limit.label.elements]
        lines.append(f"  label: {chain} -> {limit.label.terminal.r}")
    lines.append(f"  reduced: {str(limit.reduced).lower()}")
    return lines


def cmd_limit(args) -> int:
    doc = formats.load_json(args.family)
    pc = formats.parse_family(doc)
    dec = dg.dvr_decompose(pc)
    limit = dg.limit_complete_complex(pc, dec)
    mult = dec.multiplicities()
    table = dg.exponent_rank_table(pc, dec)

    oracle_status = None
    if args.oracle is not None:
        exps = dec.exponents()
        need = 2 * (exps[-1] if exps else 0) + 4
        if args.oracle < need:
            print(f"error: --oracle {args.oracle} is too small for exponents "
                  f"{exps}; need at least {need}", file=sys.stderr)
            return 2
        got = dg.filtered_oracle(pc, args.oracle)
        want = dg.page_table_from_multiplicities(pc.dims, mult, len(got) - 2)
        oracle_status = (list(got) == list(want))

    payload = {
        "dims": list(pc.dims.n),
        "multiplicities": [{"degree": d, "exponent": a, "count": c}
                           for (d, a), c in sorted(mult.items())],
        "pages": [{"dims": list(p.dims.n),
                   "ranks": list(cx.rank_vector(p).r)}
                  for p in limit.ss.pages],
        "exponent_table": [{"dims": list(ds), "ranks": list(rs)}
                           for ds, rs in table],
        "label": formats.emit_label(limit.label),
        "reduced": limit.reduced,
        "spectral_sequence": formats.emit_spectral_sequence(limit.ss),
    }
    if oracle_status is not None:
        payload["oracle"] = "agree" if oracle_status else "disagree"

    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        print(f"wrote limit data to {args.json}")
    print(f"limit of family on dims {pc.dims.n}:")
    for line in _page_report(limit):
        print(line)
    if oracle_status is not None:
        print(f"  oracle: {'agree' if oracle_status else 'DISAGREE'}")
        if not oracle_status:
            return 1
    return 0


def cmd_analyze(args) -> int:
    doc = formats.load_json(args.complex)
    c = formats.parse_complex(doc)
    rv = cx.rank_vector(c)
    h = rv.cohomology_dims()
    tangent = len(cx.morphism_space(c))
    orbit = len(cx.nullhomotopic_space(c))
    stab = cx.stabilizer_dim(c)
    normal = sum(h[i] * h[i + 1] for i in range(c.dims.m))
    chart = cx.chart_jacobian_rank(c)
    homotopy_ok = (tangent - orbit == normal)
    chart_ok = (chart == orbit + normal)
    payload = {
        "dims": list(c.dims.n),
        "r": list(rv.r),
        "h": list(h),
        "tangent_dim": tangent,
        "orbit_dim": orbit,
        "stabilizer_dim": stab,
        "normal_dim": normal,
        "chart_jacobian_rank": chart,
        "homotopy_identity": homotopy_ok,
        "chart_identity": chart_ok,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        status = "OK" if (homotopy_ok and chart_ok) else "VIOLATED"
        print(f"r={rv.r} h={h} tangent={tangent} orbit={orbit} "
              f"stabilizer={stab} normal={normal} chart={chart}: {status}")
    return 0 if (homotopy_ok and chart_ok) else 1


def cmd_verify(args) -> int:
    if args.suite == "census":
        dims = _parse_dims_flag(args.dims or "1,1,1")
        report = suites.exhaustive_field_census(dims, args.p)
    elif args.suite == "random":
        report = suites.random_rational_suite(
            args.seed, max_m=args.max_m, max_n=args.max_dim, cases=args.cases)
    elif args.suite == "degeneration":
        report = suites.degeneration_suite(
            args.seed, cases=args.cases, max_n=min(args.max_dim, 3))
    else:  # argparse choices make this unreachable
        return 2
    if args.json:
        print(report.to_json())
    else:
        print(report.summary())
        for f in report.failures[:20]:
            print(f"  failure: {f}")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="varcom",
        description="Exact computations with varieties of complexes and "
                    "limits of one-parameter families.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_poset = sub.add_parser("poset", help="enumerate the rank poset R")
    p_poset.add_argument("--dims", required=True,
                         help="comma-separated dimension vector, e.g. 1,2,1")
    p_poset.add_argument("--dot", help="write the Hasse diagram to this DOT file")
    p_poset.add_argument("--json", action="store_true", help="JSON output")
    p_poset.set_defaults(func=cmd_poset)

    p_limit = sub.add_parser("limit", help="limit of a family as t -> 0")
    p_limit.add_argument("family", help="family JSON document")
    p_limit.add_argument("--oracle", type=int, metavar="N",
                         help="cross-check with the filtered-complex oracle "
                              "at truncation order N")
    p_limit.add_argument("--json", metavar="OUT",
                         help="also write full limit data to OUT")
    p_limit.set_defaults(func=cmd_limit)

    p_an = sub.add_parser("analyze", help="tangent/orbit/chart data of a complex")
    p_an.add_argument("complex", help="complex JSON document")
    p_an.add_argument("--json", action="store_true", help="JSON output")
    p_an.set_defaults(func=cmd_analyze)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", required=True,
                       choices=["census", "random", "degeneration"])
    p_ver.add_argument("--seed", type=int, default=1)
    p_ver.add_argument("--cases", type=int, default=100)
    p_ver.add_argument("--dims", help="dims for the census suite")
    p_ver.add_argument("--p", type=int, default=2, help="census prime")
    p_ver.add_argument("--max-dim", dest="max_dim", type=int, default=5)
    p_ver.add_argument("--max-m", dest="max_m", type=int, default=4)
    p_ver.add_argument("--json", action="store_true", help="JSON report")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except formats.DocumentError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (cx.NotAComplexError, suites.CensusBudgetError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
