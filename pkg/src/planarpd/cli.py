"""Command line interface.

Exit codes: 0 success, 2 bad input, 3 no LDU decomposition, 4 size guard,
5 internal inconsistency (disagreeing verdicts or a failed self-check).
Whether a matrix is positive definite is reported in the JSON, never
through the exit code.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import cluster, jacobi, network, numeric, wiring
from .formats import (
    FormatError,
    dumps,
    factors_to_json,
    matrix_from_json,
    network_to_json,
    seed_to_json,
)
from .numeric import FactorizationError, format_scalar

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_LDU = 3
EXIT_SIZE = 4
EXIT_INCONSISTENT = 5

MAX_ALL_MINORS = 5
MAX_EXPLORE_TABLE = 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _label(I, J) -> str:
    return f"{','.join(map(str, I))}|{','.join(map(str, J))}"


def read_matrix(path: str) -> numeric.Matrix:
    try:
        if path == "-":
            obj = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                obj = json.load(fh)
        M = matrix_from_json(obj)
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_INPUT, f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    except (FormatError, ValueError) as exc:
        raise CliError(EXIT_INPUT, f"{path}: {exc}") from exc
    if not M.is_square:
        raise CliError(EXIT_INPUT, f"{path}: matrix must be square")
    return M


def cmd_factor(args) -> object:
    M = read_matrix(args.matrix)
    if args.ldu_form:
        try:
            fs = jacobi.factorize_ldu_form(M)
        except FactorizationError as exc:
            raise CliError(EXIT_NO_LDU, str(exc)) from exc
    else:
        fs = jacobi.factorize_general(M)
    if not jacobi.verify_factorization(fs, M):
        raise CliError(EXIT_INCONSISTENT, "self-check failed: factors do not multiply back to the input")
    return factors_to_json(fs)


def build_network(M: numeric.Matrix) -> network.PlanarNetwork:
    """LDU-shaped network when the matrix allows it, a general one otherwise."""
    try:
        fs = jacobi.factorize_ldu_form(M)
    except FactorizationError:
        fs = jacobi.factorize_general(M)
    return network.network_from_factors(fs, M.n_rows)


def cmd_network(args) -> object:
    M = read_matrix(args.matrix)
    net = build_network(M)
    if network.weight_matrix(net) != M:
        raise CliError(EXIT_INCONSISTENT, "self-check failed: network weight matrix differs from input")
    if args.dot:
        return network.network_to_dot(net)
    return network_to_json(net)


def cmd_minors(args) -> object:
    M = read_matrix(args.matrix)
    n = M.n_rows
    if args.all:
        if n > MAX_ALL_MINORS:
            raise CliError(EXIT_SIZE, f"--all is limited to n <= {MAX_ALL_MINORS} (got n={n})")
        return {_label(I, J): format_scalar(v) for (I, J), v in numeric.all_minors(M).items()}
    if args.leading:
        lead = numeric.leading_principal_minors(M)
        return {_label(range(1, k + 1), range(1, k + 1)): format_scalar(v) for k, v in enumerate(lead, 1)}
    if args.rows is None or args.cols is None:
        raise CliError(EXIT_INPUT, "give --all, --leading, or both -I and -J")
    try:
        I, J = sorted(args.rows), sorted(args.cols)
        return {_label(I, J): format_scalar(numeric.minor(M, I, J))}
    except (IndexError, ValueError) as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc


def _fmt_all(values) -> list[str]:
    return [format_scalar(v) for v in values]


def run_pd_checks(M: numeric.Matrix, methods: Sequence[str], depth: int) -> dict:
    reports = []
    if "oracle" in methods:
        v = numeric.pd_oracle(M)
        reports.append(
            {"method": "oracle", "is_pd": v.is_pd, "reason": v.reason.value, "witness": v.witness,
             "evidence": {"leading_minors": _fmt_all(v.minors)}}
        )
    if "network" in methods:
        v = network.pd_check_network(M)
        reports.append(
            {"method": "network", "is_pd": v.is_pd, "reason": v.reason.value, "witness": v.witness,
             "evidence": {"line_weights": None if v.line_weights is None else _fmt_all(v.line_weights)}}
        )
    if "cluster" in methods:
        v = cluster.pd_check_cluster(M, depth)
        reports.append(
            {"method": "cluster", "is_pd": v.is_pd, "reason": v.reason.value, "witness": v.witness,
             "evidence": {
                 "checked_values": _fmt_all(v.checked_values),
                 "explore_depth": v.explore_depth,
                 "seeds_reached": v.seeds_reached,
                 "orbit_values_positive": v.orbit_values_positive,
                 "frozen_positive": dict(v.frozen_report),
             }}
        )
    verdicts = {r["is_pd"] for r in reports}
    return {"is_pd": reports[0]["is_pd"], "consistent": len(verdicts) == 1, "verdicts": reports}


def cmd_pd_check(args) -> object:
    M = read_matrix(args.matrix)
    methods = ["oracle", "network", "cluster"] if args.method == "all" else [args.method]
    report = run_pd_checks(M, methods, args.depth)
    if not report["consistent"]:
        sys.stdout.write(dumps(report))
        raise CliError(EXIT_INCONSISTENT, "pd-check methods disagree")
    return report


def _read_diagram(path: str) -> wiring.DoubleWiringDiagram:
    try:
        with open(path, encoding="utf-8") as fh:
            d = wiring.diagram_from_json(json.load(fh))
        wiring.require_valid(d)
        return d
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CliError(EXIT_INPUT, f"{path}: {exc}") from exc


def cmd_wiring(args) -> object:
    if args.diagram:
        d = _read_diagram(args.diagram)
    else:
        if args.n is None or args.n < 1:
            raise CliError(EXIT_INPUT, "--n N (N >= 1) or --diagram FILE is required")
        d = wiring.standard_pd_diagram(args.n)
    M = read_matrix(args.matrix) if args.matrix else None
    if M is not None and M.n_rows != d.n:
        raise CliError(EXIT_INPUT, f"matrix is {M.n_rows}x{M.n_rows} but diagram has n={d.n}")
    if args.quiver or args.dot:
        q = wiring.build_quiver(d)
        if M is not None and not args.dot:
            return seed_to_json(cluster.wiring_seed(q, M))
        return wiring.wiring_to_dot(q)
    out = {
        "diagram": wiring.diagram_to_json(d),
        "chambers": [
            {"label": c.label, "row": c.row, "bounded": c.bounded,
             "left": None if c.left_color is None else c.left_color.value,
             "right": None if c.right_color is None else c.right_color.value}
            for c in wiring.chambers(d)
        ],
    }
    if M is not None:
        out["chamber_minors"] = {c.label: format_scalar(v) for c, v in wiring.chamber_minors(d, M).items()}
    return out


def cmd_explore(args) -> object:
    M = read_matrix(args.matrix)
    n = M.n_rows
    if args.depth < 0:
        raise CliError(EXIT_INPUT, "--depth must be >= 0")
    check_table = not args.no_table
    if check_table and n > MAX_EXPLORE_TABLE:
        raise CliError(EXIT_SIZE, f"minor table checks are limited to n <= {MAX_EXPLORE_TABLE}; use --no-table")
    if args.subalgebra:
        seed = cluster.pd_subalgebra_seed(M)
    else:
        seed = cluster.wiring_seed(wiring.build_quiver(wiring.standard_pd_diagram(n)), M)
    ex = cluster.explore(seed, args.depth)
    table: dict = {}
    if check_table:
        for (I, J), v in numeric.all_minors(M).items():
            table.setdefault(v, []).append(_label(I, J))
    values = sorted(ex.values(), key=lambda z: (z.re, z.im))
    mutable = [z for s in ex.seeds for z in s.mutable_values.values()]
    return {
        "depth": args.depth,
        "seeds_reached": len(ex.seeds),
        "initial_seed": seed_to_json(seed),
        "values": [
            {"value": format_scalar(z),
             "is_minor": (z in table) if check_table else None,
             "minors": sorted(table.get(z, [])) if check_table else None}
            for z in values
        ],
        "zero_branches": [{"path": list(p), "vertex": v} for p, v in ex.zero_branches],
        "positivity": {
            "all_values_positive": all(z.is_positive() for z in values),
            "all_cluster_variables_positive": all(z.is_positive() for z in mutable),
            "non_positive": sorted({format_scalar(z) for z in values if not z.is_positive()}),
        },
    }


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planarpd", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factor", help="factor a matrix into Jacobi matrices")
    f.add_argument("matrix", help="matrix JSON file or - for stdin")
    f.add_argument("--ldu-form", action="store_true", help="group factors as descending, diagonal, ascending")
    f.set_defaults(func=cmd_factor)

    nw = sub.add_parser("network", help="planar network realizing a matrix")
    nw.add_argument("matrix")
    g = nw.add_mutually_exclusive_group()
    g.add_argument("--dot", action="store_true")
    g.add_argument("--json", action="store_true", help="(default)")
    nw.set_defaults(func=cmd_network)

    mn = sub.add_parser("minors", help="exact minors")
    mn.add_argument("matrix")
    g = mn.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true")
    g.add_argument("--leading", action="store_true")
    mn.add_argument("-I", dest="rows", type=int, nargs="+")
    mn.add_argument("-J", dest="cols", type=int, nargs="+")
    mn.set_defaults(func=cmd_minors)

    pd = sub.add_parser("pd-check", help="positive definiteness by oracle, network and cluster tests")
    pd.add_argument("matrix")
    pd.add_argument("--method", choices=["oracle", "network", "cluster", "all"], default="all")
    pd.add_argument("--depth", type=int, default=2, help="mutation depth for the cluster test")
    pd.set_defaults(func=cmd_pd_check)

    w = sub.add_parser("wiring", help="standard double wiring diagram, its chambers and quiver")
    w.add_argument("--n", type=int)
    w.add_argument("--diagram", help="diagram JSON instead of the standard one")
    w.add_argument("--quiver", action="store_true", help="emit the quiver as DOT")
    w.add_argument("--dot", action="store_true", help="same as --quiver")
    w.add_argument("--matrix", help="evaluate chamber minors on this matrix")
    w.set_defaults(func=cmd_wiring)

    ex = sub.add_parser("explore", help="mutation orbit of the wiring seed")
    ex.add_argument("matrix")
    ex.add_argument("--depth", type=int, default=2)
    ex.add_argument("--subalgebra", action="store_true", help="start from the PD cluster subalgebra seed")
    ex.add_argument("--no-table", action="store_true", help="skip the minor-table membership check")
    ex.set_defaults(func=cmd_explore)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        result = args.func(args)
    except CliError as exc:
        print(f"planarpd: {exc}", file=sys.stderr)
        return exc.code
    sys.stdout.write(result if isinstance(result, str) else dumps(result))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
