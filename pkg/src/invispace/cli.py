"""Command-line front end: read fixture or user files, run the domain
operations, emit a single JSON report per invocation.

Exit status: 0 on success, 1 on domain errors (infeasibility, precondition
violations), 2 on I/O, parse, or usage errors.
"""

import argparse
import json
import sys

import numpy as np

from . import colorimetry, fixtures, quantum, rigid_body, serialize
from .errors import InvispaceError
from .linalg_core import Tolerance

__all__ = ["main"]


def _tol(args) -> Tolerance:
    return Tolerance(rel=args.tol_rel, abs=args.tol_abs)


def _write_report(args, report):
    text = serialize.dumps_report(report)
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_weights(text, n):
    w = np.array([float(v) for v in text.split(",")])
    if w.size != n:
        raise ValueError(f"expected {n} comma-separated weights, got {w.size}")
    return w


def _summary_report(body, tol):
    s = rigid_body.summary(body, tol)
    return {
        "total_mass": s.total_mass,
        "center_of_mass": None if s.center_of_mass is None else s.center_of_mass,
        "inertia_origin": s.inertia_about_origin,
        "inertia_cm": None if s.inertia_about_cm is None else s.inertia_about_cm,
    }


# ----------------------------------------------------------------- commands

def cmd_metamer(args):
    tol = _tol(args)
    illuminants = (
        serialize.read_illuminant_csv(args.illuminants) if args.illuminants else fixtures.led_bank()
    )
    if args.action == "table":
        banks = {}
        for spec_item in args.banks:
            name, _, path = spec_item.partition("=")
            if path:
                banks[name] = serialize.read_receptor_csv(path)
            else:
                banks[name] = fixtures.receptor_bank(name)
        base = _parse_weights(args.base, illuminants.n_channels) if args.base else np.ones(
            illuminants.n_channels
        )
        table = colorimetry.discrimination_table(banks, illuminants, base, tol)
        _write_report(args, {"discrimination_table": table})
        return

    receptors = (
        serialize.read_receptor_csv(args.receptors)
        if args.receptors
        else fixtures.receptor_bank("normal")
    )
    M = colorimetry.response_matrix(receptors, illuminants)
    if args.action == "matrix":
        _write_report(args, {"response_matrix": M})
    elif args.action == "space":
        basis = colorimetry.metamer_space(M, tol)
        _write_report(args, {"response_matrix": M, "metamer_basis": basis.vectors})
    elif args.action == "family":
        base = _parse_weights(args.base, M.shape[1]) if args.base else np.ones(M.shape[1])
        fam = colorimetry.metamer_family(receptors, illuminants, base, tol)
        _write_report(
            args,
            {
                "base": fam.base,
                "direction": fam.direction,
                "lambda_range": serialize.encode_interval(fam.lambda_range),
            },
        )
    elif args.action == "same":
        b1 = _parse_weights(args.b1, M.shape[1])
        b2 = _parse_weights(args.b2, M.shape[1])
        same = colorimetry.indistinguishable(receptors, illuminants, b1, b2, tol)
        _write_report(args, {"indistinguishable": same})


def cmd_body(args):
    tol = _tol(args)
    body = serialize.read_body_csv(args.input)
    if args.action == "summary":
        _write_report(args, {"summary": _summary_report(body, tol)})
    elif args.action == "invisible":
        _write_report(
            args,
            {
                "invisible": rigid_body.is_invisible(body, tol),
                "summary": _summary_report(body, tol),
            },
        )
    elif args.action == "equivalent":
        other = serialize.read_body_csv(args.other)
        _write_report(args, {"equivalent": rigid_body.are_equivalent(body, other, tol)})
    elif args.action == "family":
        invisible = serialize.read_body_csv(args.invisible)
        interval = rigid_body.equivalent_family(body, invisible, tol)
        _write_report(args, {"lambda_range": serialize.encode_interval(interval)})
    elif args.action == "parity":
        result = rigid_body.parity_construction(body, tol)
        points = [[m, *x] for m, x in zip(result.masses, result.positions)]
        _write_report(args, {"points": points, "invisible": rigid_body.is_invisible(result, tol)})


def cmd_qstate(args):
    tol = _tol(args)
    if args.action == "invisible":
        suite = serialize.read_suite_json(args.suite)
        space = quantum.invisible_space(suite, dim=args.dim, tol=tol)
        _write_report(
            args,
            {"invisible_basis": [serialize.encode_complex_matrix(X) for X in space.operators]},
        )
    elif args.action == "interval":
        rho = serialize.read_matrix_json(args.rho)
        X = serialize.read_matrix_json(args.direction)
        interval = quantum.feasible_step_interval(rho, X, tol)
        _write_report(args, {"interval": serialize.encode_interval(interval)})
    elif args.action == "physical":
        rho = serialize.read_matrix_json(args.rho)
        _write_report(args, {"physical": quantum.is_physical(rho, tol)})
    elif args.action == "reconstruct":
        record = serialize.read_record_json(args.record)
        sol = quantum.reconstruct_affine(record, tol)
        _write_report(
            args,
            {"rho": serialize.encode_complex_matrix(sol.matrix), "physical": sol.physical},
        )
    elif args.action == "sample":
        record = serialize.read_record_json(args.record)
        states = quantum.ambiguity_sample(record, args.count, args.seed, tol)
        _write_report(
            args, {"samples": [serialize.encode_complex_matrix(s) for s in states]}
        )
    elif args.action == "compare":
        suite_a = serialize.read_suite_json(args.suite_a)
        suite_b = serialize.read_suite_json(args.suite_b)
        report = quantum.blind_spot_compare(suite_a, suite_b, dim=args.dim, tol=tol)

        def maybe(M):
            return None if M is None else serialize.encode_complex_matrix(M)

        _write_report(
            args,
            {
                "report": {
                    "dim_a": report.dim_a,
                    "dim_b": report.dim_b,
                    "dim_intersection": report.dim_intersection,
                    "a_resolved_by_b": maybe(report.a_resolved_by_b),
                    "b_resolved_by_a": maybe(report.b_resolved_by_a),
                }
            },
        )


def _write_fixture(args):
    import os

    dest = args.dest
    os.makedirs(dest, exist_ok=True)
    name = args.name
    written = []
    if name in fixtures.RECEPTOR_BANK_NAMES:
        path = os.path.join(dest, f"{name}.csv")
        serialize.write_bank_csv(path, fixtures.receptor_bank(name))
        written.append(path)
    elif name == "leds":
        path = os.path.join(dest, "leds.csv")
        serialize.write_bank_csv(path, fixtures.led_bank())
        written.append(path)
    elif name == "minimal-body":
        path = os.path.join(dest, "minimal_body.csv")
        serialize.write_body_csv(path, fixtures.minimal_invisible_body())
        written.append(path)
    elif name == "minimal-base":
        path = os.path.join(dest, "minimal_base.csv")
        serialize.write_body_csv(path, fixtures.minimal_base_body())
        written.append(path)
    elif name in ("tetrahedron", "cube", "octahedron"):
        path = os.path.join(dest, f"{name}.csv")
        serialize.write_body_csv(path, rigid_body.platonic_fixture(name))
        written.append(path)
    elif name == "pauli":
        for label, M in fixtures.pauli_matrices().items():
            path = os.path.join(dest, f"{label}.json")
            with open(path, "w") as fh:
                fh.write(serialize.dumps_report(serialize.encode_complex_matrix(M)))
            written.append(path)
    else:
        raise KeyError(f"unknown fixture {name!r}")
    _write_report(args, {"written": written})


FIXTURE_NAMES = sorted(
    list(fixtures.RECEPTOR_BANK_NAMES)
    + ["leds", "minimal-body", "minimal-base", "tetrahedron", "cube", "octahedron", "pauli"]
)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="invispace",
        description="Invisible metamers, invisible bodies, and quantum grey boxes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol-rel", type=float, default=None)
        p.add_argument("--tol-abs", type=float, default=0.0)
        p.add_argument("--output", default="-")
        p.add_argument("--seed", type=int, default=0)

    pm = sub.add_parser("metamer", help="colorimetry operations")
    pm.add_argument("action", choices=["matrix", "space", "family", "same", "table"])
    pm.add_argument("--receptors", help="receptor bank CSV (default: built-in normal bank)")
    pm.add_argument("--illuminants", help="illuminant bank CSV (default: built-in LEDs)")
    pm.add_argument("--base", help="comma-separated base weights (default: all ones)")
    pm.add_argument("--b1")
    pm.add_argument("--b2")
    pm.add_argument(
        "--banks",
        nargs="+",
        default=list(fixtures.RECEPTOR_BANK_NAMES),
        help="bank names or name=path.csv entries for the table action",
    )
    common(pm)
    pm.set_defaults(func=cmd_metamer, default_rel=1e-10)

    pb = sub.add_parser("body", help="rigid-body operations")
    pb.add_argument("action", choices=["summary", "invisible", "equivalent", "family", "parity"])
    pb.add_argument("--input", required=True, help="body CSV (mass,x,y,z)")
    pb.add_argument("--other", help="second body CSV for the equivalent action")
    pb.add_argument("--invisible", help="invisible-direction body CSV for the family action")
    common(pb)
    pb.set_defaults(func=cmd_body, default_rel=1e-10)

    pq = sub.add_parser("qstate", help="quantum grey-box operations")
    pq.add_argument(
        "action",
        choices=["invisible", "interval", "physical", "reconstruct", "sample", "compare"],
    )
    pq.add_argument("--suite", help="observable suite JSON")
    pq.add_argument("--suite-a")
    pq.add_argument("--suite-b")
    pq.add_argument("--rho", help="state JSON")
    pq.add_argument("--direction", help="traceless Hermitian direction JSON")
    pq.add_argument("--record", help="measurement record JSON")
    pq.add_argument("--count", type=int, default=10)
    pq.add_argument("--dim", type=int, help="dimension for empty suites")
    common(pq)
    pq.set_defaults(func=cmd_qstate, default_rel=1e-9)

    pf = sub.add_parser("fixtures", help="write built-in fixture files")
    pf.add_argument("name", choices=FIXTURE_NAMES)
    pf.add_argument("--dest", default=".")
    common(pf)
    pf.set_defaults(func=_write_fixture, default_rel=1e-10)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.tol_rel is None:
        args.tol_rel = args.default_rel
    try:
        args.func(args)
    except InvispaceError as exc:
        sys.stderr.write(
            serialize.dumps_report({"error": type(exc).__name__, "message": str(exc)})
        )
        return 1
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        sys.stderr.write(
            serialize.dumps_report({"error": type(exc).__name__, "message": str(exc)})
        )
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
