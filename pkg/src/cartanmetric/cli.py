"""Command-line front end.

    cartanmetric table --metric iseries1 --alpha 1 --beta 2
    cartanmetric invariants --metric kropina --alpha 1 --beta 1 --format json
    cartanmetric tensors --metric iseries1 --spec euclid2.json --y 0.6 0.8
    cartanmetric verify --metric iseries1 --spec euclid2.json --samples 100 --seed 42 --out report.json
    cartanmetric sample --metric iseries1 --spec euclid2.json --samples 5 --seed 7

Exit codes: 0 ok, 1 an unconditional identity failed, 2 bad input or
inadmissible point, 3 I/O error, 4 no admissible sample found.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .hfunction import FAMILIES, DomainError, get_family, h_jet_closed
from .invariants import invariants_from_jet
from .metric_space import (
    EvaluationError,
    Momentum,
    SamplingError,
    SpecError,
    contract_alpha_beta,
    evaluate_point,
    load_manifold_spec,
    sample_admissible,
)
from .tensors import SingularTensorError, tensor_bundle
from .verify import run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_IO, EXIT_SAMPLER = 0, 1, 2, 3, 4

# ordering of the printed derivative tables
TABLE_ORDER = ("H", "H_a", "H_b", "H_aa", "H_ab", "H_bb", "H_aaa", "H_aab", "H_bbb", "H_abb")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def plain(obj):
    """numpy containers and scalars -> JSON-ready python values."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def fmt(v) -> str:
    # repr of a float is its shortest round-trip form (at most 17 digits)
    return repr(float(v)) if isinstance(v, (float, np.floating)) else str(v)


def dump_json(obj) -> str:
    return json.dumps(plain(obj), indent=2) + "\n"


def dump_csv(rows: list[dict]) -> str:
    columns: list[str] = []
    for row in rows:
        columns.extend(k for k in row if k not in columns)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: fmt(v) if v is not None else "" for k, v in row.items()})
    return buf.getvalue()


def _read_spec(path):
    if path is None:
        raise CliError("--spec is required", EXIT_INPUT)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read spec {path}: {exc.strerror or exc}", EXIT_IO) from None
    try:
        return load_manifold_spec(text)
    except SpecError as exc:
        raise CliError(f"invalid spec {path}: {exc}", EXIT_INPUT) from None


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc.strerror or exc}", EXIT_IO) from None


# -- subcommands ---------------------------------------------------------------


def _jet_and_invariants(args):
    if args.alpha is None or args.beta is None:
        raise CliError("--alpha and --beta are required", EXIT_INPUT)
    try:
        jet = h_jet_closed(args.metric, args.alpha, args.beta)
    except DomainError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    return jet, invariants_from_jet(jet, args.alpha)


def _scalar_rows(args, pairs) -> str:
    if args.format == "json":
        return dump_json({"metric": args.metric, "alpha": args.alpha, "beta": args.beta, **dict(pairs)})
    if args.format == "csv":
        return dump_csv([{"quantity": k, "value": v} for k, v in pairs])
    width = max(len(k) for k, _ in pairs)
    head = f"# {get_family(args.metric).label}  at  alpha={fmt(args.alpha)}  beta={fmt(args.beta)}\n"
    return head + "".join(f"{k:<{width}}  {fmt(v)}\n" for k, v in pairs)


def cmd_table(args) -> int:
    jet, inv = _jet_and_invariants(args)
    d = jet.as_dict()
    pairs = [(k, d[k]) for k in TABLE_ORDER] + list(inv.as_dict().items())
    _emit(_scalar_rows(args, pairs), args.out)
    return EXIT_OK


def cmd_invariants(args) -> int:
    _, inv = _jet_and_invariants(args)
    _emit(_scalar_rows(args, list(inv.as_dict().items())), args.out)
    return EXIT_OK


def _indexed(name: str, arr: np.ndarray) -> list[tuple[str, float]]:
    return [(f"{name}[{','.join(map(str, idx))}]", float(v)) for idx, v in np.ndenumerate(arr)]


def cmd_tensors(args) -> int:
    spec = _read_spec(args.spec)
    if args.y is None:
        raise CliError("--y is required", EXIT_INPUT)
    x = np.zeros(spec.dim) if args.x is None else np.asarray(args.x, float)
    if len(x) != spec.dim or len(args.y) != spec.dim:
        raise CliError(f"--x and --y need {spec.dim} components", EXIT_INPUT)
    try:
        y = Momentum(np.asarray(args.y, float))
        sample = evaluate_point(spec, x)
        bundle = tensor_bundle(args.metric, sample, y)
    except (ValueError, DomainError, EvaluationError) as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    except SingularTensorError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None

    record = {
        "metric": get_family(args.metric).id,
        "x": x,
        "y": y.y,
        "alpha": bundle.alpha,
        "beta": bundle.beta,
        "H": bundle.H,
        "y_upper": bundle.y_upper,
        "g_upper": bundle.g_upper,
        "g_lower": bundle.g_lower,
        "cartan": bundle.cartan,
        "tau": bundle.tau,
        "det_g_upper": bundle.det_g_upper,
        "det_identity_residual": bundle.det_identity_residual,
        "rank1_residual": bundle.rank1_residual,
        "C2": bundle.C2,
        "signature": list(bundle.signature),
    }
    if args.format == "json":
        _emit(dump_json(record), args.out)
        return EXIT_OK
    flat: list[tuple[str, object]] = []
    for key in ("alpha", "beta", "H"):
        flat.append((key, record[key]))
    for key in ("y_upper", "g_upper", "g_lower", "cartan"):
        flat.extend(_indexed(key, record[key]))
    for key in ("tau", "det_g_upper", "det_identity_residual", "rank1_residual", "C2"):
        flat.append((key, record[key]))
    flat.append(("signature", "/".join(map(str, bundle.signature))))
    if args.format == "csv":
        _emit(dump_csv([{"quantity": k, "value": v} for k, v in flat]), args.out)
    else:
        width = max(len(k) for k, _ in flat)
        _emit("".join(f"{k:<{width}}  {fmt(v) if v is not None else '-'}\n" for k, v in flat), args.out)
    return EXIT_OK


def report_rows(report) -> list[dict]:
    rows = []
    for r in report.identities:
        rows.append({
            "record": "identity", "id": r.id, "anchor": r.anchor, "kind": r.kind, "samples": r.samples,
            "max_abs_residual": r.max_abs_residual, "max_rel_residual": r.max_rel_residual,
            "status": r.status, "tolerance": r.tolerance,
        })
    for n in report.errata:
        rows.append({
            "record": "erratum", "id": n.expr, "anchor": n.anchor, "erratum": n.erratum,
            "alpha": n.point[0], "beta": n.point[1],
            "printed": n.printed, "oracle": n.oracle, "deviation": n.deviation,
        })
    return rows


def render_report(report, fmt_name: str) -> str:
    if fmt_name == "json":
        return dump_json(report.to_dict())
    if fmt_name == "csv":
        return dump_csv(report_rows(report))
    h = report.header
    lines = [f"# {h['family']} ({h['metric']}) dim={h['dim']} samples={h['samples']} seed={h['seed']} tol={fmt(h['tolerance'])}"]
    width = max(len(r.id) for r in report.identities)
    for r in report.identities:
        lines.append(f"{r.id:<{width}}  {r.status:<11}  max_rel={fmt(r.max_rel_residual)}  {r.notes}".rstrip())
    for n in report.errata:
        lines.append(f"erratum {n.expr} [{n.erratum}] at {n.point}: printed={fmt(n.printed)} oracle={fmt(n.oracle)} deviation={fmt(n.deviation)}")
    c = report.classification
    lines.append(
        f"classification: rho_nonvanishing={c['rho_nonvanishing']} rank1_class={c['rank1_class']} "
        f"satisfies_relations={c['satisfies_deformed_iseries_relations']} fingerprint={c['fingerprint']}"
    )
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    spec = _read_spec(args.spec)
    try:
        report = run_suite(spec, args.metric, args.dim, args.samples, args.seed, args.tol)
    except SamplingError as exc:
        raise CliError(str(exc), EXIT_SAMPLER) from None
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    _emit(render_report(report, args.format), args.out)
    c = report.counts()
    # keep stdout parseable when the report itself goes there
    print(f"{report.header['family']} holds={c['holds']} conditional={c['conditional']} "
          f"fails={c['fails']} errata={len(report.errata)}",
          file=sys.stderr if args.out is None else sys.stdout)
    return EXIT_FAIL if report.unconditional_failures() else EXIT_OK


def cmd_sample(args) -> int:
    spec = _read_spec(args.spec)
    try:
        points = sample_admissible(spec, args.metric, args.samples, args.seed)
    except SamplingError as exc:
        raise CliError(str(exc), EXIT_SAMPLER) from None
    rows = []
    for k, (x, y) in enumerate(points):
        alpha, beta, _ = contract_alpha_beta(evaluate_point(spec, x), y)
        rows.append({"index": k, "x": x, "y": y.y, "alpha": alpha, "beta": beta})
    if args.format == "json":
        _emit(dump_json(rows), args.out)
    else:
        flat = []
        for r in rows:
            row = {"index": r["index"]}
            row.update({f"x{i}": float(v) for i, v in enumerate(r["x"])})
            row.update({f"y{i}": float(v) for i, v in enumerate(r["y"])})
            row.update(alpha=r["alpha"], beta=r["beta"])
            flat.append(row)
        _emit(dump_csv(flat), args.out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cartanmetric", description="(alpha, beta)-metrics on Cartan spaces")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--metric", required=True, choices=sorted(FAMILIES))
    common.add_argument("--out", help="write output here instead of stdout")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--alpha", type=float)
    point.add_argument("--beta", type=float)

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--spec", help="manifold-spec JSON file")
    sampling.add_argument("--dim", type=_positive_int)
    sampling.add_argument("--samples", type=_positive_int, default=100)
    sampling.add_argument("--seed", type=int, default=42)

    def fmt_option(p, default):
        p.add_argument("--format", choices=("json", "csv", "text"), default=default)

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("table", parents=[common, point], help="derivatives of H and the invariants at (alpha, beta)")
    fmt_option(p, "text")
    p.set_defaults(func=cmd_table)
    p = sub.add_parser("invariants", parents=[common, point], help="the nine invariants at (alpha, beta)")
    fmt_option(p, "text")
    p.set_defaults(func=cmd_invariants)
    p = sub.add_parser("tensors", parents=[common], help="g^ij, g_ij, C^ijk and diagnostics at a point")
    p.add_argument("--spec", help="manifold-spec JSON file")
    p.add_argument("--x", type=float, nargs="+", help="base point (default: origin)")
    p.add_argument("--y", type=float, nargs="+", help="momentum components y_i")
    fmt_option(p, "text")
    p.set_defaults(func=cmd_tensors)
    p = sub.add_parser("verify", parents=[common, sampling], help="run the identity suite")
    p.add_argument("--tol", type=_positive_float, default=1e-9)
    fmt_option(p, "json")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("sample", parents=[common, sampling], help="seeded admissible (x, y) samples")
    fmt_option(p, "csv")
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
