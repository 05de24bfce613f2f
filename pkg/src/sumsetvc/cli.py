"""Command-line front end.

Every library operation is reachable from a subcommand (see
OPERATION_COVERAGE). Reports are JSON by default with a fixed field order;
content digests cover everything except the optional timing field, and
timing is only recorded under --timings so that repeated runs with the same
flags and inputs produce byte-identical output. Progress for long scans
goes to standard error; standard output stays machine-clean.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time

import jsonschema

from . import __version__
from .clp import (
    diagonal_slice_rank_bounds,
    reconstruction_matches,
    slice_decompose,
    sum_tensor,
    verify_clp_bound,
)
from .errors import ParameterError, SumsetVCError
from .families import (
    FamilyKind,
    PointSet,
    embed_01,
    family_from_points,
    format_family_text,
    generate_family,
    is_prime,
    k_fold_sumset,
    pairwise_family,
    parse_family_text,
)
from .interpolation import (
    PartialFunction,
    deg_on_set,
    find_unshattered_witness,
    int_deg,
    represent_monomial,
)
from .polynomials import ReducedPolynomial, indicator_of_zero, monomial_count, random_polynomial
from .sampling import SplitMix64
from .vc import shattered_sets
from .verify import (
    TheoremId,
    counterexample_demo,
    exhaustive_scan,
    random_scan,
    search_open_question,
)

# operation name -> subcommand that reaches it (enumerated by a coverage test)
OPERATION_COVERAGE = {
    "binom_sum": "demo-counterexample",
    "pairwise_family": "family-op",
    "k_fold_sumset": "family-op",
    "embed_01": "family-op",
    "generate_family": "gen-family",
    "is_shattered": "vcdim",
    "shattered_sets": "vcdim",
    "vc_dim": "vcdim",
    "monomial_count": "clp-rank",
    "monomial_basis": "intdeg",
    "evaluation_matrix": "intdeg",
    "rank": "clp-rank",
    "deg_on_set": "intdeg",
    "int_deg": "intdeg",
    "find_unshattered_witness": "vcdim",
    "represent_monomial": "vcdim",
    "clp_matrix": "clp-rank",
    "verify_clp_bound": "clp-rank",
    "slice_decompose": "slice-decompose",
    "sum_tensor": "slice-decompose",
    "diagonal_slice_rank_bounds": "slice-decompose",
    "check_instance": "verify",
    "exhaustive_scan": "verify",
    "random_scan": "verify",
    "counterexample_demo": "demo-counterexample",
    "search_open_question": "search",
    "report_schema": "verify",
}


def report_schema() -> dict:
    """The versioned JSON schema every verification report validates against."""
    return {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "sumsetvc verification report",
        "version": __version__,
        "type": "object",
        "required": [
            "tool_version",
            "command_echo",
            "theorem",
            "parameters",
            "seed",
            "instances_checked",
            "violations",
            "extremes",
            "timing_ms",
            "content_digest",
        ],
        "properties": {
            "tool_version": {"type": "string"},
            "command_echo": {"type": "array", "items": {"type": "string"}},
            "theorem": {"type": "string"},
            "parameters": {"type": "object"},
            "seed": {"type": ["integer", "null"]},
            "instances_checked": {"type": "integer", "minimum": 0},
            "violations": {"type": "array"},
            "extremes": {"type": ["object", "null"]},
            "timing_ms": {"type": ["number", "null"]},
            "content_digest": {"type": "string"},
        },
        "additionalProperties": False,
    }


def _digest(core: dict) -> str:
    return hashlib.sha256(
        json.dumps(core, separators=(",", ":"), ensure_ascii=True).encode()
    ).hexdigest()


def _verify_envelope(command_echo, theorem, parameters, seed, report, timing_ms):
    core = {
        "tool_version": __version__,
        "command_echo": list(command_echo),
        "theorem": theorem,
        "parameters": parameters,
        "seed": seed,
        "instances_checked": report.instances_checked,
        "violations": report.violations,
        "extremes": report.extremes,
    }
    doc = dict(core)
    doc["timing_ms"] = timing_ms
    doc["content_digest"] = _digest(core)
    return doc


def _simple_envelope(command_echo, payload: dict, timing_ms=None) -> dict:
    core = {"tool_version": __version__, "command_echo": list(command_echo)}
    core.update(payload)
    doc = dict(core)
    doc["timing_ms"] = timing_ms
    doc["content_digest"] = _digest(core)
    return doc


def _write_output(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", newline="\n") as fh:
            fh.write(text)


def _emit_json(doc: dict, out_path: str | None) -> None:
    _write_output(json.dumps(doc, indent=2) + "\n", out_path)


def _csv_text(header: list[str], rows: list[list], comment: str | None = None) -> str:
    buf = io.StringIO()
    if comment:
        buf.write(f"# {comment}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return buf.getvalue()


def _read_family_file(path: str) -> PointSet:
    with open(path) as fh:
        return parse_family_text(fh.read())


def _read_binary_family(path: str):
    points = _read_family_file(path)
    if points.modulus != 2:
        raise ParameterError(f"{path}: this subcommand needs a p=2 family file")
    return family_from_points(points)


def _load_polynomial(path: str) -> ReducedPolynomial:
    with open(path) as fh:
        data = json.load(fh)
    try:
        return ReducedPolynomial.from_term_list(int(data["p"]), int(data["n"]), data["terms"])
    except (KeyError, TypeError):
        raise ParameterError(
            f"{path}: expected a JSON object with fields p, n, terms"
        ) from None


def _parse_elements(spec: str, n: int) -> int:
    mask = 0
    for piece in spec.split(","):
        try:
            elem = int(piece)
        except ValueError:
            raise ParameterError(f"bad ground element {piece!r}") from None
        if not 1 <= elem <= n:
            raise ParameterError(f"ground element {elem} out of range 1..{n}")
        mask |= 1 << (elem - 1)
    return mask


# --- subcommand handlers ---------------------------------------------------


def _handle_gen_family(args) -> int:
    if args.kind in ("lowweight", "highweight"):
        if args.d is None:
            raise ParameterError(f"--kind {args.kind} requires --d")
        kind = FamilyKind(args.kind, weight=args.d)
    elif args.kind == "powerset":
        kind = FamilyKind.powerset()
    else:
        if args.size is None:
            raise ParameterError("--kind random requires --size")
        kind = FamilyKind.random(args.size, args.seed)
    family = generate_family(args.n, kind)
    _write_output(format_family_text(embed_01(family, 2)), args.out)
    return 0


def _handle_vcdim(args) -> int:
    family = _read_binary_family(args.infile)
    if args.witness is not None:
        mask = _parse_elements(args.witness, family.ground_size)
        pattern = find_unshattered_witness(family, mask)
        _emit_json({str(k): v for k, v in sorted(pattern.items())}, args.out)
        return 0
    if args.represent is not None:
        mask = _parse_elements(args.represent, family.ground_size)
        poly = represent_monomial(family, mask)
        _emit_json({"p": 2, "n": poly.dimension, "terms": poly.to_term_list()}, args.out)
        return 0
    report = shattered_sets(family)
    if args.report is not None:
        payload = {
            "family_size": report.family_size,
            "vc_dim": report.vc_dim,
            "shattered_sets_by_level": [list(level) for level in report.shattered_sets_by_level],
        }
        _emit_json(_simple_envelope(args.command_echo, payload), args.report)
    _write_output(f"{report.vc_dim}\n", args.out)
    return 0


def _handle_intdeg(args) -> int:
    points = _read_family_file(args.infile)
    if args.values is not None:
        p = points.modulus
        if len(args.values) != len(points.points):
            raise ParameterError(
                f"--values has {len(args.values)} digits for {len(points.points)} domain points"
            )
        values = []
        for ch in args.values:
            if not ch.isdigit() or int(ch) >= p:
                raise ParameterError(f"value digit {ch!r} out of range for p={p}")
            values.append(int(ch))
        result = deg_on_set(PartialFunction(points, tuple(values)))
    else:
        result = int_deg(points)
    _write_output(f"{result}\n", args.out)
    return 0


def _handle_family_op(args) -> int:
    points = _read_family_file(args.infile)
    if args.op in ("sym-diff", "intersect", "union"):
        fam_a = _read_binary_family(args.infile)
        fam_b = _read_binary_family(args.in2) if args.in2 else fam_a
        result = pairwise_family(fam_a, fam_b, args.op.replace("-", "_"))
        _write_output(format_family_text(embed_01(result, 2)), args.out)
        return 0
    if args.op == "sumset":
        if args.k is None:
            raise ParameterError("--op sumset requires --k")
        _write_output(format_family_text(k_fold_sumset(points, args.k)), args.out)
        return 0
    # embed
    if args.p is None:
        raise ParameterError("--op embed requires --p")
    family = _read_binary_family(args.infile)
    _write_output(format_family_text(embed_01(family, args.p)), args.out)
    return 0


def _resolve_polynomial(args) -> ReducedPolynomial:
    if args.in_poly is not None:
        return _load_polynomial(args.in_poly)
    if args.n is None or args.d is None:
        raise ParameterError("either --in-poly or both --n and --d are required")
    if not is_prime(args.p):
        raise ParameterError(f"modulus must be prime, got {args.p}")
    return random_polynomial(args.p, args.n, args.d, SplitMix64(args.seed))


def _handle_clp_rank(args) -> int:
    poly = _resolve_polynomial(args)
    report = verify_clp_bound(poly, point_limit=args.point_guard)
    payload = {
        "p": poly.modulus,
        "n": poly.dimension,
        "degree": report.degree,
        "rank": report.rank,
        "bound": report.bound,
        "ok": report.ok,
    }
    doc = _simple_envelope(args.command_echo, payload)
    if args.format == "text":
        _write_output(
            f"degree={report.degree} rank={report.rank} bound={report.bound} ok={report.ok}\n",
            args.out,
        )
    else:
        _emit_json(doc, args.out)
    return 0 if report.ok else 1


def _handle_slice_decompose(args) -> int:
    if args.tensor_family is not None:
        points = _read_family_file(args.tensor_family)
        if args.in_poly is not None:
            poly = _load_polynomial(args.in_poly)
        else:
            poly = indicator_of_zero(points.modulus, points.dimension)
        tensor = sum_tensor(poly, points, args.k, entry_limit=args.entry_guard)
        bounds = diagonal_slice_rank_bounds(tensor)
        payload = {
            "p": tensor.modulus,
            "arity": tensor.arity,
            "shape": list(tensor.values.shape),
            "is_diagonal": bounds.is_diagonal,
            "lower_bound": bounds.lower_bound,
            "nonzero_diagonal_count": bounds.nonzero_diagonal_count,
            "tensor_digest": tensor.content_digest(),
        }
        _emit_json(_simple_envelope(args.command_echo, payload), args.out)
        return 0
    poly = _resolve_polynomial(args)
    dec = slice_decompose(poly, args.k, grid_limit=args.grid_guard)
    bound = args.k * monomial_count(poly.modulus, poly.dimension, poly.degree() // args.k)
    recon = reconstruction_matches(dec, poly, grid_limit=args.grid_guard)
    payload = {
        "p": poly.modulus,
        "n": poly.dimension,
        "arity": args.k,
        "degree": poly.degree(),
        "term_count": dec.term_count(),
        "bound": bound,
        "within_bound": dec.term_count() <= bound,
        "reconstruction_ok": recon,
        "terms": [
            {
                "axis": term.axis,
                "axis_monomial": list(term.axis_monomial),
                "residual": term.residual.to_term_list(),
            }
            for term in dec.terms
        ],
    }
    _emit_json(_simple_envelope(args.command_echo, payload), args.out)
    return 0 if recon and dec.term_count() <= bound else 1


def _verify_csv(doc: dict) -> str:
    params = doc["parameters"]
    ex = doc["extremes"] or {}
    header = [
        "theorem",
        "n",
        "p",
        "mode",
        "samples",
        "seed",
        "instances_checked",
        "violation_count",
        "extreme_lhs",
        "extreme_rhs",
        "extreme_ratio",
    ]
    row = [
        doc["theorem"],
        params.get("n"),
        params.get("p"),
        params.get("mode"),
        params.get("samples"),
        doc["seed"],
        doc["instances_checked"],
        len(doc["violations"]),
        ex.get("lhs"),
        ex.get("rhs"),
        ex.get("ratio"),
    ]
    return _csv_text(header, [row])


def _handle_verify(args) -> int:
    if args.emit_schema:
        _emit_json(report_schema(), args.out)
        return 0
    if args.replay is not None:
        with open(args.replay) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                print(f"error: {args.replay}: {exc}", file=sys.stderr)
                return 2
        try:
            jsonschema.validate(doc, report_schema())
        except jsonschema.ValidationError as exc:
            print(f"error: {args.replay}: {exc.message}", file=sys.stderr)
            return 2
        if doc["violations"]:
            print(
                f"{len(doc['violations'])} violation(s) recorded in {args.replay}",
                file=sys.stderr,
            )
            return 1
        return 0
    if args.theorem is None or args.n is None:
        raise ParameterError("verify requires --theorem and --n")
    progress = None
    if args.progress:
        def progress(done, total):
            print(f"progress {done}/{total if total is not None else '?'}", file=sys.stderr)

    started = time.perf_counter()
    if args.mode == "exhaustive":
        report = exhaustive_scan(args.theorem, args.n, args.p, workers=args.workers, progress=progress)
    else:
        report = random_scan(
            args.theorem,
            args.n,
            args.p,
            samples=args.samples,
            seed=args.seed,
            workers=args.workers,
            progress=progress,
        )
    timing_ms = (time.perf_counter() - started) * 1000.0 if args.timings else None
    doc = _verify_envelope(
        args.command_echo,
        report.theorem,
        report.parameters,
        report.seed,
        report,
        timing_ms,
    )
    if args.format == "csv":
        _write_output(_verify_csv(doc), args.out)
    else:
        _emit_json(doc, args.out)
    return 0 if report.ok else 1


def _handle_demo(args) -> int:
    rep = counterexample_demo(args.op, args.n, args.d)
    payload = {
        "op": rep.op,
        "n": rep.n,
        "d": rep.d,
        "family_size": rep.family_size,
        "vc_star": rep.vc_star,
        "half_bound": rep.half_bound,
        "witness": rep.witness,
    }
    if args.format == "csv":
        header = ["op", "n", "d", "family_size", "vc_star", "half_bound", "witness"]
        _write_output(_csv_text(header, [[payload[h] for h in header]]), args.out)
    elif args.format == "text":
        _write_output(
            f"op={rep.op} n={rep.n} d={rep.d} family_size={rep.family_size} "
            f"vc_star={rep.vc_star} half_bound={rep.half_bound} witness={rep.witness}\n",
            args.out,
        )
    else:
        _emit_json(_simple_envelope(args.command_echo, payload), args.out)
    return 0 if rep.witness else 1


def _handle_search(args) -> int:
    table = search_open_question(
        args.question, args.n, args.d, args.mode, budget=args.budget, seed=args.seed
    )
    rows = [
        {
            "question": row.question,
            "n": row.n,
            "d": row.d,
            "mode": row.mode,
            "best_size": row.best_size,
            "binom_bound": row.binom_bound,
            "half_bound": row.half_bound,
            "certificate": list(row.certificate),
            "instances_examined": row.instances_examined,
        }
        for row in table.rows
    ]
    if args.format == "csv":
        header = [
            "question",
            "n",
            "d",
            "mode",
            "best_size",
            "binom_bound",
            "half_bound",
            "instances_examined",
            "certificate",
        ]
        csv_rows = [
            [
                r["question"],
                r["n"],
                r["d"],
                r["mode"],
                r["best_size"],
                r["binom_bound"],
                r["half_bound"],
                r["instances_examined"],
                ";".join(str(m) for m in r["certificate"]),
            ]
            for r in rows
        ]
        _write_output(_csv_text(header, csv_rows, comment=table.note), args.out)
    else:
        _emit_json(_simple_envelope(args.command_echo, {"note": table.note, "rows": rows}), args.out)
    return 0


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumsetvc",
        description="Exact VC-dimension, interpolation-degree and slice-rank computations "
        "for sumsets of set families, with theorem verification harnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-family", help="generate a named family and write the text format")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--kind", choices=["lowweight", "highweight", "powerset", "random"], required=True)
    gen.add_argument("--d", type=int, default=None, help="weight bound for lowweight/highweight")
    gen.add_argument("--size", type=int, default=None, help="family size for random")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=None)
    gen.set_defaults(handler=_handle_gen_family)

    vcd = sub.add_parser("vcdim", help="VC dimension of a p=2 family file")
    vcd.add_argument("--in", dest="infile", required=True)
    vcd.add_argument("--report", default=None, help="also write the full shattering report JSON")
    vcd.add_argument("--witness", default=None, metavar="ELEMS",
                     help="comma-separated ground elements: print the absent pattern on that set")
    vcd.add_argument("--represent", default=None, metavar="ELEMS",
                     help="comma-separated ground elements: print a low-degree polynomial equal "
                     "to that monomial on the family")
    vcd.add_argument("--out", default=None)
    vcd.set_defaults(handler=_handle_vcdim)

    ideg = sub.add_parser("intdeg", help="interpolation degree of a family file over its modulus")
    ideg.add_argument("--in", dest="infile", required=True)
    ideg.add_argument("--values", default=None,
                      help="digit string aligned with the canonical (ascending) domain order: "
                      "minimal representing degree of that partial function instead")
    ideg.add_argument("--out", default=None)
    ideg.set_defaults(handler=_handle_intdeg)

    fop = sub.add_parser("family-op", help="pairwise set operations, sumsets and embeddings")
    fop.add_argument("--op", choices=["sym-diff", "intersect", "union", "sumset", "embed"], required=True)
    fop.add_argument("--in", dest="infile", required=True)
    fop.add_argument("--in2", default=None, help="second operand (defaults to the first)")
    fop.add_argument("--k", type=int, default=None, help="fold count for sumset")
    fop.add_argument("--p", type=int, default=None, help="target modulus for embed")
    fop.add_argument("--out", default=None)
    fop.set_defaults(handler=_handle_family_op)

    clp = sub.add_parser("clp-rank", help="rank of the sum matrix M[x,y] = P(x+y) vs its bound")
    clp.add_argument("--p", type=int, default=2)
    clp.add_argument("--n", type=int, default=None)
    clp.add_argument("--d", type=int, default=None, help="degree bound for a random polynomial")
    clp.add_argument("--seed", type=int, default=0)
    clp.add_argument("--in-poly", default=None, help="JSON polynomial file instead of random")
    clp.add_argument("--point-guard", type=int, default=4096, help="maximum p**n (matrix side)")
    clp.add_argument("--format", choices=["json", "text"], default="json")
    clp.add_argument("--out", default=None)
    clp.set_defaults(handler=_handle_clp_rank)

    sld = sub.add_parser("slice-decompose",
                         help="explicit slice decomposition of f(X^1+...+X^k), or sum-tensor "
                         "diagonality when --tensor-family is given")
    sld.add_argument("--p", type=int, default=2)
    sld.add_argument("--n", type=int, default=None)
    sld.add_argument("--k", type=int, required=True)
    sld.add_argument("--d", type=int, default=None)
    sld.add_argument("--seed", type=int, default=0)
    sld.add_argument("--in-poly", default=None)
    sld.add_argument("--tensor-family", default=None,
                     help="family file: build the k-fold sum tensor over it (default generator: "
                     "indicator of the zero vector)")
    sld.add_argument("--grid-guard", type=int, default=1 << 24)
    sld.add_argument("--entry-guard", type=int, default=1 << 24)
    sld.add_argument("--out", default=None)
    sld.set_defaults(handler=_handle_slice_decompose)

    ver = sub.add_parser("verify", help="exhaustive or seeded-random theorem scans")
    ver.add_argument("--theorem", choices=[t.value for t in TheoremId], default=None)
    ver.add_argument("--n", type=int, default=None)
    ver.add_argument("--p", type=int, default=None)
    ver.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    ver.add_argument("--samples", type=int, default=100)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--workers", type=int, default=1,
                     help="worker processes for chunked scans (deterministic merge)")
    ver.add_argument("--timings", action="store_true",
                     help="record wall time in the report (breaks byte-identical reruns)")
    ver.add_argument("--progress", action=argparse.BooleanOptionalAction, default=True,
                     help="progress lines on standard error")
    ver.add_argument("--emit-schema", action="store_true",
                     help="print the report JSON schema and exit")
    ver.add_argument("--replay", default=None,
                     help="validate a saved report and exit 1 if it records violations")
    ver.add_argument("--format", choices=["json", "csv"], default="json")
    ver.add_argument("--out", default=None)
    ver.set_defaults(handler=_handle_verify)

    demo = sub.add_parser("demo-counterexample",
                          help="the weight-bounded construction beating the halved bound for "
                          "intersection/union")
    demo.add_argument("--op", choices=["intersect", "union"], required=True)
    demo.add_argument("--n", type=int, required=True)
    demo.add_argument("--d", type=int, required=True)
    demo.add_argument("--format", choices=["json", "csv", "text"], default="json")
    demo.add_argument("--out", default=None)
    demo.set_defaults(handler=_handle_demo)

    sch = sub.add_parser("search", help="finite-evidence search for the open questions")
    sch.add_argument("--question", choices=["q1", "q2"], required=True)
    sch.add_argument("--n", type=int, required=True)
    sch.add_argument("--d", type=int, required=True)
    sch.add_argument("--mode", choices=["exhaustive", "heuristic"], default="exhaustive")
    sch.add_argument("--budget", type=int, default=5000)
    sch.add_argument("--seed", type=int, default=0)
    sch.add_argument("--format", choices=["json", "csv"], default="json")
    sch.add_argument("--out", default=None)
    sch.set_defaults(handler=_handle_search)

    return parser


def run(argv=None) -> int:
    """Parse and execute; exit 0 = ok, 1 = theorem violation, 2 = usage/parse error."""
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    args.command_echo = list(argv)
    try:
        return args.handler(args)
    except (SumsetVCError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
