"""Command-line front end.

Subcommands: certify-hap, semigroup, freeprod, schoenberg, cocycle,
buildgen.  Every run terminates with exit code 0 (all conditions PASS),
1 (at least one FAIL) or 2 (input error), prints a deterministic plain-text
report to stdout and optionally writes the machine-readable report with
``--json PATH``.  Reports carry a content digest of the (canonicalized)
input, the truncation they were computed on, and every numeric default in
use, so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cfree, classical, genfun, serialize
from .cocycle import check_proper_cocycle, factor_from_generator
from .fourier import MatrixFamily, check_hap_sequence
from .irreps import free_product_table
from .reports import (CertificationReport, ConditionVerdict, Witness, __version__,
                      content_digest, fmt)
from .serialize import SchemaError

DEFAULT_TOL = 1e-9
DEFAULT_EPS_DECAY = 1e-3
DEFAULT_MAX_WORD_LENGTH = 3


class InputError(Exception):
    """Anything wrong with the input: exit code 2."""


def _parse_float_list(text: str, what: str) -> list[float]:
    try:
        values = [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise InputError(f"{what}: expected comma-separated numbers, got {text!r}") from None
    if not values:
        raise InputError(f"{what}: empty list")
    return values


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise InputError(f"{what}: expected comma-separated integers, got {text!r}") from None
    if not values:
        raise InputError(f"{what}: empty list")
    return values


def _load(path: str):
    try:
        obj = serialize.load_json(path)
    except (OSError, SchemaError) as exc:
        raise InputError(str(exc)) from None
    return obj, content_digest(obj)


def _default_conv_tols(n: int) -> list[float]:
    return [2.0 ** -(i + 1) for i in range(n)]


def _family_sequence(table, objs, where: str) -> list[MatrixFamily]:
    if not isinstance(objs, list) or not objs:
        raise InputError(f"{where}: 'families' must be a nonempty list")
    out = []
    for i, fam in enumerate(objs):
        if not isinstance(fam, dict) or "blocks" not in fam:
            raise InputError(f"{where}: family {i} must be an object with 'blocks'")
        try:
            blocks = serialize.blocks_from_obj(table, fam["blocks"], f"{where}[{i}]")
            out.append(MatrixFamily(table, blocks,
                                    normalized=bool(fam.get("normalized", True))))
        except (SchemaError, ValueError, KeyError) as exc:
            raise InputError(f"{where}[{i}]: {exc}") from None
    return out


def _emit(report: CertificationReport, args) -> int:
    if not args.quiet:
        sys.stdout.write(report.to_text())
    if args.json:
        Path(args.json).write_text(
            json.dumps(report.to_obj(), sort_keys=True, indent=2) + "\n")
    return report.exit_code


def cmd_certify_hap(args) -> int:
    obj, digest = _load(args.input)
    if not isinstance(obj, dict) or "table" not in obj or "families" not in obj:
        raise InputError(f"{args.input}: expected an object with 'table' and 'families'")
    try:
        table = serialize.table_from_obj(obj["table"], "table")
    except SchemaError as exc:
        raise InputError(str(exc)) from None
    families = _family_sequence(table, obj["families"], "families")
    eps_decay = args.eps_decay if args.eps_decay is not None else \
        float(obj.get("eps_decay", DEFAULT_EPS_DECAY))
    if args.conv_tols is not None:
        conv_tols = _parse_float_list(args.conv_tols, "--conv-tols")
    elif "conv_tols" in obj:
        conv_tols = [float(x) for x in obj["conv_tols"]]
    else:
        conv_tols = _default_conv_tols(len(families))
    k_values = None
    if args.k_values is not None:
        k_values = _parse_int_list(args.k_values, "--k-values")
    elif "k_values" in obj:
        k_values = [int(k) for k in obj["k_values"]]
    if len(conv_tols) != len(families) or (k_values and len(k_values) != len(families)):
        raise InputError("conv_tols / k_values must align with the family list")
    report = check_hap_sequence(families, eps_decay, conv_tols, k_values=k_values,
                                tol=args.tol, input_digest=digest)
    return _emit(report, args)


def cmd_semigroup(args) -> int:
    obj, digest = _load(args.gen)
    try:
        L = serialize.generator_from_obj(obj)
    except SchemaError as exc:
        raise InputError(str(exc)) from None
    ts = _parse_float_list(args.t, "--t")
    if any(t < 0 for t in ts):
        raise InputError("--t: times must be >= 0")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for t in ts:
        family = genfun.semigroup_at(L, t)
        path = outdir / f"semigroup_t{t!r}.json"
        serialize.dump_json(serialize.family_to_obj(family), path)
        written.append(path.name)
    report = CertificationReport(
        command="semigroup",
        input_digest=digest,
        truncation=f"{len(L.table)} labels",
        tolerances=(("tol", args.tol),),
        conditions=(ConditionVerdict(
            name="evaluation", passed=True,
            summary=f"{len(written)} semigroup families written"),),
        notes=tuple(f"wrote {name}" for name in written)
        + (f"t values: {', '.join(fmt(t) for t in ts)}",),
    )
    return _emit(report, args)


def _factor_from_config(entry, where: str):
    """Returns (table, stage -> family sequence builder input)."""
    if not isinstance(entry, dict):
        raise InputError(f"{where}: must be an object")
    if "group" in entry:
        try:
            spec = classical.parse_group(entry["group"])
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from None
        radius = entry.get("radius", 3)
        if not isinstance(radius, int) or radius < 0:
            raise InputError(f"{where}: 'radius' must be a nonnegative integer")
        L = classical.length_functional(spec, radius)
        return L.table, ("group", L)
    if "table" in entry and "families" in entry:
        try:
            table = serialize.table_from_obj(entry["table"], where + ".table")
        except SchemaError as exc:
            raise InputError(str(exc)) from None
        return table, ("families", entry["families"])
    raise InputError(f"{where}: needs either 'group' or 'table'+'families'")


def cmd_freeprod(args) -> int:
    obj, digest = _load(args.config)
    if not isinstance(obj, dict):
        raise InputError(f"{args.config}: expected a configuration object")
    if "k_values" not in obj:
        raise InputError(f"{args.config}: missing 'k_values'")
    k_values = [int(k) for k in obj["k_values"]]
    if not k_values or any(k < 1 for k in k_values):
        raise InputError("k_values must be positive integers")
    max_word_length = obj.get("max_word_length", DEFAULT_MAX_WORD_LENGTH)
    if not isinstance(max_word_length, int) or max_word_length < 0:
        raise InputError("max_word_length must be a nonnegative integer")
    eps_decay = float(obj.get("eps_decay", DEFAULT_EPS_DECAY))
    conv_tols = [float(x) for x in obj.get("conv_tols", _default_conv_tols(len(k_values)))]
    if len(conv_tols) != len(k_values):
        raise InputError("conv_tols must align with k_values")
    if "factor1" not in obj or "factor2" not in obj:
        raise InputError(f"{args.config}: missing factor data")

    tables_seqs = []
    for key in ("factor1", "factor2"):
        table, source = _factor_from_config(obj[key], key)
        if source[0] == "group":
            seq = [genfun.semigroup_at(source[1], 1.0 / k) for k in k_values]
        else:
            seq = _family_sequence(table, source[1], key + ".families")
            if len(seq) != len(k_values):
                raise InputError(f"{key}: families must align with k_values")
        tables_seqs.append((table, seq))
    (t1, seq1), (t2, seq2) = tables_seqs
    wp = free_product_table(t1, t2, max_word_length)
    try:
        if bool(obj.get("damp", False)):
            seq1 = cfree.damp_sequence(seq1, k_values)
            seq2 = cfree.damp_sequence(seq2, k_values)
        report = cfree.freeprod_hap_pipeline(seq1, seq2, wp, eps_decay, conv_tols,
                                             k_values, tol=args.tol, input_digest=digest)
    except (ValueError, KeyError) as exc:
        raise InputError(str(exc)) from None
    return _emit(report, args)


def cmd_schoenberg(args) -> int:
    try:
        spec = classical.parse_group(args.group)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.t <= 0:
        raise InputError("--t must be positive")
    if args.radius < 0:
        raise InputError("--radius must be >= 0")
    passed, min_eig = classical.schoenberg_check(spec, args.t, args.radius, tol=args.tol)
    n = len(classical.ball(spec, args.radius))
    digest = content_digest({"group": args.group, "t": args.t, "radius": args.radius})
    report = CertificationReport(
        command="schoenberg",
        input_digest=digest,
        truncation=f"ball of radius {args.radius}: {n} elements ({n}x{n} Gram matrix)",
        tolerances=(("tol", args.tol), ("t", args.t)),
        conditions=(ConditionVerdict(
            name="gram-positive-semidefinite", passed=passed,
            witnesses=(Witness(label="*", achieved=min_eig, threshold=-args.tol,
                               context="smallest eigenvalue"),),
            summary=f"exp(-t*length) kernel on the group {args.group}"),),
    )
    return _emit(report, args)


def cmd_cocycle(args) -> int:
    obj, digest = _load(args.gen)
    try:
        L = serialize.generator_from_obj(obj)
    except SchemaError as exc:
        raise InputError(str(exc)) from None
    if args.M <= 0:
        raise InputError("--M must be positive")
    truncation = f"{len(L.table)} labels"
    sym = genfun.check_symmetric(L, args.tol)
    conditions = [ConditionVerdict(
        name="symmetric", passed=sym.ok,
        witnesses=(Witness(label="*", achieved=sym.residual, threshold=args.tol,
                           context="largest Hermitian residual"),),
        summary="all blocks self-adjoint")]
    if sym.ok:
        pos = genfun.check_positive_blocks(L, args.tol)
        conditions.append(ConditionVerdict(
            name="positive-blocks", passed=pos.ok,
            witnesses=(Witness(label="*", achieved=pos.min_eigenvalue, threshold=-args.tol,
                               context="smallest block eigenvalue"),),
            summary="all blocks positive semidefinite"))
    notes = []
    if all(c.passed for c in conditions):
        c = factor_from_generator(L, tol=args.tol)
        out = Path(args.out) if args.out else Path(args.gen).with_suffix(".cocycle.json")
        serialize.dump_json(serialize.cocycle_to_obj(c), out)
        notes.append(f"wrote {out.name}")
        proper = check_proper_cocycle(c, args.M)
        exceptional = ", ".join(L.table.encode(lab) for lab, _ in proper.exceptional)
        conditions.append(ConditionVerdict(
            name="proper-at-level", passed=proper.proper_at_level,
            witnesses=tuple(Witness(label=L.table.encode(lab), achieved=low,
                                    threshold=args.M, context="min eigenvalue of (c*)c")
                            for lab, low in proper.exceptional),
            summary=(f"proper at level M={fmt(args.M)} (up to a truncation of {truncation}): "
                     f"{proper.certified_count} blocks certified >= M")))
        notes.append(f"exceptional set at M={fmt(args.M)}: "
                     + (f"{{{exceptional}}}" if exceptional else "{}"))
    report = CertificationReport(
        command="cocycle",
        input_digest=digest,
        truncation=truncation,
        tolerances=(("tol", args.tol), ("M", args.M)),
        conditions=tuple(conditions),
        notes=tuple(notes),
    )
    return _emit(report, args)


def cmd_buildgen(args) -> int:
    obj, digest = _load(args.input)
    if not isinstance(obj, dict) or "table" not in obj or "families" not in obj:
        raise InputError(f"{args.input}: expected an object with 'table' and 'families'")
    try:
        table = serialize.table_from_obj(obj["table"], "table")
    except SchemaError as exc:
        raise InputError(str(exc)) from None
    families = _family_sequence(table, obj["families"], "families")
    betas = obj.get("betas")
    eps = obj.get("eps")
    try:
        L, build = genfun.build_from_states(
            families,
            betas=[float(b) for b in betas] if betas is not None else None,
            eps=[float(e) for e in eps] if eps is not None else None,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = Path(args.out) if args.out else Path(args.input).with_suffix(".generator.json")
    serialize.dump_json(serialize.generator_to_obj(L), out)
    schedule = ", ".join(f"(beta={fmt(b)}, eps={fmt(e)})" for b, e in build.schedule)
    tail = "not available for this schedule" if build.tail_bound is None \
        else fmt(build.tail_bound)
    report = CertificationReport(
        command="buildgen",
        input_digest=digest,
        truncation=f"{len(table)} labels",
        tolerances=(("tol", args.tol),),
        conditions=(ConditionVerdict(
            name="epsilon-certificate", passed=not build.flagged,
            witnesses=tuple(Witness(label=table.encode(lab), achieved=float("inf"),
                                    threshold=0.0,
                                    context="no suffix of the schedule certifies this label")
                            for lab in build.flagged),
            summary="every label eventually meets ||I - block_n|| <= eps_n"),),
        notes=(f"wrote {out.name}",
               f"schedule: {schedule}",
               f"tail bound beyond supplied range: {tail}"),
    )
    return _emit(report, args)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="numeric comparison tolerance (default 1e-9)")
    common.add_argument("--json", metavar="PATH", default=None,
                        help="also write the machine-readable report here")
    common.add_argument("--quiet", action="store_true",
                        help="suppress the text report on stdout")

    parser = argparse.ArgumentParser(
        prog="hapkit",
        description="Desk-scale certification of blockwise Haagerup-property criteria")
    parser.add_argument("--version", action="version", version=f"hapkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify-hap", parents=[common],
                       help="check c0 decay and convergence to identity on a state sequence")
    p.add_argument("input", help="JSON file with 'table' and 'families'")
    p.add_argument("--eps-decay", type=float, default=None,
                   help=f"c0 threshold (default {DEFAULT_EPS_DECAY})")
    p.add_argument("--conv-tols", default=None,
                   help="comma-separated per-family convergence tolerances")
    p.add_argument("--k-values", default=None,
                   help="comma-separated damping stages; enables the exp(-1/k) bound")
    p.set_defaults(func=cmd_certify_hap)

    p = sub.add_parser("semigroup", parents=[common],
                       help="evaluate the semigroup of a generating functional")
    p.add_argument("gen", help="generator JSON file")
    p.add_argument("--t", required=True, help="comma-separated times, each >= 0")
    p.add_argument("--out", default=".", help="output directory (default .)")
    p.set_defaults(func=cmd_semigroup)

    p = sub.add_parser("freeprod", parents=[common],
                       help="run the free-product certification pipeline")
    p.add_argument("config", help="pipeline configuration JSON file")
    p.set_defaults(func=cmd_freeprod)

    p = sub.add_parser("schoenberg", parents=[common],
                       help="positive-definiteness of exp(-t*length) on a group ball")
    p.add_argument("--group", required=True, help='group spec, e.g. "F2", "Z3*Z4", "Z"')
    p.add_argument("--t", type=float, default=1.0, help="kernel decay rate (default 1)")
    p.add_argument("--radius", type=int, default=2, help="ball radius (default 2)")
    p.set_defaults(func=cmd_schoenberg)

    p = sub.add_parser("cocycle", parents=[common],
                       help="factor a cocycle out of a symmetric positive generator")
    p.add_argument("gen", help="generator JSON file")
    p.add_argument("--M", type=float, required=True, help="properness threshold")
    p.add_argument("--out", default=None,
                   help="cocycle output path (default <gen>.cocycle.json)")
    p.set_defaults(func=cmd_cocycle)

    p = sub.add_parser("buildgen", parents=[common],
                       help="assemble a generator as sum_n beta_n (counit - mu_n)")
    p.add_argument("input", help="JSON file with 'table', 'families' and optional schedule")
    p.add_argument("--out", default=None,
                   help="generator output path (default <input>.generator.json)")
    p.set_defaults(func=cmd_buildgen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
