"""Command-line front end.

Exit status: 0 on success (or a passing verification), 1 when verification
finds a counterexample or a file cannot be written, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .analysis import (
    StructureError,
    classify,
    decompose_blocks,
    block_boundaries_check,
    delete_to,
    deleted_note_positions,
    step_label,
    step_profile,
    three_step_witness,
    verify_main_theorem,
)
from .contfrac import CapExceededError, cf_log2_3, convergents, is_semiconvergent_denominator
from .exact_arith import Monomial, format_cents
from .scale import PythagoreanScale, build_scale, step_sequence

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

FORMATS = ("table", "json", "csv", "scl")
CSV_HEADER = "index,pow3,pow2,cents,step_pow3,step_pow2,step_cents"


def _ratio(m: Monomial) -> str:
    return f"{float(m):.6f}"


def _labeller(n: int):
    c = classify(n)
    basis = c.basis
    if basis is None:
        return lambda m: ""
    return lambda m: step_label(m, basis, c.scale_type)


def render_scl(scale: PythagoreanScale) -> str:
    lines = [
        f"! pythagorean-{scale.n}.scl",
        "!",
        f"Pythagorean {scale.n}-note scale (3^b/2^a)",
        str(scale.n),
        "!",
    ]
    lines += [format_cents(m) for m in scale.pitches]
    return "\n".join(lines) + "\n"


def render_csv(scale: PythagoreanScale) -> str:
    steps = step_sequence(scale)
    out = [CSV_HEADER]
    for j, note in enumerate(scale.notes):
        row = [str(j), str(note.pow3), str(note.pow2), format_cents(note)]
        if j < len(steps):
            s = steps[j]
            row += [str(s.pow3), str(s.pow2), format_cents(s)]
        else:
            row += ["", "", ""]
        out.append(",".join(row))
    return "\n".join(out) + "\n"


def scale_payload(scale: PythagoreanScale) -> dict:
    steps = step_sequence(scale)
    label = _labeller(scale.n)
    c = classify(scale.n)
    return {
        "n": scale.n,
        "notes": [{"pow3": m.pow3, "pow2": m.pow2, "cents": float(format_cents(m))} for m in scale.notes],
        "steps": [
            {"pow3": s.pow3, "pow2": s.pow2, "cents": float(format_cents(s)), "label": label(s)} for s in steps
        ],
        "classification": {
            "k": len(set(steps)),
            "type": c.scale_type.value if c.scale_type else None,
            "basis_i": c.i,
        },
    }


def render_json(scale: PythagoreanScale) -> str:
    return json.dumps(scale_payload(scale), indent=2) + "\n"


def _table(rows: list[list[str]], header: list[str]) -> str:
    widths = [max(len(r[c]) for r in rows + [header]) for c in range(len(header))]
    fmt = lambda r: "  ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip()
    return "\n".join([fmt(header), fmt(["-" * w for w in widths])] + [fmt(r) for r in rows]) + "\n"


def render_scale_table(scale: PythagoreanScale) -> str:
    steps = step_sequence(scale)
    label = _labeller(scale.n)
    c = classify(scale.n)
    k = len(set(steps))
    head = f"{scale.n}-note Pythagorean scale: {k}-step"
    if c.i is not None:
        head += f", type {c.scale_type.value} context (i={c.i}, k={c.k})"
    rows = []
    for j, note in enumerate(scale.notes):
        row = [str(j), str(note.pow3), str(note.pow2), format_cents(note), _ratio(note)]
        if j < len(steps):
            s = steps[j]
            row += [str(s), _ratio(s), format_cents(s), label(s)]
        else:
            row += ["", "", "", ""]
        rows.append(row)
    header = ["index", "pow3", "pow2", "cents", "ratio", "step", "step_ratio", "step_cents", "label"]
    return head + "\n" + _table(rows, header)


def cmd_cf(args: argparse.Namespace) -> int:
    cf = cf_log2_3(args.terms)
    rows = [[str(c.index), str(c.numerator), str(c.denominator), str(cf[c.index])] for c in convergents(cf)[1:]]
    print("log2(3) = [" + str(cf[0]) + "; " + ", ".join(map(str, cf.terms[1:])) + "]")
    sys.stdout.write(_table(rows, ["i", "a_i", "b_i", "k_i"]))
    return EXIT_OK


def cmd_scale(args: argparse.Namespace) -> int:
    scale = build_scale(args.n)
    render = {"table": render_scale_table, "json": render_json, "csv": render_csv, "scl": render_scl}[args.format]
    sys.stdout.write(render(scale))
    return EXIT_OK


def cmd_steps(args: argparse.Namespace) -> int:
    prof = step_profile(args.n)
    label = _labeller(args.n)
    print(f"n={args.n}: {prof.k}-step")
    rows = [[str(m), str(mult), _ratio(m), format_cents(m), label(m)] for m, mult in prof.distinct_steps]
    sys.stdout.write(_table(rows, ["step", "count", "ratio", "cents", "label"]))
    if args.n >= 2:
        witness = is_semiconvergent_denominator(args.n)
        if witness is not None:
            print(f"semi-convergent denominator: i={witness[0]}, k={witness[1]}")
        else:
            triple = three_step_witness(args.n)
            assert triple is not None
            print("not a semi-convergent denominator; predicted steps " + ", ".join(label(m) for m in triple))
    return EXIT_OK


def cmd_blocks(args: argparse.Namespace) -> int:
    dec = decompose_blocks(args.i)
    n = sum(len(b) for b in dec.blocks)
    print(f"i={dec.i}: {n}-note scale, type {dec.scale_type.value}, {dec.block_count} blocks")
    print(f"I = {dec.basis.I}  J = {dec.basis.J}")
    for j, pattern in enumerate(dec.patterns()):
        print(f"  block {j + 1}: ({', '.join(pattern)})")
    ok = block_boundaries_check(args.i)
    print(f"block boundaries = {dec.block_count}-note scale: {'yes' if ok else 'NO'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_delete(args: argparse.Namespace) -> int:
    scale = delete_to(args.i, args.k)
    print(f"i={args.i}, k={args.k}: deletion gives the {scale.n}-note scale")
    if args.k >= 1:
        ok = deleted_note_positions(args.i, args.k)
        print(f"deleted notes sit next to each J step: {'yes' if ok else 'NO'}")
        if not ok:
            return EXIT_FAIL
    sys.stdout.write(render_scale_table(scale))
    return EXIT_OK


def _print_progress(rec) -> None:
    mark = "ok" if rec.consistent else "COUNTEREXAMPLE"
    print(f"n={rec.n} k={rec.k} witness={rec.witness} {mark}", file=sys.stderr)


def cmd_verify(args: argparse.Namespace) -> int:
    progress = _print_progress if sys.stderr.isatty() else None
    report = verify_main_theorem(args.max, jobs=args.jobs, progress=progress)
    print(f"range: 2..{args.max}")
    print("2-step: " + ", ".join(map(str, report.two_step)))
    print(f"3-step: {len(report.three_step)} sizes")
    for rec in report.counterexamples:
        print(f"counterexample: n={rec.n} k={rec.k} witness={rec.witness}")
    print("PASS" if report.verdict else "FAIL")
    return EXIT_OK if report.verdict else EXIT_FAIL


def cmd_export(args: argparse.Namespace) -> int:
    text = render_scl(build_scale(args.n))
    path = Path(args.out)
    try:
        with io.open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"pythagorion: error: cannot write {path}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_FAIL
    print(f"wrote {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pythagorion", description="Pythagorean scales and the 2-step property.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("cf", help="continued fraction of log2(3) and its convergents")
    s.add_argument("--terms", type=int, default=10)
    s.set_defaults(func=cmd_cf)

    s = sub.add_parser("scale", help="notes and steps of the n-note scale")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--format", choices=FORMATS, default="table")
    s.set_defaults(func=cmd_scale)

    s = sub.add_parser("steps", help="distinct step sizes of the n-note scale")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_steps)

    s = sub.add_parser("blocks", help="block structure of the b_i-note scale")
    s.add_argument("--i", type=int, required=True)
    s.set_defaults(func=cmd_blocks)

    s = sub.add_parser("delete", help="delete notes from the b_i-note scale")
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_delete)

    s = sub.add_parser("verify", help="check 2-step <=> semi-convergent denominator up to N")
    s.add_argument("--max", type=int, default=1000)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("export", help="write the n-note scale as a .scl tuning file")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_export)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.func(args)
    except (CapExceededError, ValueError) as exc:
        print(f"pythagorion: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StructureError as exc:
        print(f"pythagorion: structure check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
