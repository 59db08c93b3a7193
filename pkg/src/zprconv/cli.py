"""Command line front end: ``zprconv <subcommand> ...``.

Exit status is 0 on success, 1 when a verification check fails and 2 on
invalid input.  ``--machine`` switches every subcommand to a JSON document
carrying the same fields as the human-readable output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import io
from .code import ConvolutionalCode, decompose, is_free, p_encoder, standard_form
from .corpus import random_generator
from .dual import dual, orthogonal, verify_duality_identities
from .errors import FormatError, NotConstant, ZprError
from .oracle import block_code_checks, fits_oracle
from .matrix import full_row_rank
from .poly import laurent_expand
from .pstructure import is_p_generator_sequence, is_p_linearly_independent
from .ring import RingContext


def _poly_lists(rows):
    return [[x.to_list() for x in row] for row in rows]


def _emit(args, doc: dict, lines: list[str], out=None):
    out = out or sys.stdout
    if args.machine:
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def _load(args):
    if not args.input:
        raise FormatError("input", "an input file is required (-i)")
    try:
        return io.load_code(args.input)
    except OSError as exc:
        raise FormatError("input", exc.strerror or str(exc)) from None


def cmd_analyze(args) -> int:
    C = _load(args)
    enc = p_encoder(C)
    doc = {
        "p": C.ctx.p,
        "r": C.ctx.r,
        "n": C.n,
        "k_list": list(C.k_list),
        "p_dim": C.p_dim,
        "free": is_free(C),
        "p_encoder": _poly_lists(enc.rows),
    }
    lines = [
        f"code over Z_{C.ctx.modulus} (p={C.ctx.p}, r={C.ctx.r}), n={C.n}",
        f"k_list: {tuple(C.k_list)}",
        f"p_dim: {C.p_dim}",
        f"free: {'yes' if is_free(C) else 'no'}",
    ]
    if C.is_block():
        sf = standard_form(C.generator)
        doc["standard_form"] = {"matrix": [list(r) for r in sf.matrix], "params": list(sf.params),
                                "column_permutation": list(sf.column_permutation)}
        lines.append(f"standard form (params {sf.params}, columns {sf.column_permutation}):")
        lines.extend("  " + " ".join(str(x) for x in row) for row in sf.matrix)
    lines.append(f"p-encoder ({enc.p_dim} rows):")
    lines.extend("  " + str(list(row)) for row in _poly_lists(enc.rows))
    _emit(args, doc, lines)
    return 0


def cmd_dual(args) -> int:
    C = _load(args)
    res = dual(C)
    D = res.dual_code
    text = io.dumps(D)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    ranks = {str(i): res.rank(i) for i in range(C.ctx.r)}
    doc = {"k_list": list(D.k_list), "p_dim": D.p_dim, "B_ranks": ranks, "provenance": res.provenance}
    lines = [
        f"dual k_list: {tuple(D.k_list)}",
        f"dual p_dim: {D.p_dim}",
        "B ranks: " + ", ".join(f"B_{i}={v}" for i, v in ranks.items()),
    ]
    if not args.output:
        doc["code"] = io.code_to_dict(D)
        lines.append(text.rstrip("\n"))
    _emit(args, doc, lines)
    return 0


def cmd_standard_form(args) -> int:
    C = _load(args)
    try:
        sf = standard_form(C.generator)
    except NotConstant as exc:
        raise FormatError("generator", str(exc)) from None
    doc = {"matrix": [list(r) for r in sf.matrix], "params": list(sf.params),
           "column_permutation": list(sf.column_permutation)}
    lines = [f"params: {sf.params}", f"column permutation: {sf.column_permutation}"]
    lines.extend(" ".join(str(x) for x in row) for row in sf.matrix)
    _emit(args, doc, lines)
    return 0


def cmd_verify(args) -> int:
    C = _load(args)
    report = verify_duality_identities(C, trials=args.trials, seed=args.seed)
    D = dual(C).dual_code
    report.add("generator times dual generator transpose is zero", orthogonal(C.generator, D.generator))
    enc = p_encoder(C)
    report.add("p-encoder is a p-generator sequence", is_p_generator_sequence(list(enc.rows)))
    report.add("p-encoder is p-linearly independent", is_p_linearly_independent(list(enc.rows)))
    report.add("p-encoder length == p-dim", enc.p_dim == C.p_dim, expected=C.p_dim, actual=enc.p_dim)
    stacked = decompose(C).stacked()
    report.add("decomposition components stack to full row rank", full_row_rank(stacked))
    if C.is_block() and fits_oracle(C.ctx, C.n):
        block_code_checks(C, report)
    _emit(args, report.to_dict(), [report.render()])
    return 0 if report.passed else 1


def cmd_expand(args) -> int:
    C = _load(args)
    lo, hi = args.lo, args.hi
    if lo > hi:
        raise FormatError("lo", "--lo must not exceed --hi")
    windows = []
    lines = [f"Laurent windows on [{lo}, {hi}]:"]
    for i, row in enumerate(C.generator.entries):
        out = []
        for j, x in enumerate(row):
            w = laurent_expand(x, lo, hi)
            out.append(list(w.coefficients))
            lines.append(f"  G[{i}][{j}] = {x}: {list(w.coefficients)}")
        windows.append(out)
    _emit(args, {"lo": lo, "hi": hi, "windows": windows}, lines)
    return 0


def cmd_random(args) -> int:
    for name in ("p", "r", "n", "k"):
        if getattr(args, name) is None:
            raise FormatError(name, f"--{name} is required")
    try:
        ctx = RingContext(args.p, args.r)
    except ZprError as exc:
        raise FormatError("r" if str(exc).startswith("r ") else "p", str(exc)) from None
    if args.n < 1:
        raise FormatError("n", "must be at least 1")
    if args.k < 1:
        raise FormatError("k", "must be at least 1")
    if args.max_deg < 0:
        raise FormatError("max_deg", "must be non-negative")
    G = random_generator(ctx, random.Random(args.seed), args.n, args.k, args.max_deg)
    text = io.dumps(ConvolutionalCode(G))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "dual": cmd_dual,
    "standard-form": cmd_standard_form,
    "verify": cmd_verify,
    "expand": cmd_expand,
    "random": cmd_random,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zprconv", description="Convolutional codes over Z_{p^r}.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("-i", "--input")
    parser.add_argument("-o", "--output")
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--lo", type=int, default=0)
    parser.add_argument("--hi", type=int, default=7)
    parser.add_argument("--p", type=int)
    parser.add_argument("--r", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--k", type=int)
    parser.add_argument("--max-deg", dest="max_deg", type=int, default=2)
    parser.add_argument("--machine", action="store_true", help="emit JSON instead of text")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return COMMANDS[args.command](args)
    except ZprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
