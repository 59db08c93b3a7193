"""The zprconv-1 code file format.

    {"format": "zprconv-1", "p": 2, "r": 2, "n": 2,
     "generator": [[[1, 1], [0, 1]], [[0], [2]]]}

``generator`` is rows x columns x ascending coefficient lists.  Coefficients
must already be reduced into [0, p^r); nothing is silently reduced.
"""

from __future__ import annotations

import json
from pathlib import Path

from .code import ConvolutionalCode
from .errors import FormatError, InvalidContext
from .matrix import PolyMatrix
from .ring import RingContext

FORMAT = "zprconv-1"


def _int_field(doc, name, lo=None):
    if name not in doc:
        raise FormatError(name, "missing")
    v = doc[name]
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(name, f"expected an integer, got {v!r}")
    if lo is not None and v < lo:
        raise FormatError(name, f"must be >= {lo}")
    return v


def code_from_dict(doc) -> ConvolutionalCode:
    if not isinstance(doc, dict):
        raise FormatError("document", "expected a JSON object")
    # a missing tag is read as the current format; a different one is refused
    if doc.get("format", FORMAT) != FORMAT:
        raise FormatError("format", f"expected {FORMAT!r}, got {doc.get('format')!r}")
    p = _int_field(doc, "p", 2)
    r = _int_field(doc, "r", 1)
    n = _int_field(doc, "n", 1)
    try:
        ctx = RingContext(p, r)
    except InvalidContext as exc:
        raise FormatError("r" if str(exc).startswith("r ") else "p", str(exc)) from None
    gen = doc.get("generator")
    if not isinstance(gen, list):
        raise FormatError("generator", "expected a list of rows")
    rows = []
    for i, row in enumerate(gen):
        if not isinstance(row, list) or len(row) != n:
            raise FormatError(f"generator[{i}]", f"expected a list of {n} entries")
        out = []
        for j, coeffs in enumerate(row):
            where = f"generator[{i}][{j}]"
            if not isinstance(coeffs, list):
                raise FormatError(where, "expected a coefficient list")
            for c in coeffs:
                if isinstance(c, bool) or not isinstance(c, int):
                    raise FormatError(where, f"coefficient {c!r} is not an integer")
                if not 0 <= c < ctx.modulus:
                    raise FormatError(where, f"coefficient {c} outside [0, {ctx.modulus})")
            out.append(coeffs)
        rows.append(out)
    if not rows:
        return ConvolutionalCode.zero(ctx, n)
    return ConvolutionalCode(PolyMatrix.from_coeffs(rows, ctx), n)


def code_to_dict(code: ConvolutionalCode) -> dict:
    ctx = code.ctx
    return {
        "format": FORMAT,
        "p": ctx.p,
        "r": ctx.r,
        "n": code.n,
        "generator": code.generator.to_lists(),
    }


def loads(text: str) -> ConvolutionalCode:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError("document", f"invalid JSON: {exc.msg}") from None
    return code_from_dict(doc)


def dumps(code: ConvolutionalCode) -> str:
    return json.dumps(code_to_dict(code), sort_keys=True) + "\n"


def load_code(path) -> ConvolutionalCode:
    return loads(Path(path).read_text())


def dump_code(code: ConvolutionalCode, path) -> None:
    Path(path).write_text(dumps(code))
