"""Removal of Laurent-unit common factors from polynomial rows.

A row vector over Z_{p^r}[D] spans the same Z_{p^r}((D))-line after division
by any common factor that is nonzero mod p.  The candidate factor is the gcd
of the row mod p, lifted p-adically (Hensel style) against the cofactors.
Failure to lift simply leaves the row alone, so callers never depend on
success for correctness.
"""

from __future__ import annotations

from . import _fp
from .poly import _exact_div, _low, _mod_p, _pmul, _pscale, _psub, _pshift, _padd, _trim
from .ring import RingContext


def strip_d_power(row) -> tuple[int, list]:
    k = None
    for x in row:
        if x:
            lo = _low(x)
            k = lo if k is None else min(k, lo)
    if not k:
        return 0, list(row)
    return k, [_pshift(x, -k) for x in row]


def unit_content(row, ctx: RingContext):
    """Return (f, reduced) with row == f * reduced and f a non-constant
    Laurent unit, or None when no such factor is found."""
    p, r = ctx.p, ctx.r
    nz = [x for x in row if x]
    if not nz:
        return None
    v = min(ctx.valuation(c) for x in nz for c in x)
    if v >= r:
        return None
    q = p**v
    e = r - v
    mod = p**e
    y = [tuple(c // q for c in x) for x in row]
    ybar = [_mod_p(x, p) for x in y]
    g = ()
    for x in ybar:
        if x:
            g = _fp.fgcd(g, x, p) if g else _fp.monic(x, p)
            if len(g) == 1:
                return None
    while g and g[0] == 0:
        g = g[1:]
    if len(g) <= 1:
        return None
    zbar = [_fp.fdivmod(x, g, p)[0] if x else () for x in ybar]
    pivot = None
    for j, z in enumerate(zbar):
        if z:
            inv = _fp.fxgcd_inverse(z, g, p)
            if inv is not None:
                pivot = (j, inv)
                break
    if pivot is None:
        return None
    f = g
    z = list(zbar)
    for lvl in range(1, e):
        pl = p**lvl
        b = []
        for yj, zj in zip(y, z):
            diff = _psub(yj, _pmul(f, zj, mod), mod)
            if any(c % pl for c in diff):
                return None
            b.append(_mod_p(tuple(c // pl for c in diff), p))
        j, inv = pivot
        fl = _fp.fdivmod(_pmul(b[j], inv, p), g, p)[1]
        for k in range(len(z)):
            t = _psub(b[k], _pmul(fl, zbar[k], p), p)
            zk, rem = _fp.fdivmod(t, g, p) if t else ((), ())
            if rem:
                return None
            z[k] = _padd(z[k], _pscale(zk, pl, mod), mod)
        f = _padd(f, _pscale(fl, pl, mod), mod)
    for yj, zj in zip(y, z):
        if _pmul(f, zj, mod) != _trim([c % mod for c in yj]):
            return None
    reduced = [_trim([c * q % ctx.modulus for c in zj]) for zj in z]
    return f, reduced


def reduce_row(row, ctx: RingContext):
    """Strip D-powers and unit content; returns (factor, row) with the
    original row equal to factor * row (factor a Laurent unit)."""
    k, row = strip_d_power(row)
    factor = _pshift((1,), k)
    res = unit_content(row, ctx)
    if res is not None:
        f, row = res
        factor = _pmul(factor, f, ctx.modulus)
    return factor, row
