"""Brute-force reference computations for cross-checking.

Nothing here reuses the production multiplication, powering or binomial
code: products are schoolbook loops, powers are repeated products, and
binomials come from :func:`math.comb`. Slow by design.
"""

from __future__ import annotations

from itertools import product
from math import comb

from .errors import EnumerationLimitExceeded
from .frobenius import FrobDecomposition
from .ideal import Ideal
from .poly import Poly

ENUMERATION_LIMIT = 4096


def _naive_mul(a: Poly, b: Poly) -> Poly:
    p = a.ctx.p
    out: dict = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = (out.get(e, 0) + ca * cb) % p
    return Poly(a.ctx, out)


def oracle_pow(f: Poly, n: int) -> Poly:
    """``f^n`` by ``n`` schoolbook multiplications."""
    if n < 0:
        raise ValueError("n must be non-negative")
    result = Poly.one(f.ctx)
    for _ in range(n):
        result = _naive_mul(result, f)
    return result


def oracle_recompose(dec: FrobDecomposition) -> Poly:
    """``sum_alpha c_alpha^(p^s) x^alpha``."""
    ctx = dec.ctx
    q = ctx.p**dec.level
    total: dict = {}
    for alpha, c in dec.coords.items():
        term = _naive_mul(oracle_pow(c, q), Poly.monomial(ctx, alpha))
        for e, v in term.terms.items():
            total[e] = (total.get(e, 0) + v) % ctx.p
    return Poly(ctx, total)


def _apply_order(b, f: Poly) -> Poly:
    p = f.ctx.p
    out: dict = {}
    for e, c in f.terms.items():
        if any(ei < bi for ei, bi in zip(e, b)):
            continue
        coef = c
        for ei, bi in zip(e, b):
            coef = coef * (comb(ei, bi) % p) % p
        if coef:
            out[tuple(ei - bi for ei, bi in zip(e, b))] = coef
    return Poly(f.ctx, out)


def oracle_ds_image(f: Poly, s: int, limit: int = ENUMERATION_LIMIT) -> Ideal:
    """Ideal generated by ``D_b(f)`` over all orders ``b`` with ``b_i < p^s``.

    These divided powers span the level-s operators as a left R-module, so
    the result is the set of images of ``f`` under all of them.
    """
    ctx = f.ctx
    q = ctx.p**s
    count = q**ctx.nvars
    if count > limit:
        raise EnumerationLimitExceeded(f"{count} orders exceed the limit {limit}")
    images = [_apply_order(b, f) for b in product(range(q), repeat=ctx.nvars)]
    return Ideal(ctx, images)
