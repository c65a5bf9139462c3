"""numpy kernels for the two hot loops: divided-power application and
dominance tests over large supports.

Exponents are packed into one int64 key per monomial (mixed radix), values
stay below p < 2^31 so products fit in int64 and sums are reduced with
``np.add.reduceat`` (exact integer arithmetic, no float weights).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .field import lucas_binomial

_CHUNK = 1 << 21
# binomial lookup columns longer than this are not built
_COLUMN_LIMIT = 1 << 16
_KEY_LIMIT = 1 << 62


@lru_cache(maxsize=1024)
def _binom_column_cached(b: int, upto: int, p: int) -> np.ndarray:
    col = np.fromiter((lucas_binomial(c, b, p) for c in range(upto + 1)), dtype=np.int64)
    col.setflags(write=False)
    return col


def binom_column(b: int, upto: int, p: int) -> np.ndarray:
    """``C(c, b) mod p`` for ``c = 0..upto``."""
    # Round up so nearby sizes share a cache entry.
    size = 1 << max(upto, 1).bit_length()
    return _binom_column_cached(b, size, p)


def _radix(bounds) -> list[int] | None:
    mult = []
    m = 1
    for r in bounds:
        mult.append(m)
        m *= int(r) + 1
        if m >= _KEY_LIMIT:
            return None
    return mult


def _reduce(keys: np.ndarray, vals: np.ndarray, p: int):
    if keys.size == 0:
        return keys, vals
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    vals = vals[order]
    starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
    sums = np.add.reduceat(vals, starts) % p
    keys = keys[starts]
    nz = sums != 0
    return keys[nz], sums[nz]


def apply_terms(terms, h_terms: dict, nvars: int, p: int) -> dict | None:
    """``sum_b g_b * D_b(h)`` on raw term dicts; ``terms`` is ``[(b, g_terms)]``.

    Returns None when the packed key would not fit (caller falls back).
    """
    if not h_terms or not terms:
        return {}
    exps = np.array(list(h_terms.keys()), dtype=np.int64).reshape(len(h_terms), nvars)
    coefs = np.fromiter(h_terms.values(), dtype=np.int64, count=len(h_terms))
    maxe = exps.max(axis=0)
    if int(maxe.max()) > _COLUMN_LIMIT:
        return None
    gmax = np.zeros(nvars, dtype=np.int64)
    for _, g in terms:
        for e in g:
            gmax = np.maximum(gmax, e)
    mult = _radix(maxe + gmax)
    if mult is None:
        return None
    mult_arr = np.array(mult, dtype=np.int64)
    h_keys = exps @ mult_arr

    acc_keys = np.empty(0, dtype=np.int64)
    acc_vals = np.empty(0, dtype=np.int64)
    pend_keys, pend_vals, pending = [], [], 0

    def flush():
        nonlocal acc_keys, acc_vals, pend_keys, pend_vals, pending
        if not pend_keys:
            return
        k = np.concatenate([acc_keys, *pend_keys])
        v = np.concatenate([acc_vals, *pend_vals])
        acc_keys, acc_vals = _reduce(k, v, p)
        pend_keys, pend_vals, pending = [], [], 0

    for b, g in terms:
        b_arr = np.array(b, dtype=np.int64)
        mask = (exps >= b_arr).all(axis=1)
        if not mask.any():
            continue
        c = coefs[mask]
        sub = exps[mask]
        for i, bi in enumerate(b):
            if bi:
                col = binom_column(bi, int(maxe[i]), p)
                c = c * col[sub[:, i]] % p
        nz = c != 0
        if not nz.any():
            continue
        c = c[nz]
        base = h_keys[mask][nz] - int(b_arr @ mult_arr)
        for e, gc in g.items():
            shift = int(np.dot(e, mult))
            pend_keys.append(base + shift)
            pend_vals.append(c * gc % p)
            pending += c.size
        if pending >= _CHUNK:
            flush()
    flush()

    out = {}
    if acc_keys.size:
        rem = acc_keys.copy()
        cols = []
        for m in reversed(mult):
            cols.append(rem // m)
            rem = rem % m
        cols.reverse()
        mat = np.stack(cols, axis=1).tolist()
        for row, v in zip(mat, acc_vals.tolist()):
            out[tuple(row)] = v
    return out


_GRID_LIMIT = 1 << 24


def first_undominated(candidates, support, nvars: int, q: int):
    """First candidate (in the given order) that no other exponent of
    ``support`` dominates componentwise, or None.

    Candidates lie in the box ``[0, q)^d``. Capping every support exponent
    at ``q`` preserves dominance of box points, so a suffix-summed count
    grid over ``[0, q]^d`` gives the number of dominating exponents.
    """
    if not candidates:
        return None
    mat = np.array(list(support), dtype=np.int64).reshape(len(support), nvars)
    if (q + 1) ** nvars <= _GRID_LIMIT:
        capped = np.minimum(mat, q)
        grid = np.zeros((q + 1,) * nvars, dtype=np.int64)
        np.add.at(grid, tuple(capped.T), 1)
        for axis in range(nvars):
            grid = np.flip(np.cumsum(np.flip(grid, axis), axis=axis), axis)
        for a in candidates:
            if grid[a] == 1:
                return a
        return None
    for a in candidates:
        ge = (mat >= np.array(a, dtype=np.int64)).all(axis=1)
        # only ``a`` itself may dominate ``a``
        if int(ge.sum()) == 1:
            return a
    return None
