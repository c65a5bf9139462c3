"""Ideals of F_p[x]: reduced Groebner bases, membership, cofactors.

Plain Buchberger with the coprime-leading-monomial and chain criteria. Pairs
are processed smallest-lcm first (degree, then term order, then indices), so
the run is deterministic. The reduced basis is the canonical form used for
equality tests.

Cofactor tracking is a separate, slower pass: every basis element carries
its expression in the original generators, and division quotients are
composed with those expressions.
"""

from __future__ import annotations

import heapq
import threading
from operator import add, sub
from typing import Iterable, Sequence

from .errors import NotMember
from .field import RingContext, ff_inv
from .poly import Poly, _mul_terms, frobenius_power


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _add_scaled_shift(target: dict, src: dict, shift, c: int, p: int, on_new=None):
    """``target += c * x^shift * src`` in place."""
    for e, v in src.items():
        m = tuple(map(add, e, shift))
        w = (target.get(m, 0) + c * v) % p
        if w:
            if on_new is not None and m not in target:
                on_new(m)
            target[m] = w
        else:
            target.pop(m, None)


def _add_poly(target: dict, src: dict, c: int, p: int):
    for e, v in src.items():
        w = (target.get(e, 0) + c * v) % p
        if w:
            target[e] = w
        else:
            target.pop(e, None)


class _Basis:
    """Working list of basis polynomials as raw term dicts."""

    def __init__(self, ctx: RingContext):
        self.ctx = ctx
        self.polys: list[dict] = []
        self.lms: list[tuple] = []
        self.lcs: list[int] = []

    def append(self, terms: dict):
        lm = max(terms, key=self.ctx.monomial_key)
        self.polys.append(terms)
        self.lms.append(lm)
        self.lcs.append(terms[lm])

    def reduce(self, terms: dict, skip: int | None = None, quotients: dict | None = None):
        """Full reduction of ``terms`` (consumed). Returns the remainder.

        ``quotients`` (index -> term dict) collects the multipliers used.
        """
        ctx = self.ctx
        p = ctx.p
        key = ctx.monomial_key
        heap = [tuple(-k for k in key(m)) + (m,) for m in terms]
        heapq.heapify(heap)

        def push(m):
            heapq.heappush(heap, tuple(-k for k in key(m)) + (m,))

        rem = {}
        seen = set()
        lms = self.lms
        while heap:
            m = heapq.heappop(heap)[-1]
            c = terms.get(m)
            if not c or m in seen:
                continue
            for k, lm in enumerate(lms):
                if k != skip and _divides(lm, m):
                    shift = tuple(map(sub, m, lm))
                    coef = c * ff_inv(self.lcs[k], p) % p
                    _add_scaled_shift(terms, self.polys[k], shift, -coef, p, push)
                    if quotients is not None:
                        q = quotients.setdefault(k, {})
                        q[shift] = (q.get(shift, 0) + coef) % p
                    break
            else:
                rem[m] = c
                seen.add(m)
                del terms[m]
        return rem


def _linear_echelon(ctx: RingContext, rows: Sequence[dict], track: bool):
    """Row-echelon basis of the F_p-span of ``rows`` (distinct leading monomials).

    With ``track``, also returns each basis row as constant combination
    {generator index: coefficient}.
    """
    p = ctx.p
    key = ctx.monomial_key
    pivots: dict = {}
    order = []
    for idx, row in enumerate(rows):
        row = dict(row)
        rep = {idx: 1} if track else None
        while row:
            lm = max(row, key=key)
            if lm not in pivots:
                break
            prow, prep = pivots[lm]
            c = row[lm] * ff_inv(prow[lm], p) % p
            _add_poly(row, prow, -c, p)
            if track:
                for j, v in prep.items():
                    w = (rep.get(j, 0) - c * v) % p
                    if w:
                        rep[j] = w
                    else:
                        rep.pop(j, None)
        if row:
            pivots[lm] = (row, rep)
            order.append(lm)
    return [pivots[lm] for lm in order]


def _buchberger(ctx: RingContext, gens: Sequence[Poly], track: bool = False):
    """Groebner basis (not yet reduced) of ``gens``.

    Returns the basis and, when tracking, for each element a dict
    {generator index: cofactor term dict}.
    """
    p = ctx.p
    zero = (0,) * ctx.nvars
    basis = _Basis(ctx)
    reps: list[dict] = []

    def poly_rep(const_rep):
        return {j: {zero: c} for j, c in const_rep.items()}

    def combine(base: dict, quotients: dict) -> dict:
        out = {j: dict(t) for j, t in base.items()}
        for k, q in quotients.items():
            for j, t in reps[k].items():
                prod = _mul_terms(q, t, p)
                acc = out.setdefault(j, {})
                _add_poly(acc, prod, -1, p)
        return {j: t for j, t in out.items() if t}

    pairs: set = set()

    def add_element(terms: dict, rep: dict | None):
        basis.append(terms)
        if track:
            reps.append(rep)
        new = len(basis.polys) - 1
        for k in range(new):
            pairs.add((k, new))

    for row, crep in _linear_echelon(ctx, [g._terms for g in gens], track):
        quotients = {} if track else None
        rem = basis.reduce(dict(row), quotients=quotients)
        if rem:
            add_element(rem, combine(poly_rep(crep), quotients) if track else None)

    key = ctx.monomial_key

    def pair_key(pr):
        i, j = pr
        L = _lcm(basis.lms[i], basis.lms[j])
        return (sum(L), key(L), i, j)

    while pairs:
        pr = min(pairs, key=pair_key)
        pairs.discard(pr)
        i, j = pr
        lmi, lmj = basis.lms[i], basis.lms[j]
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            continue
        L = _lcm(lmi, lmj)
        if any(
            k not in pr
            and _divides(basis.lms[k], L)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis.polys))
        ):
            continue
        si = tuple(map(sub, L, lmi))
        sj = tuple(map(sub, L, lmj))
        ci = ff_inv(basis.lcs[i], p)
        cj = ff_inv(basis.lcs[j], p)
        spoly: dict = {}
        _add_scaled_shift(spoly, basis.polys[i], si, ci, p)
        _add_scaled_shift(spoly, basis.polys[j], sj, -cj, p)
        quotients = {} if track else None
        rem = basis.reduce(spoly, quotients=quotients)
        if rem:
            rep = None
            if track:
                base: dict = {}
                for j_, t in reps[i].items():
                    acc = base.setdefault(j_, {})
                    _add_scaled_shift(acc, t, si, ci, p)
                for j_, t in reps[j].items():
                    acc = base.setdefault(j_, {})
                    _add_scaled_shift(acc, t, sj, -cj, p)
                rep = combine(base, quotients)
            add_element(rem, rep)
    return basis, reps


def _reduce_basis(ctx: RingContext, basis: _Basis) -> list[Poly]:
    # Keep elements whose leading monomial is minimal, first occurrence wins.
    keep = []
    lms = basis.lms
    for i, lm in enumerate(lms):
        if any(
            j != i and _divides(lms[j], lm) and (lms[j] != lm or j < i) for j in range(len(lms))
        ):
            continue
        keep.append(i)
    minimal = _Basis(ctx)
    for i in keep:
        minimal.append(basis.polys[i])
    out = []
    for k in range(len(minimal.polys)):
        rem = minimal.reduce(dict(minimal.polys[k]), skip=k)
        out.append(Poly._raw(ctx, rem).monic())
    out.sort(key=lambda g: ctx.monomial_key(g.leading_monomial()), reverse=True)
    return out


class Ideal:
    """An ideal given by generators, with a lazily cached reduced Groebner basis."""

    def __init__(self, ctx: RingContext, gens: Iterable[Poly] = ()):
        seen = set()
        clean = []
        for g in gens:
            ctx.check(g.ctx)
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            clean.append(g)
        self.ctx = ctx
        self.gens: tuple[Poly, ...] = tuple(clean)
        self._gb: tuple[Poly, ...] | None = None
        self._tracked = None
        self._lock = threading.Lock()

    @classmethod
    def _with_basis(cls, ctx, gens, gb) -> "Ideal":
        obj = cls(ctx, gens)
        obj._gb = tuple(gb)
        return obj

    def groebner(self) -> tuple[Poly, ...]:
        """Reduced Groebner basis, sorted by decreasing leading monomial."""
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    basis, _ = _buchberger(self.ctx, self.gens)
                    self._gb = tuple(_reduce_basis(self.ctx, basis))
        return self._gb

    def _tracked_basis(self):
        if self._tracked is None:
            with self._lock:
                if self._tracked is None:
                    self._tracked = _buchberger(self.ctx, self.gens, track=True)
        return self._tracked

    def normal_form(self, h: Poly) -> Poly:
        self.ctx.check(h.ctx)
        basis = _Basis(self.ctx)
        for g in self.groebner():
            basis.append(g._terms)
        return Poly._raw(self.ctx, basis.reduce(dict(h._terms)))

    def contains(self, h: Poly) -> bool:
        return self.normal_form(h).is_zero()

    def __contains__(self, h: Poly) -> bool:
        return self.contains(h)

    def issubset(self, other: "Ideal") -> bool:
        self.ctx.check(other.ctx)
        return all(other.contains(g) for g in self.gens)

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def max_generator_degree(self) -> int:
        return max((g.degree for g in self.gens), default=-1)

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"


def reduced_groebner(ideal: Ideal) -> Ideal:
    ideal.groebner()
    return ideal


def normal_form(h: Poly, ideal: Ideal) -> Poly:
    return ideal.normal_form(h)


def divide_with_cofactors(h: Poly, ideal: Ideal) -> list[Poly]:
    """Cofactors ``r`` with ``h == sum(r[j] * ideal.gens[j])``.

    Raises :class:`NotMember` if ``h`` is not in the ideal. The recombination
    is checked before returning.
    """
    ctx = ideal.ctx
    ctx.check(h.ctx)
    p = ctx.p
    basis, reps = ideal._tracked_basis()
    quotients: dict = {}
    rem = basis.reduce(dict(h._terms), quotients=quotients)
    if rem:
        raise NotMember(f"{h} is not in {ideal!r}")
    acc: dict[int, dict] = {}
    for k, q in quotients.items():
        for j, t in reps[k].items():
            _add_poly(acc.setdefault(j, {}), _mul_terms(q, t, p), 1, p)
    cofactors = [Poly._raw(ctx, acc.get(j, {})) for j in range(len(ideal.gens))]
    total = Poly.zero(ctx)
    for r, g in zip(cofactors, ideal.gens):
        total = total + r * g
    if total != h:
        raise AssertionError("cofactor recombination failed")
    return cofactors


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    a.ctx.check(b.ctx)
    return a.groebner() == b.groebner()


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    a.ctx.check(b.ctx)
    return Ideal(a.ctx, [g * h for g in a.gens for h in b.gens])


def bracket_power(ideal: Ideal, s: int) -> Ideal:
    """Ideal generated by the p^s-th powers of the generators.

    Frobenius is flat on a polynomial ring, so the p^s-th powers of a reduced
    Groebner basis form the reduced Groebner basis of the bracket power; the
    cache is seeded with it when the source basis is already known.
    """
    gens = [frobenius_power(g, s) for g in ideal.gens]
    if ideal._gb is not None:
        return Ideal._with_basis(ideal.ctx, gens, [frobenius_power(g, s) for g in ideal._gb])
    return Ideal(ideal.ctx, gens)


def unit_ideal(ctx: RingContext) -> Ideal:
    return Ideal(ctx, [Poly.one(ctx)])


__all__ = [
    "Ideal",
    "bracket_power",
    "divide_with_cofactors",
    "exact_divide",
    "generating_subset",
    "ideal_equal",
    "ideal_product",
    "normal_form",
    "reduced_groebner",
    "unit_ideal",
]


def exact_divide(h: Poly, f: Poly) -> Poly | None:
    """``h / f`` if ``f`` divides ``h``, else None."""
    f.ctx.check(h.ctx)
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    basis = _Basis(f.ctx)
    basis.append(f._terms)
    quotients: dict = {}
    if basis.reduce(dict(h._terms), quotients=quotients):
        return None
    return Poly._raw(f.ctx, quotients.get(0, {}))


def generating_subset(ctx: RingContext, polys: Sequence[Poly], target: Ideal) -> list[int]:
    """Indices of a subset of ``polys`` generating ``target``.

    Greedy over ``polys`` in the given order: a polynomial is taken when it is
    not already in the ideal of those taken so far. Stops once the subset
    ideal contains the reduced basis of ``target``.
    """
    chosen: list[int] = []
    current = Ideal(ctx)
    goal = target.groebner()
    for i, g in enumerate(polys):
        if all(current.contains(t) for t in goal):
            break
        if current.contains(g):
            continue
        chosen.append(i)
        current = Ideal(ctx, [polys[j] for j in chosen])
    if not all(current.contains(t) for t in goal):
        raise NotMember("the given polynomials do not generate the target ideal")
    return chosen
