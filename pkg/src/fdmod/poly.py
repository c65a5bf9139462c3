"""Sparse multivariate polynomials over F_p.

A polynomial is a map from exponent tuples to nonzero residues. Values are
immutable; arithmetic returns new objects. Term order only matters when
iterating for display or Groebner computations.
"""

from __future__ import annotations

from functools import lru_cache
from operator import add
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import ExponentOverflow, ParseError
from .field import RingContext, ff_inv, lucas_binomial
from .parsing import parse_ast

# Per-variable exponent bound (a signed 32-bit slot in fixed-width ports).
MAX_EXPONENT = 2**31 - 1

Exponent = tuple[int, ...]


class Poly:
    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: RingContext, terms: Mapping[Exponent, int] | None = None):
        p = ctx.p
        d = ctx.nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != d:
                raise ValueError(f"exponent {e} has wrong length for {d} variables")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            if any(x > MAX_EXPONENT for x in e):
                raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")
            c %= p
            if c:
                clean[e] = c
        self.ctx = ctx
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ctx: RingContext, terms: dict) -> "Poly":
        # Caller guarantees canonical terms (reduced, nonzero, right length).
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj._terms = terms
        obj._hash = None
        return obj

    # construction

    @classmethod
    def zero(cls, ctx):
        return cls._raw(ctx, {})

    @classmethod
    def constant(cls, ctx, c: int):
        c %= ctx.p
        return cls._raw(ctx, {(0,) * ctx.nvars: c} if c else {})

    @classmethod
    def one(cls, ctx):
        return cls.constant(ctx, 1)

    @classmethod
    def monomial(cls, ctx, exps: Iterable[int], coeff: int = 1):
        return cls(ctx, {tuple(exps): coeff})

    @classmethod
    def variable(cls, ctx, name: str):
        try:
            i = ctx.vars.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r}") from None
        e = [0] * ctx.nvars
        e[i] = 1
        return cls._raw(ctx, {tuple(e): 1})

    @classmethod
    def parse(cls, text: str, ctx: RingContext) -> "Poly":
        return parse_poly(text, ctx)

    # inspection

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> int:
        return self._terms.get((0,) * self.ctx.nvars, 0)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in decreasing monomial order."""
        key = self.ctx.monomial_key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self) -> Exponent:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=self.ctx.monomial_key)

    def leading_coefficient(self) -> int:
        return self._terms[self.leading_monomial()]

    def monic(self) -> "Poly":
        if not self._terms:
            return self
        inv = ff_inv(self.leading_coefficient(), self.ctx.p)
        return self.scale(inv)

    # arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self.ctx.check(other.ctx)
            return other
        if isinstance(other, int):
            return Poly.constant(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return Poly._raw(self.ctx, {e: p - c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> "Poly":
        p = self.ctx.p
        c %= p
        if not c:
            return Poly.zero(self.ctx)
        return Poly._raw(self.ctx, {e: v * c % p for e, v in self._terms.items()})

    def shift(self, exps: Exponent, c: int = 1) -> "Poly":
        """Multiply by the monomial ``c * x^exps``."""
        p = self.ctx.p
        c %= p
        if not c:
            return Poly.zero(self.ctx)
        _check_sum_bound(self.degree, sum(exps))
        return Poly._raw(
            self.ctx, {tuple(map(add, e, exps)): v * c % p for e, v in self._terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return Poly.zero(self.ctx)
        _check_sum_bound(self.degree, other.degree)
        return Poly._raw(self.ctx, _mul_terms(self._terms, other._terms, self.ctx.p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        return _frobenius_aware_pow(self, n)

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == Poly.constant(self.ctx, other)._terms
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, p={self.ctx.p})"


def _check_sum_bound(a: int, b: int) -> None:
    if a + b > MAX_EXPONENT:
        raise ExponentOverflow(f"degree {a} + {b} exceeds {MAX_EXPONENT}")


def _mul_terms(a: dict, b: dict, p: int) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple(map(add, ea, eb))
            out[e] = get(e, 0) + ca * cb
    return {e: c % p for e, c in out.items() if c % p}


def format_monomial(exps: Exponent, names: tuple[str, ...]) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts) if parts else "1"


def format_poly(f: Poly) -> str:
    """Canonical text: decreasing monomial order, coefficients in [1, p)."""
    if not f._terms:
        return "0"
    out = []
    for e, c in f.sorted_terms():
        if not any(e):
            out.append(str(c))
        elif c == 1:
            out.append(format_monomial(e, f.ctx.vars))
        else:
            out.append(f"{c}*{format_monomial(e, f.ctx.vars)}")
    return " + ".join(out)


def parse_poly(text: str, ctx: RingContext) -> Poly:
    """Parse and fully expand ``text``; integer literals are reduced mod p."""
    return _eval_poly(parse_ast(text), ctx)


def _eval_poly(node, ctx: RingContext) -> Poly:
    kind = node[0]
    if kind == "num":
        return Poly.constant(ctx, node[1])
    if kind == "var":
        if node[1] not in ctx.vars:
            raise ParseError(f"unknown variable {node[1]!r}", node[2])
        return Poly.variable(ctx, node[1])
    if kind == "sum":
        acc: dict = {}
        for sign, part in node[1]:
            for e, c in _eval_poly(part, ctx)._terms.items():
                acc[e] = (acc.get(e, 0) + sign * c) % ctx.p
        return Poly(ctx, acc)
    if kind == "mul":
        return _eval_poly(node[1], ctx) * _eval_poly(node[2], ctx)
    if kind == "pow":
        base = _eval_poly(node[1], ctx)
        n = node[2]
        if base.degree > 0 and base.degree * n > MAX_EXPONENT:
            raise ExponentOverflow(f"power {n} exceeds the exponent bound")
        return base**n
    raise ParseError(f"unexpected construct {kind!r}")


def frobenius_power(f: Poly, s: int) -> Poly:
    """``f^(p^s)`` term-wise: coefficients to the p^s, exponents scaled by p^s."""
    if s < 0:
        raise ValueError("s must be non-negative")
    p = f.ctx.p
    q = p**s
    if f.degree > 0 and f.degree * q > MAX_EXPONENT:
        raise ExponentOverflow(f"Frobenius power p^{s} exceeds the exponent bound")
    return Poly._raw(
        f.ctx,
        {tuple(x * q for x in e): pow(c, q, p) for e, c in f._terms.items()},
    )


def _frobenius_aware_pow(f: Poly, n: int) -> Poly:
    # f^n = prod_i (f^{d_i})^{p^i} for the base-p digits d_i of n.
    ctx = f.ctx
    if n == 0:
        return Poly.one(ctx)
    if f.degree > 0 and f.degree * n > MAX_EXPONENT:
        raise ExponentOverflow(f"power {n} exceeds the exponent bound")
    p = ctx.p
    small = [Poly.one(ctx)]
    result = Poly.one(ctx)
    i = 0
    while n:
        n, digit = divmod(n, p)
        if digit:
            while len(small) <= digit:
                small.append(small[-1] * f)
            result = result * frobenius_power(small[digit], i)
        i += 1
    return result


def pow_ps_minus_one(f: Poly, s: int, previous: Poly | None = None) -> Poly:
    """``f^(p^s - 1)`` by ``f^(p^s-1) = (f^(p^(s-1)-1))^p * f^(p-1)``.

    ``previous`` may carry ``f^(p^(s-1)-1)`` to skip the lower levels.
    """
    if f.is_zero():
        raise ValueError("f must be nonzero")
    if s < 1:
        raise ValueError("s must be positive")
    p = f.ctx.p
    f_pm1 = f ** (p - 1)
    if previous is not None:
        return frobenius_power(previous, 1) * f_pm1
    g = f_pm1
    for _ in range(s - 1):
        g = frobenius_power(g, 1) * f_pm1
    return g


@lru_cache(maxsize=1 << 16)
def _binom(n: int, k: int, p: int) -> int:
    return lucas_binomial(n, k, p)


def apply_divided_power(b: Exponent, f: Poly) -> Poly:
    """``D_b f``, with ``D_b(x^c) = prod_i C(c_i, b_i) x^(c-b)``."""
    b = tuple(b)
    if len(b) != f.ctx.nvars:
        raise ValueError(f"order {b} has wrong length")
    p = f.ctx.p
    if not any(b):
        return f
    out = {}
    for e, c in f._terms.items():
        coef = c
        for ei, bi in zip(e, b):
            if ei < bi:
                coef = 0
                break
            if bi:
                coef = coef * _binom(ei, bi, p) % p
                if not coef:
                    break
        if coef:
            out[tuple(ei - bi for ei, bi in zip(e, b))] = coef
    return Poly._raw(f.ctx, out)

