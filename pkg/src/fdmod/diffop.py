"""Differential operators over F_p[x] in right normal form ``sum g_b * D_b``.

``D_b`` is the divided-power operator with ``D_b(x^c) = prod C(c_i, b_i) x^(c-b)``.
An operator whose orders all satisfy ``b_i < p^N`` is ``R^(p^N)``-linear, so
it commutes with ``f^(p^N)``. That turns the localized identity
``delta(1/f) = 1/f^p`` into the polynomial check
``delta(f^(p^N - 1)) == f^(p^N - p)``, which is what :func:`verify_delta`
evaluates.

Besides normal-form operators there is a small expression tree
(:class:`Leaf`, :class:`Compose`, :class:`FrobTwist`) used for generation
witnesses ``w`` with ``w(1/f) = 1/f^(p^t)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from operator import add, sub
from types import MappingProxyType
from typing import Mapping

from . import _kernels
from .chain import ChainReport, compute_chain
from .errors import ContextMismatch, LevelMismatch, ParseError
from .field import RingContext, ff_inv, lucas_binomial
from .frobenius import frob_decompose
from .ideal import Ideal, divide_with_cofactors, exact_divide, generating_subset
from .parsing import parse_ast
from .poly import Exponent, Poly, _binom, _mul_terms, apply_divided_power, frobenius_power, pow_ps_minus_one


def _order_level(b: Exponent, p: int) -> int:
    top = max(b, default=0)
    n = 0
    while p**n - 1 < top:
        n += 1
    return n


class DiffOperator:
    """``sum_b g_b * D_b`` with polynomial coefficients ``g_b``."""

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx: RingContext, terms: Mapping[Exponent, Poly] | None = None):
        clean = {}
        for b, g in (terms or {}).items():
            b = tuple(b)
            if len(b) != ctx.nvars or any(x < 0 for x in b):
                raise ValueError(f"invalid order {b}")
            ctx.check(g.ctx)
            if not g.is_zero():
                clean[b] = g
        self.ctx = ctx
        self._terms = clean

    @classmethod
    def identity(cls, ctx: RingContext) -> "DiffOperator":
        return cls(ctx, {(0,) * ctx.nvars: Poly.one(ctx)})

    @classmethod
    def divided_power(cls, ctx: RingContext, b, coeff: Poly | int = 1) -> "DiffOperator":
        if isinstance(coeff, int):
            coeff = Poly.constant(ctx, coeff)
        return cls(ctx, {tuple(b): coeff})

    @classmethod
    def multiplication(cls, g: Poly) -> "DiffOperator":
        return cls(g.ctx, {(0,) * g.ctx.nvars: g})

    @classmethod
    def parse(cls, text: str, ctx: RingContext) -> "DiffOperator":
        return parse_operator(text, ctx)

    @property
    def terms(self) -> Mapping[Exponent, Poly]:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def level(self) -> int:
        """Smallest N with every order component below p^N."""
        p = self.ctx.p
        return max((_order_level(b, p) for b in self._terms), default=0)

    def apply(self, h: Poly) -> Poly:
        return apply_operator(self, h)

    def __call__(self, h: Poly) -> Poly:
        return apply_operator(self, h)

    def _coerce(self, other) -> "DiffOperator":
        if isinstance(other, DiffOperator):
            self.ctx.check(other.ctx)
            return other
        if isinstance(other, Poly):
            self.ctx.check(other.ctx)
            return DiffOperator.multiplication(other)
        if isinstance(other, int):
            return DiffOperator.multiplication(Poly.constant(self.ctx, other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for b, g in other._terms.items():
            out[b] = out[b] + g if b in out else g
        return DiffOperator(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return DiffOperator(self.ctx, {b: -g for b, g in self._terms.items()})

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

    def left_multiply(self, g: Poly) -> "DiffOperator":
        """The operator ``g * self`` (multiply after applying)."""
        self.ctx.check(g.ctx)
        return DiffOperator(self.ctx, {b: g * c for b, c in self._terms.items()})

    def compose(self, inner: "DiffOperator") -> "DiffOperator":
        """Normal form of ``self ∘ inner``.

        Uses ``D_a ∘ h = sum_{j<=a} D_j(h) D_{a-j}`` and
        ``D_a D_b = C(a+b, a) D_{a+b}``.
        """
        self.ctx.check(inner.ctx)
        p = self.ctx.p
        out: dict = {}
        for a, ga in self._terms.items():
            for b, hb in inner._terms.items():
                for j in product(*(range(x + 1) for x in a)):
                    djh = apply_divided_power(j, hb)
                    if djh.is_zero():
                        continue
                    rest = tuple(map(sub, a, j))
                    order = tuple(map(add, rest, b))
                    c = 1
                    for oi, bi in zip(order, b):
                        c = c * _binom(oi, bi, p) % p
                    if not c:
                        continue
                    term = ga * djh.scale(c)
                    out[order] = out[order] + term if order in out else term
        return DiffOperator(self.ctx, out)

    def __mul__(self, other):
        if isinstance(other, DiffOperator):
            return self.compose(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.compose(other)

    def __rmul__(self, other):
        if isinstance(other, Poly):
            return self.left_multiply(other)
        if isinstance(other, int):
            return self.left_multiply(Poly.constant(self.ctx, other))
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self):
        return hash((self.ctx, frozenset(self._terms.items())))

    def sorted_orders(self) -> list[Exponent]:
        return sorted(self._terms, key=lambda b: (sum(b), b))

    def __str__(self):
        return format_operator(self)

    def __repr__(self):
        return f"DiffOperator({format_operator(self)!r}, p={self.ctx.p})"


def format_operator(op: DiffOperator) -> str:
    """``coeff * D[b1,...,bd]`` terms joined by `` + ``, lowest order first."""
    if op.is_zero():
        return "0"
    parts = []
    for b in op.sorted_orders():
        g = op._terms[b]
        if not any(b):
            parts.append(str(g))
            continue
        d = "D[" + ",".join(str(x) for x in b) + "]"
        if g == 1:
            parts.append(d)
        elif len(g) == 1:
            parts.append(f"{g} * {d}")
        else:
            parts.append(f"({g}) * {d}")
    return " + ".join(parts)


def apply_operator(op: DiffOperator, h: Poly) -> Poly:
    """``sum_b g_b * D_b(h)``, exact."""
    op.ctx.check(h.ctx)
    out = _kernels.apply_terms(
        [(b, g._terms) for b, g in op._terms.items()], h._terms, op.ctx.nvars, op.ctx.p
    )
    if out is None:
        return _apply_operator_py(op, h)
    return Poly._raw(op.ctx, out)


def _apply_operator_py(op: DiffOperator, h: Poly) -> Poly:
    p = op.ctx.p
    acc: dict = {}
    get = acc.get
    for b, g in op._terms.items():
        dh = apply_divided_power(b, h)
        if dh.is_zero():
            continue
        for e, c in _mul_terms(g._terms, dh._terms, p).items():
            acc[e] = get(e, 0) + c
    return Poly(op.ctx, acc)


# expression trees


class OperatorExpr:
    """Operator built from normal-form leaves by composition and Frobenius twist."""

    level: int

    def apply(self, h: Poly) -> Poly:
        raise NotImplementedError

    def __call__(self, h: Poly) -> Poly:
        return self.apply(h)


@dataclass(frozen=True)
class Leaf(OperatorExpr):
    op: DiffOperator

    @property
    def ctx(self):
        return self.op.ctx

    @property
    def level(self) -> int:
        return self.op.level

    def apply(self, h: Poly) -> Poly:
        return apply_operator(self.op, h)

    def __str__(self):
        return format_operator(self.op)


@dataclass(frozen=True)
class Compose(OperatorExpr):
    """``outer ∘ inner``: apply ``inner`` first."""

    outer: OperatorExpr
    inner: OperatorExpr

    def __post_init__(self):
        if self.outer.ctx != self.inner.ctx:
            raise ContextMismatch("compose: operands live in different rings")

    @property
    def ctx(self):
        return self.inner.ctx

    @property
    def level(self) -> int:
        return max(self.outer.level, self.inner.level)

    def apply(self, h: Poly) -> Poly:
        return self.outer.apply(self.inner.apply(h))

    def __str__(self):
        return f"compose({self.outer}, {self.inner})"


@dataclass(frozen=True)
class FrobTwist(OperatorExpr):
    """``twist(e)(c^p + rest) = e(c)^p``, where ``c^p`` is the part of the
    input at basis monomial 1 over ``R^p`` and ``rest`` is killed."""

    inner: OperatorExpr

    @property
    def ctx(self):
        return self.inner.ctx

    @property
    def level(self) -> int:
        return self.inner.level + 1

    def apply(self, h: Poly) -> Poly:
        ctx = h.ctx
        c = frob_decompose(h, 1).coordinate((0,) * ctx.nvars)
        return frobenius_power(self.inner.apply(c), 1)

    def __str__(self):
        return f"twist({self.inner})"


def as_expr(e) -> OperatorExpr:
    return Leaf(e) if isinstance(e, DiffOperator) else e


def frobenius_twist(e) -> FrobTwist:
    return FrobTwist(as_expr(e))


def format_expr(e) -> str:
    return str(as_expr(e))


# parsing


def parse_operator_expr(text: str, ctx: RingContext) -> OperatorExpr:
    """Parse normal-form text, optionally wrapped in ``twist(...)`` and
    ``compose(outer, inner)``. Products of operators are composed."""
    value = _eval_op(parse_ast(text, operators=True), ctx)
    return as_expr(value)


def parse_operator(text: str, ctx: RingContext) -> DiffOperator:
    value = _eval_op(parse_ast(text, operators=True), ctx)
    if not isinstance(value, DiffOperator):
        raise ParseError("expected a normal-form operator, found twist/compose")
    return value


def _need_normal(value, pos=None) -> DiffOperator:
    if not isinstance(value, DiffOperator):
        raise ParseError("twist/compose cannot be combined arithmetically", pos)
    return value


def _eval_op(node, ctx: RingContext):
    kind = node[0]
    if kind == "num":
        return DiffOperator.multiplication(Poly.constant(ctx, node[1]))
    if kind == "var":
        if node[1] not in ctx.vars:
            raise ParseError(f"unknown variable {node[1]!r}", node[2])
        return DiffOperator.multiplication(Poly.variable(ctx, node[1]))
    if kind == "D":
        b = node[1]
        if len(b) != ctx.nvars:
            raise ParseError(f"D[...] needs {ctx.nvars} orders, got {len(b)}", node[2])
        return DiffOperator.divided_power(ctx, b)
    if kind == "sum":
        acc: dict = {}
        for sign, part in node[1]:
            op = _need_normal(_eval_op(part, ctx))
            for b, g in op.terms.items():
                g = g if sign > 0 else -g
                acc[b] = acc[b] + g if b in acc else g
        return DiffOperator(ctx, acc)
    if kind == "mul":
        a = _need_normal(_eval_op(node[1], ctx))
        b = _need_normal(_eval_op(node[2], ctx))
        return a.compose(b)
    if kind == "pow":
        a = _need_normal(_eval_op(node[1], ctx))
        out = DiffOperator.identity(ctx)
        for _ in range(node[2]):
            out = out.compose(a)
        return out
    if kind == "call":
        name, args, pos = node[1], node[2], node[3]
        vals = [as_expr(_eval_op(a, ctx)) for a in args]
        if name == "twist":
            if len(vals) != 1:
                raise ParseError("twist takes one argument", pos)
            return FrobTwist(vals[0])
        if len(vals) != 2:
            raise ParseError("compose takes two arguments", pos)
        return Compose(vals[0], vals[1])
    raise ParseError(f"unexpected construct {kind!r}")


# dual projections


@lru_cache(maxsize=4096)
def _univariate_projection(a: int, q: int, p: int) -> tuple[int, ...]:
    """Scalars ``c_b`` (b = a..q-1) with ``sum_b c_b x^(b-a) D_b`` sending
    ``x^beta`` to ``[beta == a]`` for ``beta < q``.

    Triangular recursion ``c_beta = [beta == a] - sum_{b<beta} c_b C(beta, b)``.
    """
    coeffs = [0] * q
    for beta in range(a, q):
        v = 1 if beta == a else 0
        for b in range(a, beta):
            if coeffs[b]:
                v -= coeffs[b] * lucas_binomial(beta, b, p)
        coeffs[beta] = v % p
    return tuple(coeffs[a:])


def dual_projection(alpha: Exponent, s: int, ctx: RingContext) -> DiffOperator:
    """The ``R^(p^s)``-linear map sending ``x^alpha`` to 1 and every other
    basis monomial ``x^beta`` (``beta_i < p^s``) to 0.

    It factors over the variables, so it is the product of univariate
    projections, each solved by its unitriangular binomial system.
    """
    alpha = tuple(alpha)
    p = ctx.p
    q = p**s
    if len(alpha) != ctx.nvars or any(not 0 <= a < q for a in alpha):
        raise ValueError(f"basis exponent {alpha} out of range for p^{s} = {q}")
    factors = []
    for a in alpha:
        cs = _univariate_projection(a, q, p)
        factors.append([(a + k, c) for k, c in enumerate(cs) if c])
    terms = {}
    for combo in product(*factors):
        b = tuple(bi for bi, _ in combo)
        c = 1
        for _, ci in combo:
            c = c * ci % p
        if c:
            shift = tuple(bi - ai for bi, ai in zip(b, alpha))
            terms[b] = Poly.monomial(ctx, shift, c)
    return DiffOperator(ctx, terms)


# synthesis


def monomial_fast_path(f: Poly, s: int, power: Poly | None = None) -> DiffOperator | None:
    """``a^-1 D_alpha`` when ``f^(p^s-1)`` has a term ``a x^alpha`` with
    ``alpha_i < p^s`` that no other term dominates componentwise.

    Then ``D_alpha`` kills every other term, so the operator maps
    ``f^(p^s-1)`` to 1, i.e. ``1/f`` to ``1/f^(p^s)``. Among several such
    terms the one with the smallest largest exponent wins (lowest-order
    operator), ties going to the term-order leader.
    """
    if f.is_zero():
        raise ValueError("f must be nonzero")
    ctx = f.ctx
    q = ctx.p**s
    g = power if power is not None else pow_ps_minus_one(f, s)
    in_box = [e for e in g.terms if all(x < q for x in e)]
    if not in_box:
        return None
    key = ctx.monomial_key
    in_box.sort(key=lambda e: (-max(e), key(e)), reverse=True)
    alpha = _kernels.first_undominated(in_box, g.terms, ctx.nvars, q)
    if alpha is None:
        return None
    inv = ff_inv(g.terms[alpha], ctx.p)
    return DiffOperator.divided_power(ctx, alpha, inv)


def verify_delta(op: DiffOperator, f: Poly, level: int) -> bool:
    """Check ``op(f^(p^N - 1)) == f^(p^N - p)`` for ``N = level``.

    Uses plain powering and operator application only.
    """
    op.ctx.check(f.ctx)
    if level < 1:
        raise LevelMismatch("verification level must be at least 1")
    if op.level > level:
        raise LevelMismatch(f"operator level {op.level} exceeds {level}")
    p = f.ctx.p
    q = p**level
    return apply_operator(op, f ** (q - 1)) == f ** (q - p)


def delta_level(report: ChainReport) -> int:
    """Smallest N for which some operator of level N maps 1/f to 1/f^p.

    That is 1 when the first root ideal is the unit ideal, otherwise the
    stabilization level plus one.
    """
    if report.stabilized_at is None:
        raise ValueError("chain did not stabilize")
    if report.level(1).ideal.is_unit():
        return 1
    return report.stabilized_at + 1


def synthesize_delta(
    f: Poly,
    s: int,
    level: int | None = None,
    report: ChainReport | None = None,
) -> DiffOperator:
    """An operator ``delta`` of level at most N with ``delta(1/f) = 1/f^p``.

    ``s`` is the stabilization level and N defaults to ``s + 1``. The
    monomial shortcut is tried first; otherwise ``f^(p^N - p)`` is written
    in the bracket power of ``I_N(f^(p^N - 1))`` and each coordinate is
    turned into an operator through the dual projections. The result is
    verified before it is returned.
    """
    ctx = f.ctx
    n = s + 1 if level is None else level
    if n < 1:
        raise ValueError("level must be positive")
    if report is None:
        report = compute_chain(f, max_level=max(n, s + 1))
        if report.stabilized_at is None or report.stabilized_at > s:
            raise ValueError(f"chain of {f} does not stabilize at {s}")
    elif report.stabilized_at is None or report.stabilized_at > s:
        raise ValueError(f"chain of {f} does not stabilize at {s}")
    if n < s + 1 and not (n == 1 and report.level(1).ideal.is_unit()):
        raise ValueError(f"no operator of level {n} is guaranteed for stabilization level {s}")

    g = report.level(n).power if n <= len(report.levels) else pow_ps_minus_one(f, n)
    if n == 1:
        h = Poly.one(ctx)
    else:
        h = frobenius_power(pow_ps_minus_one(f, n - 1), 1)

    fast = monomial_fast_path(f, n, power=g)
    if fast is not None:
        delta = fast.left_multiply(h)
    else:
        target = report.level(n).ideal if n <= len(report.levels) else None
        delta = _division_delta(g, h, n, target)
    if not verify_delta(delta, f, n):
        raise RuntimeError(f"synthesized operator failed verification for {f}")
    return delta


def _division_delta(g: Poly, h: Poly, n: int, target: Ideal | None = None) -> DiffOperator:
    ctx = g.ctx
    dec = frob_decompose(g, n)
    p = ctx.p

    def projection_size(alpha):
        # nonzero C(b, a) mod p need every base-p digit of b to be >= that of a
        size = 1
        for a in alpha:
            for _ in range(n):
                a, digit = divmod(a, p)
                size *= p - digit
        return size

    alphas = sorted(
        dec.coords,
        key=lambda a: (
            dec.coords[a].degree,
            projection_size(a),
            len(dec.coords[a]),
            tuple(-k for k in ctx.monomial_key(a)),
        ),
    )
    coords = [dec.coords[a] for a in alphas]
    if target is None:
        target = Ideal(ctx, coords)
    chosen = generating_subset(ctx, coords, target)
    sub_alphas = [alphas[i] for i in chosen]
    sub_ideal = Ideal(ctx, [coords[i] for i in chosen])

    # h is in I^{[q]} iff each of its coordinates is in I; then
    # h = sum_beta (sum_alpha u_{beta,alpha} c_alpha)^q x^beta.
    cofactors = [Poly.zero(ctx) for _ in sub_alphas]
    for beta, d in frob_decompose(h, n).coords.items():
        us = divide_with_cofactors(d, sub_ideal)
        for k, u in enumerate(us):
            if not u.is_zero():
                cofactors[k] = cofactors[k] + frobenius_power(u, n).shift(beta)
    delta = DiffOperator(ctx)
    for alpha, r in zip(sub_alphas, cofactors):
        if not r.is_zero():
            delta = delta + dual_projection(alpha, n, ctx).left_multiply(r)
    return delta


def minimal_delta(f: Poly, report: ChainReport | None = None) -> tuple[DiffOperator, int]:
    """Operator of the lowest possible level mapping 1/f to 1/f^p, with that level."""
    if report is None:
        report = compute_chain(f)
    if report.stabilized_at is None:
        raise ValueError("chain did not stabilize within its cap")
    n = delta_level(report)
    return synthesize_delta(f, report.stabilized_at, level=n, report=report), n


def generator_witness(f: Poly, t: int, delta: DiffOperator | None = None) -> OperatorExpr:
    """Expression ``w`` with ``w(1/f) = 1/f^(p^t)``.

    ``w = twist^(t-1)(delta) ∘ ... ∘ twist(delta) ∘ delta``: each twisted
    copy raises the previous power ``1/f^(p^k)`` to ``1/f^(p^(k+1))``.
    """
    if t < 1:
        raise ValueError("target power must be positive")
    if delta is None:
        delta, _ = minimal_delta(f)
    step: OperatorExpr = Leaf(delta)
    witness: OperatorExpr = step
    for _ in range(t - 1):
        step = FrobTwist(step)
        witness = Compose(step, witness)
    return witness


def apply_localized(e, g: Poly, f: Poly, m: int) -> tuple[Poly, int]:
    """Apply ``e`` to ``g / f^m``; returns ``(numerator, k)`` for ``numerator / f^k``.

    Rewrites ``g/f^m = g f^(p^N - m) / f^(p^N)`` with the smallest N such that
    ``N >= level(e)`` and ``p^N >= m``; ``e`` commutes with ``f^(p^N)``.
    """
    if f.is_zero():
        raise ValueError("f must be nonzero")
    e = as_expr(e)
    p = f.ctx.p
    n = e.level
    while p**n < m:
        n += 1
    q = p**n
    return e.apply(g * f ** (q - m)), q


def normalize_fraction(num: Poly, k: int, f: Poly) -> tuple[Poly, int]:
    """Cancel common factors of ``f`` from ``num / f^k``; chains with
    :func:`apply_localized`."""
    while k > 0 and not num.is_zero():
        quot = exact_divide(num, f)
        if quot is None:
            break
        num, k = quot, k - 1
    if num.is_zero():
        return num, 0
    return num, k
