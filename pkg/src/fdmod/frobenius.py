"""Coordinates over the monomial basis of R over R^{p^s}, and root ideals.

Every polynomial ``g`` has a unique expression

    g = sum_alpha c_alpha^(p^s) * x^alpha,   0 <= alpha_i < p^s,

and the root ideal ``I_s(g)`` is generated by the coordinates ``c_alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .field import RingContext, ff_pth_root
from .ideal import Ideal
from .poly import Exponent, Poly, format_monomial, frobenius_power


@dataclass(frozen=True)
class FrobDecomposition:
    ctx: RingContext
    level: int
    coords: dict[Exponent, Poly] = field(default_factory=dict)

    def basis_exponents(self) -> list[Exponent]:
        """Basis exponents with nonzero coordinate, in decreasing term order."""
        return sorted(self.coords, key=self.ctx.monomial_key, reverse=True)

    def coordinate(self, alpha: Exponent) -> Poly:
        return self.coords.get(tuple(alpha), Poly.zero(self.ctx))

    def recompose(self) -> Poly:
        total = Poly.zero(self.ctx)
        for alpha, c in self.coords.items():
            total = total + frobenius_power(c, self.level).shift(alpha)
        return total

    def as_text(self) -> dict[str, str]:
        return {
            format_monomial(a, self.ctx.vars): str(self.coords[a]) for a in self.basis_exponents()
        }


def frob_decompose(g: Poly, s: int) -> FrobDecomposition:
    """Bucket the terms of ``g`` by exponent residue mod p^s (single pass)."""
    if s < 1:
        raise ValueError("level s must be positive")
    ctx = g.ctx
    p = ctx.p
    q = p**s
    buckets: dict[Exponent, dict] = {}
    for e, c in g.terms.items():
        alpha = tuple(x % q for x in e)
        quot = tuple(x // q for x in e)
        root = c
        for _ in range(s):
            root = ff_pth_root(root, p)
        buckets.setdefault(alpha, {})[quot] = root
    coords = {alpha: Poly._raw(ctx, t) for alpha, t in buckets.items()}
    return FrobDecomposition(ctx, s, coords)


def frobenius_root_ideal(g: Poly, s: int) -> Ideal:
    """``I_s(g)``: the ideal generated by the coordinates of ``g`` at level s."""
    dec = frob_decompose(g, s)
    return Ideal(g.ctx, [dec.coords[a] for a in dec.basis_exponents()])
