"""Groebner bases, membership with cofactors, bracket powers."""

from fdmod import (
    Ideal,
    NotMember,
    RingContext,
    bracket_power,
    divide_with_cofactors,
    ideal_equal,
    ideal_product,
    parse_poly,
)

ctx = RingContext(5, ("x", "y", "z"))
P = lambda t: parse_poly(t, ctx)  # noqa: E731

I = Ideal(ctx, [P("x^2 - y*z"), P("x*y - z^2"), P("y^2 - x*z")])
print("basis:", [str(g) for g in I.groebner()])

h = P("x*z") * I.gens[0] + P("y + 1") * I.gens[2]
print(h, "in I:", h in I)
r = divide_with_cofactors(h, I)
print("cofactors:", [str(u) for u in r])
assert sum((u * g for u, g in zip(r, I.gens)), P("0")) == h

try:
    divide_with_cofactors(P("x"), I)
except NotMember:
    print("x is not in I")

# same ideal, different generators
print(ideal_equal(Ideal(ctx, [P("x"), P("y")]), Ideal(ctx, [P("x + y"), P("y")])))

J = ideal_product(Ideal(ctx, [P("x"), P("y")]), Ideal(ctx, [P("x"), P("z")]))
print("(x,y)(x,z) =", [str(g) for g in J.groebner()])

# containment survives Frobenius bracket powers, in both directions
K = Ideal(ctx, [P("x"), P("y")])
for s in (1, 2):
    print(f"s={s}:", J.issubset(K), bracket_power(J, s).issubset(bracket_power(K, s)))
