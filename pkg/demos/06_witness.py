"""Iterating an operator with Frobenius twists: 1/f -> 1/f^(p^t)."""

from fdmod import (
    Poly,
    RingContext,
    apply_localized,
    frobenius_twist,
    generator_witness,
    normalize_fraction,
    parse_operator,
    parse_poly,
)

ctx = RingContext(2, ("x",))
x = parse_poly("x", ctx)
d1 = parse_operator("D[1]", ctx)

# the twist reads the coordinate at 1 over the squares and squares the result
t = frobenius_twist(d1)
for text in ("x^2", "x", "x^6"):
    print(f"{t}({text}) =", t.apply(parse_poly(text, ctx)))

for k in (1, 2, 3):
    w = generator_witness(x, k)
    num, e = normalize_fraction(*apply_localized(w, Poly.one(ctx), x, 1), x)
    print(f"{w}: 1/x -> {num}/x^{e}")

ctx = RingContext(3, ("x", "y"))
f = parse_poly("x^2*y + y^2", ctx)
w = generator_witness(f, 2)
num, e = normalize_fraction(*apply_localized(w, Poly.one(ctx), f, 1), f)
print(f"f = {f}: witness level {w.level}, 1/f -> {num}/f^{e}")
