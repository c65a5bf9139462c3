"""Arithmetic in F_p and sparse polynomials over it."""

from math import comb

from fdmod import (
    FieldScalar,
    RingContext,
    apply_divided_power,
    ff_inv,
    frobenius_power,
    lucas_binomial,
    parse_poly,
    pow_ps_minus_one,
)

# scalars reduce on construction
a = FieldScalar(12, 7)
print(a, a.inverse(), a * a.inverse())
print("inverse of 3 mod 7:", ff_inv(3, 7))

# Lucas digits vs the integer binomial
for n, k in [(10, 3), (25, 5), (27, 9)]:
    print(f"C({n},{k}) mod 3 = {lucas_binomial(n, k, 3)}  (direct: {comb(n, k) % 3})")

ctx = RingContext(3, ("x", "y"))
f = parse_poly("(x + y)^3 + 2x y", ctx)
print("f =", f)

# p-th powers just scale exponents
print("f^3 =", frobenius_power(f, 1))
assert frobenius_power(f, 1) == f**3

# f^(p^s - 1) through the level recurrence
g = pow_ps_minus_one(f, 2)
print("f^8 has", len(g), "terms, degree", g.degree)
assert g * f == frobenius_power(f, 2)

# divided powers: D_(1,1) applied to x^4 y^2 = C(4,1) C(2,1) x^3 y
print("D[1,1](x^4*y^2) =", apply_divided_power((1, 1), parse_poly("x^4*y^2", ctx)))
