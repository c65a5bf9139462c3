"""Coordinates over the p^s-th powers and the root ideals they generate."""

from fdmod import RingContext, bracket_power, frob_decompose, frobenius_root_ideal, parse_poly
from fdmod.oracle import oracle_ds_image

ctx = RingContext(2, ("x", "y"))
g = parse_poly("x^2*y + x*y^2", ctx)

dec = frob_decompose(g, 1)
for mono, coord in dec.as_text().items():
    print(f"  {mono}: {coord}")
assert dec.recompose() == g

I = frobenius_root_ideal(g, 1)
print("I_1(g) =", [str(h) for h in I.groebner()])

# brute force: every divided power of order < 2 applied to g
image = oracle_ds_image(g, 1)
print("divided-power image:", [str(h) for h in image.groebner()])
print("bracket power:      ", [str(h) for h in bracket_power(I, 1).groebner()])

# a level-2 decomposition of a bigger power
ctx3 = RingContext(3, ("x", "y"))
f = parse_poly("x^2 + x*y + y^3", ctx3)
dec2 = frob_decompose(f**8, 2)
print(len(dec2.coords), "nonzero coordinates at level 2, degrees",
      sorted({c.degree for c in dec2.coords.values()}))
