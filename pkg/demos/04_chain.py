"""Descending chains of root ideals and where they settle."""

from fdmod import RingContext, auto_cap, compute_chain, parse_poly

cases = [
    (2, "x", "x"),
    (2, "x,y", "x^2*y + x*y^2"),
    (5, "x1,x2,x3,x4", "x1^2 + x2^2 + x3^2 + x4^2"),
    (3, "x,y", "x^3 + y^2"),
    (2, "x,y", "x*y^3 + x^3"),
]

for p, names, text in cases:
    ctx = RingContext(p, tuple(names.split(",")))
    f = parse_poly(text, ctx)
    report = compute_chain(f)
    print(f"p={p}  f = {f}  (cap {auto_cap(f)})")
    for lv in report.levels:
        print(f"  I_{lv.s} = ({', '.join(str(g) for g in lv.ideal.groebner())})")
    print(f"  stable from level {report.stabilized_at}, degree bound ok: {report.degrees_ok}")

# a cap that is too small leaves the chain open
ctx = RingContext(2, ("x", "y"))
short = compute_chain(parse_poly("x*y^3 + x^3", ctx), max_level=2)
print("with max_level=2:", short.stabilized_at)
