"""Operators sending 1/f to 1/f^p, with exact verification."""

from fdmod import (
    RingContext,
    apply_operator,
    compute_chain,
    dual_projection,
    minimal_delta,
    monomial_fast_path,
    parse_poly,
    pow_ps_minus_one,
    synthesize_delta,
    verify_delta,
)

# sum of four squares: one undominated term of f^(p-1) does the job
for p in (5, 3):
    ctx = RingContext(p, ("x1", "x2", "x3", "x4"))
    f = parse_poly("x1^2 + x2^2 + x3^2 + x4^2", ctx)
    delta = monomial_fast_path(f, 1)
    print(f"p={p}: {delta}  ->", apply_operator(delta, pow_ps_minus_one(f, 1)))

# dual projections pick out one basis monomial
ctx = RingContext(2, ("x",))
for a in (0, 1):
    print(f"pi_{a} =", dual_projection((a,), 1, ctx))

# no single term works here, so the operator comes from the division path
ctx = RingContext(2, ("x", "y"))
f = parse_poly("x^2*y + x*y^2", ctx)
print("fast path:", monomial_fast_path(f, 1))
report = compute_chain(f)
delta = synthesize_delta(f, report.stabilized_at, report=report)
print("delta =", delta)
print("delta(f^3) == f^2:", verify_delta(delta, f, 2))

# a chain that settles late needs a deeper operator
f = parse_poly("x*y^3 + x^3", ctx)
delta, level = minimal_delta(f)
print(f"level {level}, {len(delta)} terms, verified {verify_delta(delta, f, level)}")
