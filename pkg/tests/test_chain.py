import pytest

from fdmod import (
    Poly,
    RingContext,
    auto_cap,
    compute_chain,
    frobenius_root_ideal,
    ideal_equal,
    parse_poly,
    pow_ps_minus_one,
    stabilization_level,
)
from randpoly import suite


def ring(p, names):
    return RingContext(p, tuple(names.split(",")))


def gens(report, s):
    return [str(g) for g in report.level(s).ideal.groebner()]


def test_chain_of_x():
    f = parse_poly("x", ring(2, "x"))
    r = compute_chain(f)
    assert [lv.s for lv in r.levels] == [1, 2]
    assert gens(r, 1) == gens(r, 2) == ["1"]
    assert r.stabilized_at == 1 and stabilization_level(r) == 1
    assert r.stable_ideal.is_unit()


def test_chain_of_binary_cubic():
    f = parse_poly("x^2*y + x*y^2", ring(2, "x,y"))
    r = compute_chain(f)
    assert gens(r, 1) == gens(r, 2) == ["x", "y"]
    assert stabilization_level(r) == 1
    assert r.level(2).power == parse_poly("x^6*y^3 + x^5*y^4 + x^4*y^5 + x^3*y^6", f.ctx)


def test_chain_of_four_squares():
    f = parse_poly("x1^2 + x2^2 + x3^2 + x4^2", ring(5, "x1,x2,x3,x4"))
    r = compute_chain(f)
    assert gens(r, 1) == ["1"]
    assert stabilization_level(r) == 1


def test_truncated_chain_reports_no_level():
    f = parse_poly("x", ring(2, "x"))
    r = compute_chain(f, max_level=1)
    assert stabilization_level(r) is None
    assert len(r.levels) == 1 and r.cap == 1


def test_longer_chain():
    # stabilizes only at the third level
    f = parse_poly("x*y^3 + x^3", ring(2, "x,y"))
    r = compute_chain(f)
    assert stabilization_level(r) == 3
    # values cross-checked against schoolbook powers and the enumerated
    # divided-power image
    assert [gens(r, s) for s in (1, 2, 3, 4)] == [
        ["x", "y"],
        ["y^2", "x"],
        ["x^2", "x*y", "y^2"],
        ["x^2", "x*y", "y^2"],
    ]
    assert not ideal_equal(r.level(1).ideal, r.level(2).ideal)
    assert ideal_equal(r.level(3).ideal, r.level(4).ideal)


@pytest.mark.parametrize("text", ["0", "3"])
def test_rejects_units_and_zero(text):
    with pytest.raises(ValueError):
        compute_chain(parse_poly(text, ring(5, "x")))


def test_rejects_bad_cap():
    with pytest.raises(ValueError):
        compute_chain(parse_poly("x", ring(5, "x")), max_level=0)


def test_auto_cap():
    assert auto_cap(parse_poly("x", ring(2, "x"))) == 2
    assert auto_cap(parse_poly("x^4 + y", ring(2, "x,y,z"))) == 21


def test_chain_on_suite():
    for _, f, _, _ in suite(n=120, seed=11):
        r = compute_chain(f)
        assert r.stabilized_at is not None and r.stabilized_at < r.cap
        assert r.descending_ok and r.degrees_ok
        assert [lv.s for lv in r.levels] == list(range(1, r.stabilized_at + 2))
        for lo, hi in zip(r.levels, r.levels[1:]):
            assert hi.ideal.issubset(lo.ideal)
        # the first equality is the first one
        for a, b in zip(r.levels[:-2], r.levels[1:-1]):
            assert not ideal_equal(a.ideal, b.ideal)
        # and it persists one more level
        s = r.stabilized_at
        if f.ctx.p ** (s + 2) <= 27:
            nxt = frobenius_root_ideal(pow_ps_minus_one(f, s + 2), s + 2)
            assert ideal_equal(nxt, r.level(s + 1).ideal)


def test_levels_store_powers():
    f = parse_poly("x^2 + y^3 + 1", ring(3, "x,y"))
    r = compute_chain(f)
    for lv in r.levels:
        assert lv.power == f ** (3**lv.s - 1)
        assert lv.max_gen_degree == max(g.degree for g in lv.ideal.gens)
    assert isinstance(r.f, Poly)
