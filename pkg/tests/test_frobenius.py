import pytest
from hypothesis import given
from hypothesis import strategies as st

from fdmod import (
    Ideal,
    Poly,
    RingContext,
    bracket_power,
    frob_decompose,
    frobenius_power,
    frobenius_root_ideal,
    ideal_equal,
    ideal_product,
    parse_poly,
)
from fdmod.oracle import oracle_ds_image, oracle_recompose
from randpoly import ctx_and_polys, polys


def ring(p, names="x,y"):
    return RingContext(p, tuple(names.split(",")))


def test_decompose_examples():
    ctx = ring(2)
    dec = frob_decompose(parse_poly("x^2*y + x*y^2", ctx), 1)
    assert {a: str(c) for a, c in dec.coords.items()} == {(0, 1): "x", (1, 0): "y"}
    assert dec.as_text() == {"x": "y", "y": "x"}

    cx = ring(2, "x")
    assert {a: str(c) for a, c in frob_decompose(parse_poly("x^2", cx), 1).coords.items()} == {(0,): "x"}
    assert {a: str(c) for a, c in frob_decompose(parse_poly("x", cx), 1).coords.items()} == {(1,): "1"}


def test_decompose_takes_roots_of_coefficients():
    ctx = ring(3)
    dec = frob_decompose(parse_poly("2*x^7*y^3 + x", ctx), 2)
    assert dec.coordinate((7, 3)) == 2
    assert dec.coordinate((1, 0)) == 1
    assert dec.coordinate((0, 0)).is_zero()
    assert dec.basis_exponents() == [(7, 3), (1, 0)]


def test_decompose_rejects_level_zero():
    with pytest.raises(ValueError):
        frob_decompose(parse_poly("x", ring(2)), 0)


def test_root_ideal_examples():
    ctx = ring(2)
    assert [str(g) for g in frobenius_root_ideal(parse_poly("x^2*y + x*y^2", ctx), 1).groebner()] == ["x", "y"]
    cx = ring(2, "x")
    assert [str(g) for g in frobenius_root_ideal(parse_poly("x^2", cx), 1).groebner()] == ["x"]
    assert frobenius_root_ideal(parse_poly("x", cx), 1).is_unit()
    assert frobenius_root_ideal(Poly.zero(cx), 1).is_zero()


@given(ctx_and_polys(max_deg=6, max_terms=8), st.integers(1, 2))
def test_roundtrip(data, s):
    ctx, g = data
    dec = frob_decompose(g, s)
    q = ctx.p**s
    assert all(a < q for alpha in dec.coords for a in alpha)
    assert all(not c.is_zero() for c in dec.coords.values())
    assert dec.recompose() == g
    assert oracle_recompose(dec) == g


@given(ctx_and_polys(), st.integers(1, 2))
def test_root_of_frobenius_power(data, s):
    _, f = data
    assert ideal_equal(frobenius_root_ideal(f, s), frobenius_root_ideal(frobenius_power(f, 1), s + 1))


@given(ctx_and_polys(n=2), st.integers(1, 2))
def test_root_of_product(data, s):
    _, f, g = data
    prod = ideal_product(frobenius_root_ideal(f, s), frobenius_root_ideal(g, s))
    assert frobenius_root_ideal(f * g, s).issubset(prod)


@given(ctx_and_polys(max_vars=2), st.integers(1, 2))
def test_divided_power_image_is_bracket_power(data, s):
    ctx, f = data
    image = oracle_ds_image(f, s)
    assert ideal_equal(image, bracket_power(frobenius_root_ideal(f, s), s))


@given(ctx_and_polys(), st.integers(1, 2))
def test_f_in_bracket_power_of_its_root(data, s):
    _, f = data
    assert f in bracket_power(frobenius_root_ideal(f, s), s)


@st.composite
def bracket_members(draw):
    ctx, *gens = draw(ctx_and_polys(n=2, max_deg=2, max_terms=3))
    s = draw(st.integers(1, 2))
    mults = [draw(polys(ctx, max_deg=3, max_terms=3)) for _ in gens]
    f = sum((m * frobenius_power(g, s) for m, g in zip(mults, gens)), Poly.zero(ctx))
    return ctx, Ideal(ctx, gens), f, s


@given(bracket_members())
def test_minimality_extension(data):
    # minimality: I_s(f) is the smallest J with f in J^[p^s]
    _, J, f, s = data
    assert f in bracket_power(J, s)
    assert frobenius_root_ideal(f, s).issubset(J)
