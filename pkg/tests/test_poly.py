"""Canonical form, closure, and calculus of the block Laurent polynomials."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from singosc.opalg import BlockLayout, BlockPoly, ParamScalar


def _x(layout, i, power=1, coeff=1):
    return BlockPoly.monomial(layout, layout.x_key(i, power), coeff)


def _r1sq(layout):
    out = BlockPoly.zero(layout)
    for i in range(layout.n):
        out = out + _x(layout, i, 2)
    return out


def _r2sq(layout):
    out = BlockPoly.zero(layout)
    for i in range(layout.n, layout.N):
        out = out + _x(layout, i, 2)
    return out


def test_reduction_cancels_exact_block_factors():
    layout = BlockLayout(4, 2)
    r1 = _r1sq(layout)
    # (r1^2 * x3) / r1^2 must reduce to x3
    val = BlockPoly(layout, (r1 * _x(layout, 2)).num, j=1, k=0)
    assert val == _x(layout, 2)
    assert (val.j, val.k) == (0, 0)
    # (r1^2 r2^2) / (r1^2 r2^2) -> 1
    both = _r1sq(layout) * _r2sq(layout)
    val = BlockPoly(layout, both.num, j=1, k=1)
    assert val == BlockPoly.scalar(layout, 1)


def test_reduction_stops_at_non_divisible_numerator():
    layout = BlockLayout(4, 2)
    val = BlockPoly(layout, _x(layout, 0).num, j=1, k=0)
    assert (val.j, val.k) == (1, 0)
    assert val.term_count() == 1


def test_one_coordinate_block_divides_by_square():
    layout = BlockLayout(3, 1)
    # x1^3 / r1^2 with r1^2 = x1^2 reduces to x1
    val = BlockPoly(layout, _x(layout, 0, 3).num, j=1, k=0)
    assert val == _x(layout, 0)


def test_derivative_of_inverse_block_radius():
    layout = BlockLayout(4, 2)
    inv_r1 = BlockPoly(layout, BlockPoly.scalar(layout, 1).num, j=1, k=0)
    got = inv_r1.diff_x(0)
    expected = BlockPoly(layout, _x(layout, 0, 1, Fraction(-2)).num, j=2, k=0)
    assert got == expected
    # derivative in a block-2 coordinate leaves the r1 denominator alone
    assert inv_r1.diff_x(3).is_zero()


def test_derivative_product_rule_against_expansion():
    layout = BlockLayout(5, 2)
    rng = random.Random(11)
    for _ in range(20):
        num = {}
        for _ in range(3):
            key = sum(layout.x_key(rng.randrange(5), rng.randrange(3)) for _ in (0, 1))
            num[key] = Fraction(rng.randrange(-4, 5) or 1)
        val = BlockPoly(layout, num, j=rng.randrange(2), k=rng.randrange(2))
        i = rng.randrange(5)
        # cross-check: d/dx_i (val * r1^2 r2^2) == (d val) r1^2 r2^2 + val * d(r1^2 r2^2)
        r1r2 = _r1sq(layout) * _r2sq(layout)
        lhs = (val * r1r2).diff_x(i)
        rhs = val.diff_x(i) * r1r2 + val * r1r2.diff_x(i)
        assert lhs == rhs


def test_equivalent_cross_multiplication():
    layout = BlockLayout(4, 2)
    one_over_r1 = BlockPoly(layout, BlockPoly.scalar(layout, 1).num, j=1, k=0)
    scaled = BlockPoly(layout, _r2sq(layout).num, j=1, k=1, reduce=False)
    assert scaled.equivalent(one_over_r1)
    assert not scaled.equivalent(one_over_r1 + one_over_r1)


def test_scaled_by_param_scalar():
    layout = BlockLayout(2, 1)
    val = _x(layout, 0) + _x(layout, 1)
    scaled = val.scaled(ParamScalar.hbar(2, Fraction(1, 2)))
    d = scaled.as_dict()
    assert d[(1, 0)] == ParamScalar.hbar(2, Fraction(1, 2))


def test_substitute_params_drops_coupled_terms():
    layout = BlockLayout(2, 1)
    val = (BlockPoly.scalar(layout, ParamScalar.c1())
           + BlockPoly.scalar(layout, ParamScalar.omega(2)))
    out = val.substitute_params({"c1": Fraction(0)})
    assert out == BlockPoly.scalar(layout, ParamScalar.omega(2))
    out2 = val.substitute_params({"c1": Fraction(2), "omega": Fraction(3)})
    assert out2 == BlockPoly.scalar(layout, Fraction(11))


def test_degrees_and_momenta_layout():
    layout = BlockLayout(3, 1, momenta=True)
    val = BlockPoly.monomial(layout, layout.x_key(0, 2) + layout.p_key(2, 3))
    assert val.x_degree() == 2
    assert val.p_degree() == 3
    assert val.diff_p(2).p_degree() == 2
    assert val.diff_p(1).is_zero()


def test_invalid_layout_rejected():
    with pytest.raises(ValueError):
        BlockLayout(4, 0)
    with pytest.raises(ValueError):
        BlockLayout(4, 4)
    with pytest.raises(ValueError):
        BlockLayout(1, 1)
