"""Classical phase-space functions and the Poisson bracket.

A PhaseFn is a polynomial in x_1..x_N, p_1..p_N over the parameter ring,
divided by powers of r1^2 and r2^2, backed by the same packed representation
as the operator coefficients (momenta carry no denominators).
"""

from __future__ import annotations

from fractions import Fraction

from .poly import BlockLayout, BlockPoly
from .scalars import ParamScalar


class PhaseFn:
    """Rational phase-space function on a concrete (N, n) split."""

    __slots__ = ("value",)

    def __init__(self, value: BlockPoly):
        if not value.layout.momenta:
            raise ValueError("PhaseFn requires a layout with momenta")
        self.value = value

    @classmethod
    def layout(cls, N: int, n: int) -> BlockLayout:
        return BlockLayout(N, n, momenta=True)

    @classmethod
    def zero(cls, layout: BlockLayout) -> PhaseFn:
        return cls(BlockPoly.zero(layout))

    @classmethod
    def scalar(cls, layout: BlockLayout, value) -> PhaseFn:
        return cls(BlockPoly.scalar(layout, value))

    @classmethod
    def coordinate(cls, layout: BlockLayout, i: int, power: int = 1) -> PhaseFn:
        return cls(BlockPoly.monomial(layout, layout.x_key(i, power)))

    @classmethod
    def momentum(cls, layout: BlockLayout, i: int, power: int = 1) -> PhaseFn:
        return cls(BlockPoly.monomial(layout, layout.p_key(i, power)))

    def _check(self, other: PhaseFn) -> None:
        if not self.value.layout.same_split(other.value.layout):
            raise ValueError("phase functions built for different splits")

    def __add__(self, other: PhaseFn) -> PhaseFn:
        self._check(other)
        return PhaseFn(self.value + other.value)

    def __sub__(self, other: PhaseFn) -> PhaseFn:
        self._check(other)
        return PhaseFn(self.value - other.value)

    def __neg__(self) -> PhaseFn:
        return PhaseFn(-self.value)

    def __mul__(self, other: PhaseFn) -> PhaseFn:
        self._check(other)
        return PhaseFn(self.value * other.value)

    def __pow__(self, power: int) -> PhaseFn:
        result = PhaseFn.scalar(self.value.layout, 1)
        for _ in range(power):
            result = result * self
        return result

    def scaled(self, value: ParamScalar | Fraction | int) -> PhaseFn:
        return PhaseFn(self.value.scaled(value))

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhaseFn):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def term_count(self) -> int:
        return self.value.term_count()

    def momentum_degree(self) -> int:
        return self.value.p_degree()

    def substitute_params(self, values) -> PhaseFn:
        return PhaseFn(self.value.substitute_params(values))

    def __repr__(self) -> str:
        return f"PhaseFn<{self.value!r}>"


def poisson_bracket(f: PhaseFn, g: PhaseFn) -> PhaseFn:
    """{f, g} = sum_i df/dx_i dg/dp_i - df/dp_i dg/dx_i."""
    f._check(g)
    layout = f.value.layout
    out = BlockPoly.zero(layout)
    for i in range(layout.N):
        fx = f.value.diff_x(i)
        gp = g.value.diff_p(i)
        if not (fx.is_zero() or gp.is_zero()):
            out = out + fx * gp
        fp = f.value.diff_p(i)
        gx = g.value.diff_x(i)
        if not (fp.is_zero() or gx.is_zero()):
            out = out - fp * gx
    return PhaseFn(out)
