"""Construction of the quantum and classical integrals of motion.

With p_i = -i*hbar*d_i every operator below is even in the momenta or built
from angular-momentum squares, so all of them are stored with real rational
coefficients.  The first-order angular generators are kept in the real form
L_ij = hbar (x_i d_j - x_j d_i); the physical (anti-Hermitian-free) generator
is -i L_ij, hence the angular Casimirs are J2 = -sum L_ij^2 over the first
block and K2 = -sum L_ij^2 over the second, with non-negative spectrum
hbar^2 l (l + m - 2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .classical import PhaseFn
from .diffop import DiffOp
from .poly import BlockLayout, BlockPoly
from .scalars import ParamScalar


@dataclass(frozen=True)
class QuantumGenerators:
    """All integrals of motion of the double singular oscillator, as operators."""

    layout: BlockLayout
    H: DiffOp
    A: DiffOp
    B: DiffOp
    J: dict[tuple[int, int], DiffOp] = field(repr=False)
    K: dict[tuple[int, int], DiffOp] = field(repr=False)
    J2: DiffOp = field(repr=False)
    K2: DiffOp = field(repr=False)

    @property
    def N(self) -> int:
        return self.layout.N

    @property
    def n(self) -> int:
        return self.layout.n


def _r_squared(layout: BlockLayout, indices) -> BlockPoly:
    out = BlockPoly.zero(layout)
    for i in indices:
        out = out + BlockPoly.monomial(layout, layout.x_key(i, 2))
    return out


def _singular_terms(layout: BlockLayout, sign2: int = 1) -> BlockPoly:
    """c1/r1^2 + sign2 * c2/r2^2 as a single canonical value."""
    c1 = BlockPoly.scalar(layout, ParamScalar.c1())
    c2 = BlockPoly.scalar(layout, ParamScalar.c2(1, sign2))
    return (BlockPoly(layout, c1.num, 1, 0, reduce=False)
            + BlockPoly(layout, c2.num, 0, 1, reduce=False))


def angular_momentum(layout: BlockLayout, i: int, jdx: int) -> DiffOp:
    """Real-form generator hbar (x_i d_j - x_j d_i), zero-based indices."""
    hbar = ParamScalar.hbar()
    xi = BlockPoly.monomial(layout, layout.x_key(i), hbar)
    xj = BlockPoly.monomial(layout, layout.x_key(jdx), hbar)
    ei = tuple(1 if t == jdx else 0 for t in range(layout.N))
    ej = tuple(1 if t == i else 0 for t in range(layout.N))
    return DiffOp(layout, {ei: xi, ej: -xj})


def build_quantum(N: int, n: int) -> QuantumGenerators:
    """Build H, A, B, the angular generators and their Casimirs for (N, n)."""
    layout = BlockLayout(N, n)
    hbar2 = ParamScalar.hbar(2)
    omega2 = ParamScalar.omega(2)
    zero_beta = (0,) * N

    # H = -(hbar^2/2) sum_i d_i^2 + (omega^2/2) r^2 + c1/r1^2 + c2/r2^2
    h_terms: dict[tuple[int, ...], BlockPoly] = {}
    for i in range(N):
        beta = tuple(2 if t == i else 0 for t in range(N))
        h_terms[beta] = BlockPoly.scalar(layout, hbar2 * Fraction(-1, 2))
    r2_all = _r_squared(layout, range(N))
    h_terms[zero_beta] = r2_all.scaled(omega2 * Fraction(1, 2)) + _singular_terms(layout)
    H = DiffOp(layout, h_terms)

    # A = -(hbar^2/4)[ sum_j (r^2 - x_j^2) d_j^2 - 2 sum_{i<j} x_i x_j d_i d_j
    #                  - (N-1) sum_i x_i d_i ] + (r^2/2)(c1/r1^2 + c2/r2^2)
    quarter = hbar2 * Fraction(-1, 4)
    a_terms: dict[tuple[int, ...], BlockPoly] = {}
    for jdx in range(N):
        beta = tuple(2 if t == jdx else 0 for t in range(N))
        coeff = _r_squared(layout, (i for i in range(N) if i != jdx))
        a_terms[beta] = coeff.scaled(quarter)
    for i in range(N):
        for jdx in range(i + 1, N):
            beta = tuple(1 if t in (i, jdx) else 0 for t in range(N))
            mono = BlockPoly.monomial(layout, layout.x_key(i) + layout.x_key(jdx))
            a_terms[beta] = mono.scaled(quarter * Fraction(-2))
    for i in range(N):
        beta = tuple(1 if t == i else 0 for t in range(N))
        mono = BlockPoly.monomial(layout, layout.x_key(i))
        a_terms[beta] = mono.scaled(quarter * Fraction(-(N - 1)))
    a_terms[zero_beta] = (r2_all * _singular_terms(layout)).scaled(Fraction(1, 2))
    A = DiffOp(layout, a_terms)

    # B = H_1 - H_2 = -(hbar^2/2)(sum_{i<=n} d_i^2 - sum_{i>n} d_i^2)
    #     + (omega^2/2)(r1^2 - r2^2) + c1/r1^2 - c2/r2^2
    # (the antisymmetric singular sign is forced by [H, B] = 0)
    b_terms: dict[tuple[int, ...], BlockPoly] = {}
    for i in range(N):
        beta = tuple(2 if t == i else 0 for t in range(N))
        sign = Fraction(-1, 2) if i < n else Fraction(1, 2)
        b_terms[beta] = BlockPoly.scalar(layout, hbar2 * sign)
    r1 = _r_squared(layout, range(n))
    r2 = _r_squared(layout, range(n, N))
    b_terms[zero_beta] = ((r1 - r2).scaled(omega2 * Fraction(1, 2))
                          + _singular_terms(layout, sign2=-1))
    B = DiffOp(layout, b_terms)

    J = {(i + 1, jdx + 1): angular_momentum(layout, i, jdx)
         for i in range(n) for jdx in range(i + 1, n)}
    K = {(i + 1, jdx + 1): angular_momentum(layout, i, jdx)
         for i in range(n, N) for jdx in range(i + 1, N)}

    J2 = DiffOp.zero(layout)
    for op in J.values():
        J2 = J2 - op * op
    K2 = DiffOp.zero(layout)
    for op in K.values():
        K2 = K2 - op * op

    return QuantumGenerators(layout=layout, H=H, A=A, B=B, J=J, K=K, J2=J2, K2=K2)


# -- classical counterparts ---------------------------------------------------


@dataclass(frozen=True)
class ClassicalGenerators:
    layout: BlockLayout
    H: PhaseFn
    A: PhaseFn
    B: PhaseFn
    J: dict[tuple[int, int], PhaseFn] = field(repr=False)
    K: dict[tuple[int, int], PhaseFn] = field(repr=False)
    J2: PhaseFn = field(repr=False)
    K2: PhaseFn = field(repr=False)

    @property
    def N(self) -> int:
        return self.layout.N

    @property
    def n(self) -> int:
        return self.layout.n


def _phase_r_squared(layout: BlockLayout, indices) -> PhaseFn:
    out = PhaseFn.zero(layout)
    for i in indices:
        out = out + PhaseFn.coordinate(layout, i, 2)
    return out


def _phase_singular(layout: BlockLayout) -> PhaseFn:
    c1 = BlockPoly.scalar(layout, ParamScalar.c1())
    c2 = BlockPoly.scalar(layout, ParamScalar.c2())
    return PhaseFn(BlockPoly(layout, c1.num, 1, 0, reduce=False)
                   + BlockPoly(layout, c2.num, 0, 1, reduce=False))


def classical_angular_momentum(layout: BlockLayout, i: int, jdx: int) -> PhaseFn:
    return (PhaseFn.coordinate(layout, i) * PhaseFn.momentum(layout, jdx)
            - PhaseFn.coordinate(layout, jdx) * PhaseFn.momentum(layout, i))


def build_classical(N: int, n: int) -> ClassicalGenerators:
    """Classical H, A, B, angular generators and Casimirs for (N, n)."""
    layout = PhaseFn.layout(N, n)
    omega2 = ParamScalar.omega(2)

    p2_all = PhaseFn.zero(layout)
    for i in range(N):
        p2_all = p2_all + PhaseFn.momentum(layout, i, 2)
    r2_all = _phase_r_squared(layout, range(N))
    singular = _phase_singular(layout)

    H = p2_all.scaled(Fraction(1, 2)) + r2_all.scaled(omega2 * Fraction(1, 2)) + singular

    # A = (1/4) sum_{i<j} (x_i p_j - x_j p_i)^2 + (r^2/2)(c1/r1^2 + c2/r2^2)
    total_l2 = PhaseFn.zero(layout)
    for i in range(N):
        for jdx in range(i + 1, N):
            lij = classical_angular_momentum(layout, i, jdx)
            total_l2 = total_l2 + lij * lij
    A = total_l2.scaled(Fraction(1, 4)) + (r2_all * singular).scaled(Fraction(1, 2))

    p2_1 = PhaseFn.zero(layout)
    for i in range(n):
        p2_1 = p2_1 + PhaseFn.momentum(layout, i, 2)
    p2_2 = p2_all - p2_1
    r1 = _phase_r_squared(layout, range(n))
    r2 = _phase_r_squared(layout, range(n, N))
    # same antisymmetric singular sign as the quantum B (forced by {H, B} = 0)
    c1 = BlockPoly.scalar(layout, ParamScalar.c1())
    c2neg = BlockPoly.scalar(layout, ParamScalar.c2(1, -1))
    singular_b = PhaseFn(BlockPoly(layout, c1.num, 1, 0, reduce=False)
                         + BlockPoly(layout, c2neg.num, 0, 1, reduce=False))
    B = ((p2_1 - p2_2).scaled(Fraction(1, 2))
         + (r1 - r2).scaled(omega2 * Fraction(1, 2)) + singular_b)

    J = {(i + 1, jdx + 1): classical_angular_momentum(layout, i, jdx)
         for i in range(n) for jdx in range(i + 1, n)}
    K = {(i + 1, jdx + 1): classical_angular_momentum(layout, i, jdx)
         for i in range(n, N) for jdx in range(i + 1, N)}

    J2 = PhaseFn.zero(layout)
    for fn in J.values():
        J2 = J2 + fn * fn
    K2 = PhaseFn.zero(layout)
    for fn in K.values():
        K2 = K2 + fn * fn

    return ClassicalGenerators(layout=layout, H=H, A=A, B=B, J=J, K=K, J2=J2, K2=K2)
