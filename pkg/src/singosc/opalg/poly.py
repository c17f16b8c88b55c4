"""Sparse coordinate polynomials over the parameter ring, with r1^2/r2^2 denominators.

Monomials are packed into single integers: one 7-bit field per coordinate
exponent (x_1 is the most significant, so integer order on keys is lex order
with x_1 first), followed by four fields for the parameter exponents.
Monomial multiplication is then plain integer addition; no individual
exponent may reach 128, which holds by a wide margin for every operator
built here.

A ``BlockPoly`` is numerator/(r1^2)^j/(r2^2)^k where r1^2 = x_1^2+..+x_n^2
and r2^2 = x_{n+1}^2+..+x_N^2.  The canonical form divides out every exact
factor of r1^2 (resp. r2^2) from the numerator while j (resp. k) is positive;
for a one-coordinate block the divisor degenerates to the square of that
coordinate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .scalars import ParamScalar, Exponents

_BITS = 7
_MASK = (1 << _BITS) - 1


class BlockLayout:
    """Variable layout for a concrete (N, n) split, optionally with momenta."""

    __slots__ = (
        "N", "n", "momenta", "nfields", "xshift", "pshift", "param_shift",
        "r1sq", "r2sq", "_lead", "_rest", "_rpow",
    )

    def __init__(self, N: int, n: int, momenta: bool = False):
        if N < 2 or not 1 <= n <= N - 1:
            raise ValueError(f"invalid dimension split (N, n) = ({N}, {n})")
        self.N = N
        self.n = n
        self.momenta = momenta
        ncoord = 2 * N if momenta else N
        self.nfields = ncoord + 4
        top = self.nfields - 1
        self.xshift = tuple((top - i) * _BITS for i in range(N))
        self.pshift = tuple((top - N - i) * _BITS for i in range(N)) if momenta else ()
        self.param_shift = tuple((3 - t) * _BITS for t in range(4))
        self.r1sq = {2 << self.xshift[i]: Fraction(1) for i in range(n)}
        self.r2sq = {2 << self.xshift[i]: Fraction(1) for i in range(n, N)}
        # lex-leading variable of each block divisor, plus the divisor remainder
        # (r_block^2 = x_lead^2 + rest; rest is empty for a one-coordinate block)
        self._lead = {1: self.xshift[0], 2: self.xshift[n]}
        self._rest = {1: {2 << self.xshift[i]: Fraction(1) for i in range(1, n)},
                      2: {2 << self.xshift[i]: Fraction(1) for i in range(n + 1, N)}}
        self._rpow: dict[tuple[int, int], dict[int, Fraction]] = {}

    def same_split(self, other: "BlockLayout") -> bool:
        return self.N == other.N and self.n == other.n and self.momenta == other.momenta

    # -- key packing -------------------------------------------------------

    def x_key(self, i: int, power: int = 1) -> int:
        return power << self.xshift[i]

    def p_key(self, i: int, power: int = 1) -> int:
        return power << self.pshift[i]

    def param_key(self, exps: Exponents) -> int:
        s = self.param_shift
        return (exps[0] << s[0]) | (exps[1] << s[1]) | (exps[2] << s[2]) | (exps[3] << s[3])

    def unpack(self, key: int) -> tuple[tuple[int, ...], tuple[int, ...], Exponents]:
        """Split a packed key into (x exponents, p exponents, parameter exponents)."""
        xe = tuple((key >> s) & _MASK for s in self.xshift)
        pe = tuple((key >> s) & _MASK for s in self.pshift)
        pa = tuple((key >> s) & _MASK for s in self.param_shift)
        return xe, pe, pa  # type: ignore[return-value]

    def embed_scalar(self, scalar: ParamScalar) -> list[tuple[int, Fraction]]:
        return [(self.param_key(e), c) for e, c in scalar.terms.items()]

    def block_of(self, i: int) -> int:
        return 1 if i < self.n else 2

    def rpow(self, block: int, power: int) -> dict[int, Fraction]:
        """(r_block^2)**power as a raw term dict, memoized."""
        if power == 0:
            return {0: Fraction(1)}
        cached = self._rpow.get((block, power))
        if cached is None:
            base = self.r1sq if block == 1 else self.r2sq
            cached = base
            for _ in range(power - 1):
                cached = _raw_mul(cached, base)
            self._rpow[(block, power)] = cached
        return cached


# -- raw term-dict helpers (hot paths) --------------------------------------

def _raw_mul(a: dict[int, Fraction], b: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    _raw_mul_into(out, a, b, 1)
    return out


def _raw_mul_into(dst: dict[int, Fraction], a: dict[int, Fraction],
                  b: dict[int, Fraction], scale) -> None:
    if not a or not b or not scale:
        return
    if len(a) > len(b):
        a, b = b, a
    one = scale == 1
    get = dst.get
    for ka, ca in a.items():
        cas = ca if one else ca * scale
        for kb, cb in b.items():
            key = ka + kb
            cur = get(key)
            if cur is None:
                dst[key] = cas * cb
            else:
                cur = cur + cas * cb
                if cur:
                    dst[key] = cur
                else:
                    del dst[key]


def _raw_add_into(dst: dict[int, Fraction], src: dict[int, Fraction], scale) -> None:
    if not scale:
        return
    get = dst.get
    for key, coeff in src.items():
        cur = get(key)
        if cur is None:
            dst[key] = coeff * scale
        else:
            cur = cur + coeff * scale
            if cur:
                dst[key] = cur
            else:
                del dst[key]


def _raw_diff(terms: dict[int, Fraction], shift: int) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    unit = 1 << shift
    for key, coeff in terms.items():
        e = (key >> shift) & _MASK
        if e:
            out[key - unit] = coeff * e
    return out


def _try_divide(terms: dict[int, Fraction], rest: dict[int, Fraction],
                lead_shift: int) -> dict[int, Fraction] | None:
    """Exact division by x_lead^2 + rest, where x_lead is lex-largest in the divisor.

    Slicing the numerator by the lead exponent turns the division into the
    recurrence Q_{d-2} = A_d - Q_d * rest (descending d), with the d = 1, 0
    slices required to cancel exactly.  Returns the quotient or None.
    """
    slices: dict[int, dict[int, Fraction]] = {}
    for key, coeff in terms.items():
        e = (key >> lead_shift) & _MASK
        base = key - (e << lead_shift)
        sl = slices.get(e)
        if sl is None:
            slices[e] = {base: coeff}
        else:
            sl[base] = coeff
    if not slices:
        return {}
    dmax = max(slices)
    if dmax < 2:
        return None
    quot_slices: dict[int, dict[int, Fraction]] = {}
    for d in range(dmax, 1, -1):
        qd = dict(slices.get(d, ()))
        upper = quot_slices.get(d)
        if upper and rest:
            _raw_mul_into(qd, upper, rest, -1)
        if qd:
            quot_slices[d - 2] = qd
    for d in (1, 0):
        remainder = dict(slices.get(d, ()))
        upper = quot_slices.get(d)
        if upper and rest:
            _raw_mul_into(remainder, upper, rest, -1)
        if remainder:
            return None
    out: dict[int, Fraction] = {}
    for d, sl in quot_slices.items():
        base = d << lead_shift
        for key, coeff in sl.items():
            out[key + base] = coeff
    return out


class BlockPoly:
    """numerator / (r1^2)^j / (r2^2)^k in canonical reduced form."""

    __slots__ = ("layout", "num", "j", "k")

    def __init__(self, layout: BlockLayout, num: dict[int, Fraction] | None = None,
                 j: int = 0, k: int = 0, reduce: bool = True):
        self.layout = layout
        self.num = num or {}
        self.j = j
        self.k = k
        if reduce:
            self._reduce()

    # -- construction helpers ----------------------------------------------

    @classmethod
    def zero(cls, layout: BlockLayout) -> BlockPoly:
        return cls(layout, {}, 0, 0, reduce=False)

    @classmethod
    def scalar(cls, layout: BlockLayout, value: ParamScalar | Fraction | int) -> BlockPoly:
        if not isinstance(value, ParamScalar):
            value = ParamScalar.rational(value)
        return cls(layout, {layout.param_key(e): c for e, c in value.terms.items()}, 0, 0,
                   reduce=False)

    @classmethod
    def monomial(cls, layout: BlockLayout, key: int,
                 coeff: ParamScalar | Fraction | int = 1, j: int = 0, k: int = 0) -> BlockPoly:
        if isinstance(coeff, ParamScalar):
            num = {key + layout.param_key(e): c for e, c in coeff.terms.items()}
        else:
            coeff = Fraction(coeff)
            num = {key: coeff} if coeff else {}
        return cls(layout, num, j, k)

    def _reduce(self) -> None:
        if not self.num:
            self.j = self.k = 0
            return
        layout = self.layout
        while self.j > 0:
            quot = _try_divide(self.num, layout._rest[1], layout._lead[1])
            if quot is None:
                break
            self.num = quot
            self.j -= 1
        while self.k > 0:
            quot = _try_divide(self.num, layout._rest[2], layout._lead[2])
            if quot is None:
                break
            self.num = quot
            self.k -= 1

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: BlockPoly) -> BlockPoly:
        layout = self.layout
        j = max(self.j, other.j)
        k = max(self.k, other.k)
        out: dict[int, Fraction] = {}
        for val in (self, other):
            terms = val.num
            dj, dk = j - val.j, k - val.k
            if dj:
                terms = _raw_mul(terms, layout.rpow(1, dj))
            if dk:
                terms = _raw_mul(terms, layout.rpow(2, dk))
            _raw_add_into(out, terms, 1)
        return BlockPoly(layout, out, j, k)

    def __sub__(self, other: BlockPoly) -> BlockPoly:
        return self + (-other)

    def __neg__(self) -> BlockPoly:
        return BlockPoly(self.layout, {key: -c for key, c in self.num.items()},
                         self.j, self.k, reduce=False)

    def __mul__(self, other: BlockPoly) -> BlockPoly:
        return BlockPoly(self.layout, _raw_mul(self.num, other.num),
                         self.j + other.j, self.k + other.k)

    def scaled(self, value: ParamScalar | Fraction | int) -> BlockPoly:
        if isinstance(value, ParamScalar):
            out: dict[int, Fraction] = {}
            for frag, coeff in self.layout.embed_scalar(value):
                for key, c in self.num.items():
                    nk = key + frag
                    cur = out.get(nk, Fraction(0)) + c * coeff
                    if cur:
                        out[nk] = cur
                    else:
                        out.pop(nk, None)
            return BlockPoly(self.layout, out, self.j, self.k)
        value = Fraction(value)
        if not value:
            return BlockPoly.zero(self.layout)
        return BlockPoly(self.layout, {key: c * value for key, c in self.num.items()},
                         self.j, self.k, reduce=False)

    # -- calculus ------------------------------------------------------------

    def diff_x(self, i: int) -> BlockPoly:
        """Partial derivative in x_{i+1}, with the quotient rule for the r^2 powers."""
        layout = self.layout
        shift = layout.xshift[i]
        dnum = _raw_diff(self.num, shift)
        block = layout.block_of(i)
        exp = self.j if block == 1 else self.k
        if exp == 0:
            return BlockPoly(layout, dnum, self.j, self.k)
        rsq = layout.r1sq if block == 1 else layout.r2sq
        out = _raw_mul(dnum, rsq)
        _raw_mul_into(out, self.num, {layout.x_key(i): Fraction(-2 * exp)}, 1)
        if block == 1:
            return BlockPoly(layout, out, self.j + 1, self.k)
        return BlockPoly(layout, out, self.j, self.k + 1)

    def diff_p(self, i: int) -> BlockPoly:
        return BlockPoly(self.layout, _raw_diff(self.num, self.layout.pshift[i]),
                         self.j, self.k, reduce=False)

    # -- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BlockPoly):
            return NotImplemented
        return (self.j, self.k) == (other.j, other.k) and self.num == other.num

    def __hash__(self):
        return hash((self.j, self.k, frozenset(self.num.items())))

    def equivalent(self, other: BlockPoly) -> bool:
        """Equality via cross-multiplied numerators, independent of reduction."""
        layout = self.layout
        left = dict(self.num)
        if other.j - self.j > 0:
            left = _raw_mul(left, layout.rpow(1, other.j - self.j))
        if other.k - self.k > 0:
            left = _raw_mul(left, layout.rpow(2, other.k - self.k))
        right = dict(other.num)
        if self.j - other.j > 0:
            right = _raw_mul(right, layout.rpow(1, self.j - other.j))
        if self.k - other.k > 0:
            right = _raw_mul(right, layout.rpow(2, self.k - other.k))
        return left == right

    def term_count(self) -> int:
        return len(self.num)

    def substitute_params(self, values) -> BlockPoly:
        """Substitute exact rationals for a subset of (hbar, omega, c1, c2)."""
        layout = self.layout
        from .scalars import VAR_NAMES
        subs = [(layout.param_shift[VAR_NAMES.index(name)], Fraction(v))
                for name, v in values.items()]
        out: dict[int, Fraction] = {}
        for key, coeff in self.num.items():
            nk = key
            for shift, v in subs:
                e = (nk >> shift) & _MASK
                if e:
                    coeff = coeff * v ** e
                    nk -= e << shift
            if not coeff:
                continue
            cur = out.get(nk, Fraction(0)) + coeff
            if cur:
                out[nk] = cur
            else:
                out.pop(nk, None)
        return BlockPoly(layout, out, self.j, self.k)

    def x_degree(self) -> int:
        layout = self.layout
        best = 0
        for key in self.num:
            deg = sum((key >> s) & _MASK for s in layout.xshift)
            if deg > best:
                best = deg
        return best

    def p_degree(self) -> int:
        layout = self.layout
        best = 0
        for key in self.num:
            deg = sum((key >> s) & _MASK for s in layout.pshift)
            if deg > best:
                best = deg
        return best

    def as_dict(self) -> dict[tuple[int, ...], ParamScalar]:
        """Numerator grouped as {coordinate exponents: ParamScalar}, for inspection."""
        grouped: dict[tuple[int, ...], dict] = {}
        for key, coeff in self.num.items():
            xe, pe, pa = self.layout.unpack(key)
            grouped.setdefault(xe + pe, {})[pa] = coeff
        return {mono: ParamScalar(terms) for mono, terms in grouped.items()}

    def iter_terms(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self.num.items())

    def __repr__(self) -> str:
        if not self.num:
            return "0"
        parts = []
        for key in sorted(self.num, reverse=True):
            xe, pe, pa = self.layout.unpack(key)
            factors = [str(self.num[key])]
            for i, e in enumerate(xe):
                if e:
                    factors.append(f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}")
            for i, e in enumerate(pe):
                if e:
                    factors.append(f"p{i + 1}^{e}" if e > 1 else f"p{i + 1}")
            from .scalars import VAR_NAMES
            for name, e in zip(VAR_NAMES, pa):
                if e:
                    factors.append(f"{name}^{e}" if e > 1 else name)
            parts.append("*".join(factors))
        body = " + ".join(parts)
        if self.j or self.k:
            return f"({body}) / (r1^{2 * self.j} r2^{2 * self.k})"
        return body
