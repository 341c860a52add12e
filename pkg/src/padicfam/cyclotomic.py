"""Cyclotomic bookkeeping: the group ring of Delta = (Z/p)^x, its
orthogonal idempotents, the inversion involution of the cyclotomic
variable, and the splitting of Delta-equivariant series into character
components.

Delta has order p - 1, invertible since p is odd, so the group ring
splits completely; character values are Teichmuller lifts.
"""

from __future__ import annotations

from typing import Sequence

from .errors import MismatchedRings
from .padic import OKElement, RingParams
from .series import FormalSeries


class DeltaElement:
    """An element of O_K[Delta], stored as one coefficient per group
    element a = 1..p-1."""

    __slots__ = ("params", "coeffs")

    def __init__(self, params: RingParams, coeffs: Sequence[OKElement]):
        coeffs = tuple(coeffs)
        if len(coeffs) != params.p - 1:
            raise ValueError(f"need {params.p - 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("DeltaElement is immutable")

    @classmethod
    def zero(cls, params: RingParams) -> DeltaElement:
        return cls(params, (params.zero(),) * (params.p - 1))

    @classmethod
    def group_like(cls, params: RingParams, a: int) -> DeltaElement:
        a %= params.p
        if a == 0:
            raise ValueError("0 is not a group element of (Z/p)^x")
        coeffs = [params.zero()] * (params.p - 1)
        coeffs[a - 1] = params.one()
        return cls(params, coeffs)

    @classmethod
    def one(cls, params: RingParams) -> DeltaElement:
        return cls.group_like(params, 1)

    def coefficient(self, a: int) -> OKElement:
        return self.coeffs[a % self.params.p - 1]

    def _check(self, other: DeltaElement):
        if self.params != other.params:
            raise MismatchedRings("group-ring operands disagree")

    def __add__(self, other: DeltaElement) -> DeltaElement:
        self._check(other)
        return DeltaElement(self.params, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> DeltaElement:
        return DeltaElement(self.params, tuple(-x for x in self.coeffs))

    def __sub__(self, other: DeltaElement) -> DeltaElement:
        return self + (-other)

    def __mul__(self, other) -> DeltaElement:
        if isinstance(other, OKElement):
            return DeltaElement(self.params, tuple(x * other for x in self.coeffs))
        self._check(other)
        p = self.params.p
        out = [self.params.zero()] * (p - 1)
        for a in range(1, p):
            xa = self.coeffs[a - 1]
            if xa.is_zero() and xa.precision >= self.params.prec:
                continue
            for b in range(1, p):
                out[(a * b) % p - 1] = out[(a * b) % p - 1] + xa * other.coeffs[b - 1]
        return DeltaElement(self.params, out)

    def invert_group(self) -> DeltaElement:
        """The involution [a] -> [a^(-1)]."""
        p = self.params.p
        out = [None] * (p - 1)
        for a in range(1, p):
            out[pow(a, -1, p) - 1] = self.coeffs[a - 1]
        return DeltaElement(self.params, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeltaElement):
            return NotImplemented
        return self.params == other.params and all(
            x == y for x, y in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.coeffs)

    def __repr__(self):
        terms = [
            f"{x.token()}*[{a}]"
            for a, x in enumerate(self.coeffs, start=1)
            if not x.is_zero()
        ]
        return " + ".join(terms) if terms else "0"


def character_value(params: RingParams, a: int, j: int) -> OKElement:
    """omega^j evaluated at the group element a."""
    j %= params.p - 1
    return params.teichmuller(a) ** j


def idempotent(params: RingParams, j: int) -> DeltaElement:
    """e_eta for eta = omega^j: |Delta|^(-1) sum eta^(-1)(a) [a]."""
    p = params.p
    norm = params.from_int(p - 1).inv()
    coeffs = [character_value(params, a, -j) * norm for a in range(1, p)]
    return DeltaElement(params, coeffs)


def idempotent_decompose(x: DeltaElement, j: int) -> DeltaElement:
    """The omega^j-isotypic component e_eta * x."""
    return idempotent(x.params, j) * x


def iota_involution(f: FormalSeries) -> FormalSeries:
    """The ring involution of the cyclotomic variable, S -> (1+S)^(-1) - 1,
    induced by inverting group elements."""
    if f.nvars != 1:
        raise ValueError("the involution acts on one-variable series")
    params = f.params
    one_plus = FormalSeries(
        params,
        (params.one(), params.one()),
        vars=f.vars,
        orders=f.orders,
        k0=f.k0,
        e0_exp=f.e0_exp,
    )
    t = one_plus.inv() - FormalSeries.one(
        params, vars=f.vars, orders=f.orders, k0=f.k0, e0_exp=f.e0_exp
    )
    return f.compose(t)


def cyclotomic_split(
    coeffs: Sequence[DeltaElement], *, order: int | None = None
) -> tuple[FormalSeries, ...]:
    """Split a series with O_K[Delta] coefficients into its p-1 character
    components: component j has n-th coefficient sum_a x_n(a) omega(a)^j."""
    if not coeffs:
        raise ValueError("need at least one coefficient")
    params = coeffs[0].params
    p = params.p
    d = order if order is not None else max(len(coeffs), 1)
    out = []
    for j in range(p - 1):
        comp = []
        for x in coeffs:
            acc = params.zero()
            for a in range(1, p):
                acc = acc + x.coeffs[a - 1] * character_value(params, a, j)
            comp.append(acc)
        out.append(FormalSeries(params, tuple(comp), vars=("S",), orders=(d,)))
    return tuple(out)


def cyclotomic_recombine(components: Sequence[FormalSeries]) -> list[DeltaElement]:
    """Inverse of :func:`cyclotomic_split` by character orthogonality."""
    if not components:
        raise ValueError("need at least one component")
    params = components[0].params
    p = params.p
    if len(components) != p - 1:
        raise ValueError(f"need {p - 1} components, got {len(components)}")
    d = components[0].order
    norm = params.from_int(p - 1).inv()
    out = []
    for n in range(d):
        coeffs = []
        for a in range(1, p):
            acc = params.zero()
            for j in range(p - 1):
                acc = acc + components[j].coeffs[n] * character_value(params, a, -j)
            coeffs.append(acc * norm)
        out.append(DeltaElement(params, coeffs))
    return out
