"""Synthetic finitely generated modules in structure-theorem normal form:
a free part plus elementary torsion pieces, over the one-variable model
ring or its two-variable cyclotomic deformation.

Implemented here: characteristic ideals, mu/lambda of torsion modules,
specialization at a point of the disk (with the rank-jump bookkeeping at
roots), the lambda-constancy sweep over classical weights, and the
criterion for a two-variable torsion module to be finitely generated over
the one-variable ring.

Specializing a torsion generator that vanishes at working precision is
resolved by its Newton polygon: when the minimal coefficient valuation at
the point is attained uniquely the value is certifiably nonzero of that
valuation (only its digits are gone); a tied minimum means the point is
inside a root neighbourhood at this precision and counts as a rank jump.
Anything else raises PrecisionAmbiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    MismatchedRings,
    NotTorsion,
    OutsideDomain,
    ParseError,
    PrecisionAmbiguous,
)
from .padic import OKElement, RingParams
from .series import DEFAULT_ORDER, FormalSeries


@dataclass(frozen=True)
class ModulePresentation:
    """free_rank copies of the ring plus pieces ring/(g_i^(m_i)), with each
    generator nonzero at precision."""

    free_rank: int
    torsion: tuple[tuple[FormalSeries, int], ...]

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        torsion = tuple((g, int(m)) for g, m in self.torsion)
        object.__setattr__(self, "torsion", torsion)
        for g, m in torsion:
            if m < 1:
                raise ValueError("torsion multiplicities must be >= 1")
            if g.is_zero_at_precision():
                raise PrecisionAmbiguous(
                    "a torsion generator vanishes at precision; the presentation "
                    "is not in normal form"
                )
        kinds = {(g.params, g.vars, g.orders, g.k0, g.e0_exp) for g, _ in torsion}
        if len(kinds) > 1:
            raise MismatchedRings("torsion generators disagree in ring or orders")

    @property
    def nvars(self) -> int:
        return len(self.torsion[0][0].vars) if self.torsion else 1

    @property
    def params(self) -> RingParams | None:
        return self.torsion[0][0].params if self.torsion else None

    def is_torsion(self) -> bool:
        return self.free_rank == 0

    def direct_sum(self, other: ModulePresentation) -> ModulePresentation:
        return ModulePresentation(
            self.free_rank + other.free_rank, self.torsion + other.torsion
        )


def char_ideal(M: ModulePresentation, params: RingParams | None = None) -> FormalSeries:
    """Canonical generator of the characteristic ideal: the product of the
    torsion generators with multiplicity, normalized to p^mu times its
    distinguished polynomial."""
    if M.torsion and M.nvars != 1:
        raise ValueError("characteristic ideals are computed over the one-variable ring")
    if not M.torsion:
        if params is None:
            raise ValueError("a torsion-free presentation needs explicit parameters")
        return FormalSeries.one(params)
    g0 = M.torsion[0][0]
    prod = FormalSeries.one(
        g0.params, vars=g0.vars, orders=g0.orders, k0=g0.k0, e0_exp=g0.e0_exp
    )
    for g, m in M.torsion:
        for _ in range(m):
            prod = prod * g
    w = prod.weierstrass_prep()
    return w.distinguished.scalar_mul(g0.params.p_power(w.mu))


def mu_of_module(M: ModulePresentation) -> Fraction:
    """Sum of the p-power contents of the torsion generators; infinite
    (raises NotTorsion) when a free part is present."""
    if not M.is_torsion():
        raise NotTorsion(f"free rank {M.free_rank} > 0, mu is infinite")
    total = Fraction(0)
    for g, m in M.torsion:
        total += m * g.mu_invariant()
    return total


def lambda_of_module(M: ModulePresentation) -> int:
    if not M.is_torsion():
        raise NotTorsion(f"free rank {M.free_rank} > 0, lambda is infinite")
    return sum(m * g.lambda_invariant() for g, m in M.torsion)


@dataclass(frozen=True)
class Specialization:
    """Outcome of reducing a one-variable presentation at a point: the rank
    over O_K and the elementary finite-part orders."""

    rank: int
    finite: tuple[OKElement, ...]


def _certify_vanishing(g: FormalSeries, u: OKElement, value: OKElement):
    """Classify a zero-at-precision evaluation: returns ('root', None) or
    ('nonzero', valuation_digits).

    A tie in the term valuations means cancellation is possible, so the
    point sits inside a root neighbourhood at this precision.  A unique
    minimum pins the valuation exactly, provided no digit-starved
    coefficient could undercut it.
    """
    vu = u.valuation_digits()
    if vu is None:
        vu = u.precision
    known = []
    unknown_floor = None
    for i, c in enumerate(g.coeffs):
        vc = c.valuation_digits()
        if vc is None:
            b = c.precision + i * vu
            unknown_floor = b if unknown_floor is None else min(unknown_floor, b)
        else:
            known.append(vc + i * vu)
    if not known:
        raise PrecisionAmbiguous("every coefficient of the generator lost its digits")
    w = min(known)
    if known.count(w) > 1:
        return "root", None
    if unknown_floor is not None and w >= unknown_floor:
        raise PrecisionAmbiguous(
            f"the evaluation vanished at precision and coefficients known only "
            f"to {unknown_floor} digits could dominate the term of valuation {w}"
        )
    if w < value.precision:
        raise PrecisionAmbiguous(
            f"the evaluation vanished at precision {value.precision} yet its "
            f"terms assert valuation {w}; inconsistent input data"
        )
    return "nonzero", w


def specialize_at(M: ModulePresentation, u: OKElement):
    """Reduce the presentation at a point of positive valuation.

    One-variable input yields a :class:`Specialization`: the O_K-rank
    grows by one for every torsion generator vanishing at the point, the
    others contribute finite parts O_K/(g_i(u)^(m_i)).  Two-variable input
    substitutes U = u and returns the one-variable presentation in the
    cyclotomic variable.
    """
    vd = u.valuation_digits()
    if vd is not None and vd <= 0:
        raise OutsideDomain("specialization point must have positive valuation")
    if M.nvars == 2:
        rows = []
        for g, m in M.torsion:
            spec = g.evaluate_u(u)
            if spec.is_zero_at_precision():
                raise PrecisionAmbiguous(
                    "a deformed generator vanished identically under substitution"
                )
            rows.append((spec, m))
        return ModulePresentation(M.free_rank, tuple(rows))
    rank = M.free_rank
    finite = []
    for g, m in M.torsion:
        value = g.evaluate(u)
        if not value.is_zero():
            finite.append(value**m)
            continue
        kind, w = _certify_vanishing(g, u, value)
        if kind == "root":
            rank += 1
        else:
            finite.append(g.params.p_power(Fraction(w * m, g.params.e)))
    return Specialization(rank, tuple(finite))


@dataclass(frozen=True)
class SweepReport:
    """lambda across a sweep of classical points: per-point values, the
    generic value, exceptional points and their root certification."""

    generic_lambda: int
    lambdas: tuple[tuple[int, int], ...]
    exceptional: tuple[int, ...]
    degree_bound: int
    certified: tuple[tuple[int, bool], ...]

    @property
    def ok(self) -> bool:
        return len(self.exceptional) <= self.degree_bound and all(
            flag for _, flag in self.certified
        )


def lambda_constancy_sweep(
    M: ModulePresentation,
    points: Iterable[int],
    k0: int,
    e0_exp: int,
    params: RingParams | None = None,
) -> SweepReport:
    """Specialize at every classical weight and compare the ranks with the
    free rank; exceptional weights are certified against roots of the
    characteristic ideal found through Weierstrass preparation."""
    if M.torsion:
        params = M.params
    elif params is None:
        raise ValueError("a torsion-free presentation needs explicit parameters")
    lambdas = []
    exceptional = []
    for k in sorted(points):
        u = params.from_int(k - k0).scale_pi(-e0_exp)
        if not (u.is_integral() and (u.is_zero() or u.valuation_digits() > 0)):
            raise OutsideDomain(
                f"weight {k} leaves the open disk after rescaling by pi^{e0_exp}"
            )
        lam_k = specialize_at(M, u).rank
        lambdas.append((k, lam_k))
        if lam_k != M.free_rank:
            exceptional.append(k)
    bound = sum(m * g.lambda_invariant() for g, m in M.torsion)
    certified = []
    if exceptional:
        dist = char_ideal(M).weierstrass_prep().distinguished
        for k in exceptional:
            u = params.from_int(k - k0).scale_pi(-e0_exp)
            certified.append((k, dist.evaluate(u).is_zero()))
    return SweepReport(
        M.free_rank, tuple(lambdas), tuple(exceptional), bound, tuple(certified)
    )


def mu_zero_criterion(M: ModulePresentation) -> bool:
    """Whether a two-variable torsion module is finitely generated over the
    one-variable ring: every generator must be distinguished in the
    cyclotomic variable up to a unit, i.e. some S-coefficient must be a
    unit of the U-ring."""
    if not M.is_torsion():
        raise NotTorsion("the criterion applies to torsion modules")
    if M.torsion and M.nvars != 2:
        raise ValueError("the criterion applies to two-variable modules")
    for g, _ in M.torsion:
        orders = [
            row.maximal_ideal_order()
            for row in g.s_rows()
            if row.maximal_ideal_order() is not None
        ]
        if not orders or min(orders) != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# module file format


def module_to_text(M: ModulePresentation) -> str:
    """Header ``vars free_rank``, then ``multiplicity literal`` per torsion
    piece (ring parameters travel separately)."""
    lines = [f"{M.nvars} {M.free_rank}"]
    for g, m in M.torsion:
        lines.append(f"{m} {g.literal()}")
    return "\n".join(lines) + "\n"


def module_from_text(
    text: str,
    params: RingParams,
    *,
    orders: tuple[int, ...] | None = None,
    k0: int = 0,
    e0_exp: int = 0,
) -> ModulePresentation:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty module file")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("module header must be 'vars free_rank'")
    try:
        nvars, free_rank = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ParseError(f"bad module header {lines[0]!r}") from exc
    if nvars not in (1, 2):
        raise ParseError("modules have one or two variables")
    vars_ = ("U",) if nvars == 1 else ("U", "S")
    if orders is None:
        orders = (DEFAULT_ORDER,) * nvars
    torsion = []
    for ln in lines[1:]:
        parts = ln.split(maxsplit=1)
        try:
            m = int(parts[0])
        except ValueError as exc:
            raise ParseError(f"bad multiplicity in {ln!r}") from exc
        literal = parts[1] if len(parts) > 1 else "0"
        g = FormalSeries.from_literal(
            params, literal, vars=vars_, orders=orders, k0=k0, e0_exp=e0_exp
        )
        torsion.append((g, m))
    return ModulePresentation(free_rank, tuple(torsion))
