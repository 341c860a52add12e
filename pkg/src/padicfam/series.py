"""Truncated power series over the fixed-precision local ring: the formal
model of a p-adic family and its cyclotomic deformation.

A one-variable series lives in O_K[[U]] truncated at an explicit order
(default 32); a two-variable series in O_K[[U,S]] is stored as a series in
S whose coefficients are series in U.  Operations never extend truncation
silently: mixing different orders raises.  The ``k0``/``e0_exp`` tags are
bookkeeping identifying U = (T - k0)/e0 with e0 of valuation e0_exp
pi-digits; they travel through arithmetic unchanged and must agree between
operands.

The key algorithm here is Weierstrass preparation at finite precision,
computed by iterated Weierstrass division driven to a fixed point (the
iteration stops when the update has no significant digits left).

Series are immutable values; all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    CoincidentNodes,
    InsufficientTruncation,
    MismatchedRings,
    NonUnitConstantTerm,
    NotPowerBounded,
    OutsideDomain,
    ParseError,
    ZeroAtPrecision,
)
from .padic import OKElement, RingParams

DEFAULT_ORDER = 32


class FormalSeries:
    """A truncated element of O_K[[U]] or O_K[[U,S]].

    ``vars`` is ``("U",)``, ``("S",)`` or ``("U", "S")``; ``orders`` gives
    the truncation order per variable.  Two-variable coefficients are
    indexed ``self[i, j]`` with i the U-exponent and j the S-exponent.
    ``exact_tail`` marks a genuine polynomial (all omitted coefficients
    are provably zero rather than unknown), which lifts the evaluation
    domain restriction.
    """

    __slots__ = ("params", "vars", "orders", "coeffs", "k0", "e0_exp", "exact_tail")

    def __init__(
        self,
        params: RingParams,
        coeffs,
        *,
        vars: tuple[str, ...] = ("U",),
        orders: tuple[int, ...] | None = None,
        k0: int = 0,
        e0_exp: int = 0,
        exact_tail: bool = False,
    ):
        if len(vars) not in (1, 2):
            raise ValueError("series must have one or two variables")
        zero = params.zero()
        if len(vars) == 1:
            coeffs = tuple(coeffs)
            order = orders[0] if orders else max(DEFAULT_ORDER, len(coeffs))
            if len(coeffs) > order:
                raise InsufficientTruncation(
                    f"{len(coeffs)} coefficients exceed truncation order {order}"
                )
            coeffs = coeffs + (zero,) * (order - len(coeffs))
            orders = (order,)
        else:
            rows = [tuple(r) for r in coeffs]
            if orders:
                du, ds = orders
            else:
                du = max(DEFAULT_ORDER, max((len(r) for r in rows), default=0))
                ds = max(DEFAULT_ORDER, len(rows))
            if len(rows) > ds or any(len(r) > du for r in rows):
                raise InsufficientTruncation("coefficients exceed truncation orders")
            rows = [r + (zero,) * (du - len(r)) for r in rows]
            rows += [(zero,) * du for _ in range(ds - len(rows))]
            coeffs = tuple(rows)
            orders = (du, ds)
        for c in self._iter_coeffs(coeffs, len(vars)):
            if not isinstance(c, OKElement) or c.params != params:
                raise MismatchedRings("series coefficients must share the ring parameters")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "vars", tuple(vars))
        object.__setattr__(self, "orders", tuple(orders))
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "k0", k0)
        object.__setattr__(self, "e0_exp", e0_exp)
        object.__setattr__(self, "exact_tail", exact_tail)

    def __setattr__(self, *a):
        raise AttributeError("FormalSeries is immutable")

    @staticmethod
    def _iter_coeffs(coeffs, nvars):
        if nvars == 1:
            yield from coeffs
        else:
            for row in coeffs:
                yield from row

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, params: RingParams, value, **kw) -> FormalSeries:
        if isinstance(value, int):
            value = params.from_int(value)
        kw.setdefault("exact_tail", True)
        return cls(params, (value,), **kw)

    @classmethod
    def zero(cls, params: RingParams, **kw) -> FormalSeries:
        return cls.constant(params, 0, **kw)

    @classmethod
    def one(cls, params: RingParams, **kw) -> FormalSeries:
        return cls.constant(params, 1, **kw)

    @classmethod
    def var_power(cls, params: RingParams, i: int, **kw) -> FormalSeries:
        kw.setdefault("exact_tail", True)
        return cls(params, (params.zero(),) * i + (params.one(),), **kw)

    @classmethod
    def from_ints(cls, params: RingParams, values: Iterable[int], **kw) -> FormalSeries:
        return cls(params, tuple(params.from_int(v) for v in values), **kw)

    # -- queries ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def order(self) -> int:
        return self.orders[0]

    def __getitem__(self, key) -> OKElement:
        if self.nvars == 1:
            return self.coeffs[key]
        i, j = key
        return self.coeffs[j][i]

    def s_rows(self) -> tuple[FormalSeries, ...]:
        """The S-coefficients of a two-variable series, as U-series."""
        if self.nvars != 2:
            raise ValueError("s_rows needs a two-variable series")
        return tuple(
            FormalSeries(
                self.params,
                row,
                vars=(self.vars[0],),
                orders=(self.orders[0],),
                k0=self.k0,
                e0_exp=self.e0_exp,
            )
            for row in self.coeffs
        )

    def is_zero_at_precision(self) -> bool:
        return all(c.is_zero() for c in self._iter_coeffs(self.coeffs, self.nvars))

    def degree(self) -> int | None:
        """Largest exponent with a nonzero-at-precision coefficient."""
        if self.nvars != 1:
            raise ValueError("degree is defined for one-variable series")
        deg = None
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                deg = i
        return deg

    def is_power_bounded(self) -> bool:
        return all(c.is_integral() for c in self._iter_coeffs(self.coeffs, self.nvars))

    # -- ring structure ---------------------------------------------------

    def _compat(self, other: FormalSeries):
        if (
            self.params != other.params
            or self.vars != other.vars
            or self.orders != other.orders
            or self.k0 != other.k0
            or self.e0_exp != other.e0_exp
        ):
            raise MismatchedRings("series operands disagree in ring, orders or disk tags")

    def _clone(self, coeffs, exact_tail: bool) -> FormalSeries:
        return FormalSeries(
            self.params,
            coeffs,
            vars=self.vars,
            orders=self.orders,
            k0=self.k0,
            e0_exp=self.e0_exp,
            exact_tail=exact_tail,
        )

    def __add__(self, other: FormalSeries) -> FormalSeries:
        self._compat(other)
        tail = self.exact_tail and other.exact_tail
        if self.nvars == 1:
            coeffs = tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        else:
            coeffs = tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.coeffs, other.coeffs)
            )
        return self._clone(coeffs, tail)

    def __neg__(self) -> FormalSeries:
        if self.nvars == 1:
            coeffs = tuple(-c for c in self.coeffs)
        else:
            coeffs = tuple(tuple(-c for c in row) for row in self.coeffs)
        return self._clone(coeffs, self.exact_tail)

    def __sub__(self, other: FormalSeries) -> FormalSeries:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, OKElement):
            return self.scalar_mul(other)
        self._compat(other)
        if self.nvars == 1:
            coeffs = _mul_1d(self.coeffs, other.coeffs, self.order)
            tail = (
                self.exact_tail
                and other.exact_tail
                and (self.degree() or 0) + (other.degree() or 0) < self.order
            )
            return self._clone(coeffs, tail)
        du, ds = self.orders
        rows = [[None] * du for _ in range(ds)]
        for ja, ra in enumerate(self.coeffs):
            for jb, rb in enumerate(other.coeffs):
                j = ja + jb
                if j >= ds:
                    break
                block = _mul_1d(ra, rb, du)
                target = rows[j]
                for i, v in enumerate(block):
                    target[i] = v if target[i] is None else target[i] + v
        zero = self.params.zero()
        coeffs = tuple(tuple(zero if v is None else v for v in row) for row in rows)
        return self._clone(coeffs, False)

    def scalar_mul(self, c: OKElement) -> FormalSeries:
        if c.params != self.params:
            raise MismatchedRings("scalar lives over different parameters")
        if self.nvars == 1:
            coeffs = tuple(a * c for a in self.coeffs)
        else:
            coeffs = tuple(tuple(a * c for a in row) for row in self.coeffs)
        return self._clone(coeffs, self.exact_tail)

    def scalar_div(self, c: OKElement) -> FormalSeries:
        if c.params != self.params:
            raise MismatchedRings("scalar lives over different parameters")
        if self.nvars == 1:
            coeffs = tuple(a / c for a in self.coeffs)
        else:
            coeffs = tuple(tuple(a / c for a in row) for row in self.coeffs)
        return self._clone(coeffs, self.exact_tail)

    def inv(self) -> FormalSeries:
        """Multiplicative inverse; the constant term must be a unit."""
        if self.nvars != 1:
            raise ValueError("series inversion is implemented for one variable")
        c0 = self.coeffs[0]
        if c0.is_zero() or c0.valuation_digits() != 0:
            raise NonUnitConstantTerm(
                f"constant term {c0} is not a unit, cannot invert the series"
            )
        b0 = c0.inv()
        out = [b0]
        for n in range(1, self.order):
            acc = None
            for k in range(1, n + 1):
                ak = self.coeffs[k]
                if ak.is_zero() and ak.precision >= self.params.prec:
                    continue
                term = ak * out[n - k]
                acc = term if acc is None else acc + term
            out.append(self.params.zero() if acc is None else -(b0 * acc))
        return self._clone(tuple(out), False)

    def truncate(self, order: int) -> FormalSeries:
        if self.nvars != 1:
            raise ValueError("truncate is implemented for one variable")
        if order > self.order:
            raise InsufficientTruncation("truncate cannot extend a series")
        return FormalSeries(
            self.params,
            self.coeffs[:order],
            vars=self.vars,
            orders=(order,),
            k0=self.k0,
            e0_exp=self.e0_exp,
            exact_tail=False,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSeries):
            return NotImplemented
        try:
            self._compat(other)
        except MismatchedRings:
            return False
        return all(
            a == b
            for a, b in zip(
                self._iter_coeffs(self.coeffs, self.nvars),
                self._iter_coeffs(other.coeffs, other.nvars),
            )
        )

    __hash__ = None

    # -- invariants -------------------------------------------------------

    def mu_invariant(self) -> Fraction:
        """Least coefficient valuation (the p-power content)."""
        if self.nvars != 1:
            raise ValueError("mu is defined for one-variable series")
        best = None
        for c in self.coeffs:
            v = c.valuation()
            if v is not None and (best is None or v < best):
                best = v
        if best is None:
            raise ZeroAtPrecision("all coefficients vanish at precision")
        return best

    def lambda_invariant(self) -> int:
        """Least exponent where the minimal valuation is attained."""
        mu = self.mu_invariant()
        for i, c in enumerate(self.coeffs):
            if c.valuation() == mu:
                return i
        raise AssertionError("unreachable")

    def maximal_ideal_order(self) -> int | None:
        """Order in the (pi, U)-adic filtration, counting pi-digits plus
        U-powers; None when zero at precision."""
        if self.nvars != 1:
            raise ValueError("maximal_ideal_order is defined for one-variable series")
        best = None
        for i, c in enumerate(self.coeffs):
            v = c.valuation_digits()
            if v is None:
                continue
            w = v + i
            if best is None or w < best:
                best = w
        return best

    # -- analytic operations ----------------------------------------------

    def evaluate(self, u: OKElement) -> OKElement:
        """Evaluate at a point of the open unit disk.

        For a genuine power series the point must have positive valuation
        and the result precision is capped by order * val(u), the bound on
        the discarded tail.  Polynomials (``exact_tail``) evaluate anywhere
        in O_K without a cap.
        """
        if self.nvars != 1:
            raise ValueError("evaluate needs a one-variable series")
        if u.params != self.params:
            raise MismatchedRings("evaluation point lives over different parameters")
        vd = u.valuation_digits()
        if vd is not None and vd < 0:
            raise OutsideDomain("evaluation point must be integral")
        cap = None
        if not self.exact_tail:
            if vd == 0:
                raise OutsideDomain(
                    "evaluation at a unit needs a polynomial, not a truncated series"
                )
            cap = self.order * (vd if vd is not None else u.precision)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * u + c
        if cap is not None and cap < acc.precision:
            acc = acc.with_precision(cap)
        return acc

    def reduce_mod_pk(self, u: OKElement) -> OKElement:
        """Reduction modulo the height-one prime at the point u; identical
        to evaluation but restricted to points of positive valuation."""
        vd = u.valuation_digits()
        if vd is not None and vd <= 0:
            raise OutsideDomain("specialization point must have positive valuation")
        return self.evaluate(u)

    def evaluate_u(self, u: OKElement) -> FormalSeries:
        """Substitute U = u in a two-variable series, leaving a series in S."""
        if self.nvars != 2:
            raise ValueError("evaluate_u needs a two-variable series")
        rows = self.s_rows()
        return FormalSeries(
            self.params,
            tuple(row.evaluate(u) for row in rows),
            vars=("S",),
            orders=(self.orders[1],),
        )

    def rescale(self, c: OKElement) -> FormalSeries:
        """Restriction to a smaller disk: U -> c*U with c integral."""
        if self.nvars != 1:
            raise ValueError("rescale needs a one-variable series")
        if not c.is_integral():
            raise NotPowerBounded("rescale factor must lie in O_K")
        out = []
        power = self.params.one()
        for i, a in enumerate(self.coeffs):
            out.append(a * power)
            if i + 1 < self.order:
                power = power * c
        vd = c.valuation_digits()
        return FormalSeries(
            self.params,
            tuple(out),
            vars=self.vars,
            orders=self.orders,
            k0=self.k0,
            e0_exp=self.e0_exp + (vd if vd is not None else 0),
            exact_tail=self.exact_tail,
        )

    def compose(self, inner: FormalSeries) -> FormalSeries:
        """Substitute another series (with vanishing constant term) for the
        variable."""
        if self.nvars != 1 or inner.nvars != 1:
            raise ValueError("compose needs one-variable series")
        if inner.params != self.params or inner.order != self.order:
            raise MismatchedRings("composition operands disagree")
        if not inner.coeffs[0].is_zero():
            raise OutsideDomain("inner series must have vanishing constant term")
        acc = FormalSeries(
            self.params,
            (self.coeffs[0],),
            vars=inner.vars,
            orders=inner.orders,
            k0=inner.k0,
            e0_exp=inner.e0_exp,
        )
        power = FormalSeries.one(self.params, vars=inner.vars, orders=inner.orders,
                                 k0=inner.k0, e0_exp=inner.e0_exp)
        for j in range(1, self.order):
            power = power * inner
            acc = acc + power.scalar_mul(self.coeffs[j])
        return acc

    def power_bounded_check(self) -> tuple[bool, Fraction]:
        """Integrality certificate: (all coefficients in O_K, worst
        denominator exponent in val(p) = 1 units)."""
        worst = Fraction(0)
        for c in self._iter_coeffs(self.coeffs, self.nvars):
            d = c.denominator_exponent()
            if d > worst:
                worst = d
        return worst == 0, worst

    # -- Weierstrass preparation -------------------------------------------

    def weierstrass_prep(self) -> WeierstrassFactorization:
        """Factor f = p^mu * P * E with P distinguished of degree lambda and
        E a unit, by Weierstrass division iterated to a fixed point."""
        if self.nvars != 1:
            raise ValueError("preparation needs a one-variable series")
        if not self.is_power_bounded():
            raise NotPowerBounded("preparation needs coefficients in O_K")
        mu = self.mu_invariant()
        lam = self.lambda_invariant()
        if lam >= self.order:
            raise InsufficientTruncation(
                f"lambda = {lam} reaches the truncation order {self.order}"
            )
        scale = self.params.p_power(mu)
        f1 = [c / scale for c in self.coeffs] if mu else list(self.coeffs)
        ext = self.order + lam
        zero = self.params.zero()
        f1 += [zero] * lam
        g = [zero] * lam + [self.params.one()] + [zero] * (ext - lam - 1)
        q, r = _weierstrass_division(self.params, g, f1, lam, ext)
        p_coeffs = tuple(-c for c in r) + (self.params.one(),)
        distinguished = FormalSeries(
            self.params,
            p_coeffs,
            vars=self.vars,
            orders=self.orders,
            k0=self.k0,
            e0_exp=self.e0_exp,
            exact_tail=True,
        )
        unit = self._clone(tuple(q[: self.order]), False).inv()
        return WeierstrassFactorization(mu, lam, distinguished, unit)

    # -- text ---------------------------------------------------------------

    def literal(self) -> str:
        """Compact one-line form: space-separated ``i:elem`` (one variable)
        or ``i,j:elem`` monomials, ``0`` when empty; a ``:prec`` suffix
        records coefficients known below working precision."""
        items = []
        n = self.params.prec
        if self.nvars == 1:
            pairs = [((i,), c) for i, c in enumerate(self.coeffs)]
        else:
            pairs = [
                ((i, j), self.coeffs[j][i])
                for j in range(self.orders[1])
                for i in range(self.orders[0])
            ]
        for exps, c in pairs:
            if c.is_zero() and c.precision >= n:
                continue
            head = ",".join(str(x) for x in exps)
            tok = f"{head}:{c.token()}"
            if c.precision != n:
                tok += f":{c.precision}"
            items.append(tok)
        return " ".join(items) if items else "0"

    @classmethod
    def from_literal(
        cls,
        params: RingParams,
        text: str,
        *,
        vars: tuple[str, ...] = ("U",),
        orders: tuple[int, ...] | None = None,
        k0: int = 0,
        e0_exp: int = 0,
    ) -> FormalSeries:
        if orders is None:
            orders = (DEFAULT_ORDER,) * len(vars)
        entries = {}
        stripped = text.strip()
        if stripped and stripped != "0":
            for item in stripped.split():
                parts = item.split(":")
                if len(parts) not in (2, 3):
                    raise ParseError(f"bad monomial {item!r}")
                try:
                    exps = tuple(int(x) for x in parts[0].split(","))
                except ValueError as exc:
                    raise ParseError(f"bad exponents in {item!r}") from exc
                if len(exps) != len(vars) or any(x < 0 for x in exps):
                    raise ParseError(f"bad exponents in {item!r}")
                prec = None
                if len(parts) == 3:
                    try:
                        prec = int(parts[2])
                    except ValueError as exc:
                        raise ParseError(f"bad precision in {item!r}") from exc
                entries[exps] = params.parse(parts[1], prec=prec)
        return cls._from_entries(params, entries, vars, orders, k0, e0_exp)

    @classmethod
    def _from_entries(cls, params, entries, vars, orders, k0, e0_exp):
        zero = params.zero()
        if len(vars) == 1:
            (d,) = orders
            coeffs = [zero] * d
            for (i,), v in entries.items():
                if i >= d:
                    raise InsufficientTruncation(f"exponent {i} exceeds order {d}")
                coeffs[i] = v
            coeffs = tuple(coeffs)
        else:
            du, ds = orders
            rows = [[zero] * du for _ in range(ds)]
            for (i, j), v in entries.items():
                if i >= du or j >= ds:
                    raise InsufficientTruncation("exponent exceeds truncation order")
                rows[j][i] = v
            coeffs = tuple(tuple(r) for r in rows)
        return cls(params, coeffs, vars=vars, orders=orders, k0=k0, e0_exp=e0_exp)

    def __str__(self):
        return self.literal()

    def __repr__(self):
        return f"<series[{','.join(self.vars)}] {self.literal()} ({self.params})>"


@dataclass(frozen=True)
class WeierstrassFactorization:
    """f = p^mu * distinguished * unit, with the distinguished factor a
    monic polynomial of degree lam whose lower coefficients have positive
    valuation."""

    mu: Fraction
    lam: int
    distinguished: FormalSeries
    unit: FormalSeries

    def reassembled(self) -> FormalSeries:
        scale = self.distinguished.params.p_power(self.mu)
        return (self.distinguished * self.unit).scalar_mul(scale)


def _mul_1d(a: Sequence[OKElement], b: Sequence[OKElement], order: int):
    out = [None] * order
    for i, ai in enumerate(a):
        if i >= order:
            break
        if ai.is_zero() and ai.precision >= ai.params.prec:
            continue
        for j, bj in enumerate(b):
            k = i + j
            if k >= order:
                break
            term = ai * bj
            out[k] = term if out[k] is None else out[k] + term
    zero = a[0].params.zero()
    return tuple(zero if v is None else v for v in out)


def _series_eq(a, b) -> bool:
    return all(x == y for x, y in zip(a, b))


def _weierstrass_division(params, g, f, lam, ext):
    """Divide g by f (regular of degree lam) in O_K[[U]]/U^ext.

    Returns (q, r) with g = q*f + r and deg r < lam, iterating
    q <- sigma^(-1) * shift_lam(g - tau*q) until the update carries no
    significant digits.
    """
    zero = params.zero()
    sigma = list(f[lam:]) + [zero] * lam
    tau = list(f[:lam])
    sigma_series = FormalSeries(params, tuple(sigma), orders=(ext,))
    sigma_inv = sigma_series.inv().coeffs
    q = [zero] * ext
    for _ in range(params.prec * params.e + 2):
        if lam:
            tq = _mul_1d(tau + [zero] * (ext - lam), q, ext)
            h = [gi - ti for gi, ti in zip(g, tq)]
        else:
            h = list(g)
        shifted = h[lam:] + [zero] * lam
        q_new = list(_mul_1d(sigma_inv, shifted, ext))
        if _series_eq(q_new, q):
            q = q_new
            break
        q = q_new
    qf = _mul_1d(q, f, ext)
    r = [gi - xi for gi, xi in zip(g[:lam], qf[:lam])]
    return q, r


def series_to_text(f: FormalSeries) -> str:
    """Self-contained file form: header ``p e N dU [dS] k0 e0`` followed by
    one ``i [j] element [prec=n]`` line per stored monomial, in increasing
    exponent order; monomials absent from the file are zero.  Emission is
    canonical, so text -> series -> text is byte-identical."""
    params = f.params
    e0_tok = params.p_power(Fraction(f.e0_exp, params.e)).token()
    head = [str(params.p), str(params.e), str(params.prec)]
    head += [str(d) for d in f.orders]
    head += [str(f.k0), e0_tok]
    lines = [" ".join(head)]
    if f.nvars == 1:
        entries = [((i,), c) for i, c in enumerate(f.coeffs)]
    else:
        entries = [
            ((i, j), f.coeffs[j][i])
            for j in range(f.orders[1])
            for i in range(f.orders[0])
        ]
    for exps, c in entries:
        if c.is_zero() and c.precision >= params.prec:
            continue
        line = " ".join(str(x) for x in exps) + f" {c.token()}"
        if c.precision != params.prec:
            line += f" prec={c.precision}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def series_from_text(text: str) -> FormalSeries:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty series file")
    head = lines[0].split()
    if len(head) not in (6, 7):
        raise ParseError("series header must be 'p e N dU [dS] k0 e0'")
    try:
        p, e, n = int(head[0]), int(head[1]), int(head[2])
        params = RingParams(p, e, n)
        orders = tuple(int(x) for x in head[3:-2])
        k0 = int(head[-2])
    except ValueError as exc:
        raise ParseError(f"bad series header {lines[0]!r}") from exc
    e0_exp = params.parse(head[-1]).valuation_digits()
    if e0_exp is None:
        raise ParseError("scale token e0 vanishes at precision")
    nvars = len(orders)
    vars_ = ("U",) if nvars == 1 else ("U", "S")
    entries = {}
    for ln in lines[1:]:
        toks = ln.split()
        prec = None
        if toks and toks[-1].startswith("prec="):
            try:
                prec = int(toks[-1][5:])
            except ValueError as exc:
                raise ParseError(f"bad precision attribute in {ln!r}") from exc
            toks = toks[:-1]
        if len(toks) != nvars + 1:
            raise ParseError(f"monomial line {ln!r} does not match a {nvars}-variable header")
        try:
            exps = tuple(int(x) for x in toks[:-1])
        except ValueError as exc:
            raise ParseError(f"bad exponents in {ln!r}") from exc
        if any(x < 0 for x in exps):
            raise ParseError(f"negative exponent in {ln!r}")
        entries[exps] = params.parse(toks[-1], prec=prec)
    return FormalSeries._from_entries(params, entries, vars_, orders, k0, e0_exp)


def newton_interpolate(
    params: RingParams,
    points: Sequence[tuple[OKElement, OKElement]],
    *,
    order: int = DEFAULT_ORDER,
    var: str = "U",
    k0: int = 0,
    e0_exp: int = 0,
) -> FormalSeries:
    """Newton divided-difference interpolation through points of positive
    valuation.

    The result is the unique polynomial of degree < len(points) matching
    the data; divided differences may leave O_K, which
    :meth:`FormalSeries.power_bounded_check` reports.  Precision lost to
    the node differences is carried on each coefficient.
    """
    if not points:
        raise ValueError("at least one interpolation point is needed")
    if len(points) > order:
        raise InsufficientTruncation(
            f"{len(points)} nodes exceed the truncation order {order}"
        )
    us = [u for u, _ in points]
    for u in us:
        vd = u.valuation_digits()
        if vd is not None and vd <= 0:
            raise OutsideDomain("interpolation nodes must have positive valuation")
    for a in range(len(us)):
        for b in range(a + 1, len(us)):
            if (us[a] - us[b]).is_zero():
                raise CoincidentNodes(f"nodes {a} and {b} coincide at precision")
    table = [v for _, v in points]
    dds = [table[0]]
    for level in range(1, len(points)):
        table = [
            (table[i + 1] - table[i]) / (us[i + level] - us[i])
            for i in range(len(table) - 1)
        ]
        dds.append(table[0])
    kw = dict(vars=(var,), orders=(order,), k0=k0, e0_exp=e0_exp, exact_tail=True)
    result = FormalSeries.zero(params, **kw)
    basis = FormalSeries.one(params, **kw)
    for j, dd in enumerate(dds):
        result = result + basis.scalar_mul(dd)
        if j + 1 < len(dds):
            basis = basis * FormalSeries(
                params, (-us[j], params.one()), **kw
            )
    return result
