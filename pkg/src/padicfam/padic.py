"""Fixed-precision arithmetic in the ring of integers of Q_p or of a
totally ramified Eisenstein extension pi^e = p.

Elements are stored as pi-adic digit expansions of a fixed length, with a
nonnegative ``shift`` allowing denominators pi^(-s) to appear during
interpolation.  The valuation is normalized so that val(p) = 1, hence
val(pi) = 1/e.  All elements are immutable; every operation returns a new
element, so values are safe to share across threads.

Internally an element is

    pi^(-shift) * sum_l comps[l] * pi^l        (0 <= l < e)

where each ``comps[l]`` is an ordinary integer standing for the p-adic
integer carried by the positions congruent to l mod e.  This keeps the
unramified case (e = 1) on the plain-integer fast path.

Textual grammar (no whitespace inside a token)::

    token  := "pi^-" INT "*(" inner ")" | inner | INT "/" INT
    inner  := INT                          (canonical when e = 1)
            | term ("+" term)*             (canonical when e > 1)
    term   := INT | "pi" | "pi^" INT | INT "*pi" | INT "*pi^" INT

An integer token is read modulo pi^N; ``a/b`` is read as the rational a/b
(the denominator may carry powers of p).  Canonical output uses digits in
{0, ..., p-1} and lists monomials in increasing pi-power order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DenominatorMismatch,
    MismatchedRings,
    NonUnit,
    ParseError,
    PrecisionExhausted,
    ZeroAtPrecision,
    ZeroResidue,
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def int_valuation(n: int, p: int) -> int | None:
    """p-adic valuation of a plain integer; None for n = 0."""
    if n == 0:
        return None
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class RingParams:
    """Parameters of the coefficient ring: an odd prime p, a ramification
    index e >= 1 (Eisenstein relation pi^e = p), and the working absolute
    precision N counted in pi-adic digits."""

    p: int
    e: int = 1
    prec: int = 8

    def __post_init__(self):
        if not _is_prime(self.p) or self.p < 3:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.e < 1:
            raise ValueError(f"ramification index must be >= 1, got {self.e}")
        if self.prec < 1:
            raise ValueError(f"precision must be >= 1, got {self.prec}")

    # number of stored base-p digits in component l at numerator precision k
    def _comp_digits(self, l: int, k: int) -> int:
        if k <= l:
            return 0
        return -(-(k - l) // self.e)

    def zero(self) -> OKElement:
        return OKElement._make(self, (0,) * self.e, self.prec, 0)

    def one(self) -> OKElement:
        return self.from_int(1)

    def uniformizer(self) -> OKElement:
        return self.p_power(Fraction(1, self.e))

    def from_int(self, n: int, prec: int | None = None) -> OKElement:
        k = self.prec if prec is None else prec
        comps = (n,) + (0,) * (self.e - 1)
        return OKElement._make(self, comps, k, 0)

    def from_rational(self, q: Fraction | int) -> OKElement:
        q = Fraction(q)
        num, den = q.numerator, q.denominator
        s = int_valuation(den, self.p) or 0
        den //= self.p ** s
        x = self.from_int(num, prec=self.prec + s * self.e)
        if den != 1:
            x = x * self.from_int(den, prec=self.prec + s * self.e).inv()
        if s:
            x = OKElement._make(self, x.comps, x.prec, x.shift + s * self.e)
        return x

    def p_power(self, mu: Fraction | int) -> OKElement:
        """p^mu realized as pi^(e*mu); requires e*mu integral."""
        mu = Fraction(mu)
        t = mu * self.e
        if t.denominator != 1:
            raise DenominatorMismatch(
                f"exponent {mu} needs ramification divisible by {t.denominator}, have e={self.e}"
            )
        t = int(t)
        if t >= 0:
            comps = [0] * self.e
            comps[t % self.e] = self.p ** (t // self.e)
            return OKElement._make(self, tuple(comps), self.prec, 0)
        comps = (1,) + (0,) * (self.e - 1)
        return OKElement._make(self, comps, self.prec - t, -t)

    def teichmuller(self, a: int) -> OKElement:
        """The (p-1)-st root of unity congruent to a mod pi."""
        if a % self.p == 0:
            raise ZeroResidue(f"residue {a} is 0 mod {self.p}")
        m = self._comp_digits(0, self.prec)
        pm = self.p ** m
        t = a % self.p
        for _ in range(m):
            t = pow(t, self.p, pm)
        return self.from_int(t)

    def parse(self, token: str, prec: int | None = None) -> OKElement:
        return _parse_token(self, token, prec)

    def __str__(self):
        return f"p={self.p} e={self.e} N={self.prec}"


# ---------------------------------------------------------------------------
# component-vector helpers; a comps vector is a tuple of e ints


def _reduce(params: RingParams, comps, k: int) -> tuple:
    return tuple(
        c % (params.p ** params._comp_digits(l, k)) if params._comp_digits(l, k) else 0
        for l, c in enumerate(comps)
    )


def _comps_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _comps_neg(a):
    return tuple(-x for x in a)


def _comps_mul(params: RingParams, a, b):
    e, p = params.e, params.p
    if e == 1:
        return (a[0] * b[0],)
    out = [0] * e
    for l in range(e):
        if not a[l]:
            continue
        for m in range(e):
            if not b[m]:
                continue
            r = l + m
            if r < e:
                out[r] += a[l] * b[m]
            else:
                out[r - e] += p * a[l] * b[m]
    return tuple(out)


def _comps_scale_pi(params: RingParams, comps, t: int):
    """Multiply by pi^t, t >= 0."""
    e, p = params.e, params.p
    out = [0] * e
    for l, c in enumerate(comps):
        if c:
            out[(l + t) % e] += c * p ** ((l + t) // e)
    return tuple(out)


def _comps_unscale_pi(params: RingParams, comps, t: int):
    """Divide by pi^t; the bottom t digits must vanish."""
    cur = list(comps)
    for _ in range(t):
        assert cur[0] % params.p == 0, "inexact division by pi"
        cur = cur[1:] + [cur[0] // params.p]
    return tuple(cur)


def _comps_val(params: RingParams, comps) -> int | None:
    """Least pi-digit position carrying a nonzero digit, or None."""
    best = None
    for l, c in enumerate(comps):
        if c:
            v = l + params.e * int_valuation(c, params.p)
            if best is None or v < best:
                best = v
    return best


def _newton_inv(params: RingParams, comps, k: int):
    """Inverse of a unit component vector, modulo pi^k."""
    p = params.p
    z = (pow(comps[0] % p, -1, p),) + (0,) * (params.e - 1)
    steps = max(1, k).bit_length() + 1
    two = (2,) + (0,) * (params.e - 1)
    for _ in range(steps):
        uz = _reduce(params, _comps_mul(params, comps, z), k)
        corr = _comps_add(two, _comps_neg(uz))
        z = _reduce(params, _comps_mul(params, z, corr), k)
    return z


class OKElement:
    """An element of O_K (or of K, via a tracked pi-power denominator) at
    finite precision.

    ``prec`` is the numerator precision in pi-adic digits: the represented
    value is known modulo pi^(prec - shift).  Elements of O_K always have
    shift 0; a positive shift records a denominator pi^shift produced by
    division and is reported by :meth:`denominator_exponent`.
    """

    __slots__ = ("params", "comps", "prec", "shift")

    def __init__(self, *a, **kw):
        raise TypeError("use RingParams factories or OKElement._make")

    @classmethod
    def _make(cls, params: RingParams, comps, prec: int, shift: int) -> OKElement:
        prec = min(prec, params.prec + shift)
        if prec - shift < 1:
            raise PrecisionExhausted(
                f"operation left no significant digits (precision {prec - shift})"
            )
        comps = _reduce(params, comps, prec)
        if shift > 0:
            v = _comps_val(params, comps)
            if v is None:
                prec -= shift
                shift = 0
                comps = (0,) * params.e
            else:
                t = min(v, shift)
                if t:
                    comps = _comps_unscale_pi(params, comps, t)
                    prec -= t
                    shift -= t
                    comps = _reduce(params, comps, prec)
        self = object.__new__(cls)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "comps", comps)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "shift", shift)
        return self

    def __setattr__(self, *a):
        raise AttributeError("OKElement is immutable")

    # -- queries ------------------------------------------------------

    @property
    def precision(self) -> int:
        """Absolute precision of the value, in pi-adic digits."""
        return self.prec - self.shift

    def is_zero(self) -> bool:
        """True when every known digit vanishes (zero at precision)."""
        return _comps_val(self.params, self.comps) is None

    def is_integral(self) -> bool:
        return self.shift == 0

    def valuation_digits(self) -> int | None:
        """Valuation in pi-digit units (e * val), or None when zero at
        precision."""
        v = _comps_val(self.params, self.comps)
        if v is None:
            return None
        return v - self.shift

    def valuation(self) -> Fraction | None:
        """Normalized valuation with val(p) = 1, or None when zero at
        precision."""
        v = self.valuation_digits()
        return None if v is None else Fraction(v, self.params.e)

    def denominator_exponent(self) -> Fraction:
        v = self.valuation_digits()
        if v is None or v >= 0:
            return Fraction(0)
        return Fraction(-v, self.params.e)

    def residue(self) -> int:
        """Image in the residue field F_p; requires an integral element."""
        if self.shift:
            raise NonUnit("non-integral element has no residue")
        return self.comps[0] % self.params.p

    def digits(self) -> tuple[int, ...]:
        """Canonical pi-adic digits of the numerator, length ``prec``."""
        p, e = self.params.p, self.params.e
        out = []
        work = list(self.comps)
        for i in range(self.prec):
            l = i % e
            work[l], d = divmod(work[l], p)
            out.append(d)
        return tuple(out)

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: OKElement):
        if self.params != other.params:
            raise MismatchedRings(f"{self.params} vs {other.params}")

    def __add__(self, other: OKElement) -> OKElement:
        self._check(other)
        s = max(self.shift, other.shift)
        ta, tb = s - self.shift, s - other.shift
        ca = _comps_scale_pi(self.params, self.comps, ta) if ta else self.comps
        cb = _comps_scale_pi(self.params, other.comps, tb) if tb else other.comps
        k = min(self.prec + ta, other.prec + tb)
        return OKElement._make(self.params, _comps_add(ca, cb), k, s)

    def __neg__(self) -> OKElement:
        return OKElement._make(self.params, _comps_neg(self.comps), self.prec, self.shift)

    def __sub__(self, other: OKElement) -> OKElement:
        return self + (-other)

    def __mul__(self, other: OKElement) -> OKElement:
        self._check(other)
        va = _comps_val(self.params, self.comps)
        vb = _comps_val(self.params, other.comps)
        va = self.prec if va is None else va
        vb = other.prec if vb is None else vb
        k = min(self.prec + vb, other.prec + va)
        comps = _comps_mul(self.params, self.comps, other.comps)
        return OKElement._make(self.params, comps, k, self.shift + other.shift)

    def inv(self) -> OKElement:
        """Inverse of a unit; raises NonUnit for positive valuation and
        ZeroAtPrecision when no digit survives."""
        v = self.valuation_digits()
        if v is None:
            raise ZeroAtPrecision("cannot invert a zero-at-precision element")
        if v != 0:
            raise NonUnit(f"element has valuation {self.valuation()}, not a unit")
        return self.reciprocal()

    def reciprocal(self) -> OKElement:
        """General inverse in K; the result may carry a pi-denominator."""
        v = _comps_val(self.params, self.comps)
        if v is None:
            raise ZeroAtPrecision("cannot invert a zero-at-precision element")
        unit = _comps_unscale_pi(self.params, self.comps, v) if v else self.comps
        m = self.prec - v
        w = _newton_inv(self.params, unit, m)
        t = self.shift - v
        if t >= 0:
            return OKElement._make(
                self.params, _comps_scale_pi(self.params, w, t), m + t, 0
            )
        return OKElement._make(self.params, w, m, -t)

    def __truediv__(self, other: OKElement) -> OKElement:
        self._check(other)
        v = _comps_val(self.params, other.comps)
        if v is None:
            raise ZeroAtPrecision("cannot divide by a zero-at-precision element")
        unit = _comps_unscale_pi(self.params, other.comps, v) if v else other.comps
        m = other.prec - v
        w = _newton_inv(self.params, unit, m)
        vx = _comps_val(self.params, self.comps)
        k = min(self.prec, m + (self.prec if vx is None else vx))
        z = _comps_mul(self.params, self.comps, w)
        t = other.shift - self.shift - v
        if t >= 0:
            return OKElement._make(
                self.params, _comps_scale_pi(self.params, z, t), k + t, 0
            )
        return OKElement._make(self.params, z, k, -t)

    def __pow__(self, n: int) -> OKElement:
        if n < 0:
            return self.reciprocal() ** (-n)
        result = self.params.from_int(1, prec=self.params.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale_pi(self, t: int) -> OKElement:
        """Multiply by pi^t (t of either sign)."""
        if t >= 0:
            comps = _comps_scale_pi(self.params, self.comps, t)
            return OKElement._make(self.params, comps, self.prec + t, self.shift)
        return OKElement._make(self.params, self.comps, self.prec, self.shift - t)

    def with_precision(self, k: int) -> OKElement:
        """Forget digits beyond value precision k."""
        if k >= self.precision:
            return self
        return OKElement._make(self.params, self.comps, k + self.shift, self.shift)

    # -- comparison ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, OKElement):
            return NotImplemented
        if self.params != other.params:
            return False
        k = min(self.precision, other.precision)
        s = max(self.shift, other.shift)
        ca = _comps_scale_pi(self.params, self.comps, s - self.shift)
        cb = _comps_scale_pi(self.params, other.comps, s - other.shift)
        return _reduce(self.params, ca, k + s) == _reduce(self.params, cb, k + s)

    __hash__ = None

    # -- text ---------------------------------------------------------

    def token(self) -> str:
        """Canonical space-free literal; see the module docstring."""
        inner = self._inner_token()
        if self.shift:
            return f"pi^-{self.shift}*({inner})"
        return inner

    def _inner_token(self) -> str:
        if self.params.e == 1:
            return str(self.comps[0])
        terms = []
        for i, d in enumerate(self.digits()):
            if not d:
                continue
            if i == 0:
                terms.append(str(d))
            elif d == 1:
                terms.append("pi" if i == 1 else f"pi^{i}")
            else:
                terms.append(f"{d}*pi" if i == 1 else f"{d}*pi^{i}")
        return "+".join(terms) if terms else "0"

    def __str__(self):
        return self.token()

    def __repr__(self):
        return f"<{self.token()} (prec {self.precision}, {self.params})>"


def _parse_token(params: RingParams, token: str, prec: int | None) -> OKElement:
    text = "".join(token.split())
    if not text:
        raise ParseError("empty element token")
    k = params.prec if prec is None else prec
    if k < 1:
        raise ParseError(f"bad precision {k}")
    shift = 0
    if text.startswith("pi^-"):
        body = text[4:]
        star = body.find("*(")
        if star < 0 or not body.endswith(")"):
            raise ParseError(f"malformed shifted element {token!r}")
        try:
            shift = int(body[:star])
        except ValueError as exc:
            raise ParseError(f"bad shift in {token!r}") from exc
        text = body[star + 2 : -1]
    if "/" in text:
        try:
            num, den = text.split("/")
            q = Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {token!r}") from exc
        x = params.from_rational(q)
        if shift:
            x = x.scale_pi(-shift)
        return x.with_precision(min(k, x.precision))
    total = params.zero()
    for raw in text.split("+"):
        if not raw:
            raise ParseError(f"empty term in {token!r}")
        coeff, power = raw, 0
        if "pi" in raw:
            head, _, tail = raw.partition("pi")
            coeff = head[:-1] if head.endswith("*") else (head or "1")
            if tail.startswith("^"):
                tail = tail[1:]
                if not tail:
                    raise ParseError(f"missing exponent in {token!r}")
                power = int(tail)
            elif tail:
                raise ParseError(f"malformed term {raw!r}")
            else:
                power = 1
        try:
            c = int(coeff)
        except ValueError as exc:
            raise ParseError(f"bad coefficient in term {raw!r}") from exc
        if power < 0:
            raise ParseError(f"negative pi power in term {raw!r}; use the pi^-s*(...) prefix")
        total = total + params.from_int(c, prec=k + shift + power).scale_pi(power)
    if shift:
        total = total.scale_pi(-shift)
    return total.with_precision(min(k, total.precision))


def teichmuller(params: RingParams, a: int) -> OKElement:
    """Module-level alias for :meth:`RingParams.teichmuller`."""
    return params.teichmuller(a)


def p_rational_power(params: RingParams, mu: Fraction | int) -> OKElement:
    """Module-level alias for :meth:`RingParams.p_power`."""
    return params.p_power(mu)
