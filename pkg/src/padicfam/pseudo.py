"""Pseudo-representation calculus: triples (A, D, Xi) on free-group words
with a distinguished involution letter, their relation checks, trace
recovery, CRT glueing of point values, and reconstruction of a rank-2
matrix representation from an irreducible pseudo-representation.

Groups are free on generators g1..gt together with one extra letter c
satisfying c^2 = 1; c plays the role of a conjugation normalized to act
as diag(-1, 1).  Coefficients may be ring elements or one-variable
series; everything here is ring-generic over those two.

Pseudo-representation evaluation is pure; the only mutable state is a
per-representation cache of word images, filled deterministically.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import (
    ApparentlyReducible,
    BadConjugationImage,
    CoincidentNodes,
    DenominatorMismatch,
    Incompatible,
    MismatchedRings,
    NonUnit,
    NotPowerBounded,
    OutsideDomain,
    ParseError,
)
from .padic import OKElement, RingParams
from .series import DEFAULT_ORDER, FormalSeries

# ---------------------------------------------------------------------------
# words


def _reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def _rank(letter: int) -> int:
    if letter == 0:
        return 0
    return 2 * letter - 1 if letter > 0 else -2 * letter


class GroupWord:
    """A reduced word over {g1.., their inverses, c}; c is letter 0 and is
    its own inverse."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] = ()):
        object.__setattr__(self, "letters", _reduce_letters(letters))

    def __setattr__(self, *a):
        raise AttributeError("GroupWord is immutable")

    @classmethod
    def identity(cls) -> GroupWord:
        return cls(())

    @classmethod
    def generator(cls, i: int) -> GroupWord:
        if i < 1:
            raise ValueError("generator index starts at 1")
        return cls((i,))

    @classmethod
    def conjugation(cls) -> GroupWord:
        return cls((0,))

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> GroupWord:
        return GroupWord(tuple(-x for x in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def sort_key(self):
        return (len(self.letters), tuple(_rank(x) for x in self.letters))

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        parts = []
        for x in self.letters:
            if x == 0:
                parts.append("c")
            elif x > 0:
                parts.append(f"g{x}")
            else:
                parts.append(f"g{-x}^-1")
        return ".".join(parts)

    def __repr__(self):
        return f"GroupWord({self})"


def parse_word(text: str) -> GroupWord:
    text = text.strip()
    if text in ("1", ""):
        return GroupWord.identity()
    letters = []
    for part in text.split("."):
        if part == "c":
            letters.append(0)
            continue
        inv = part.endswith("^-1")
        core = part[:-3] if inv else part
        if not core.startswith("g"):
            raise ParseError(f"bad word letter {part!r}")
        try:
            i = int(core[1:])
        except ValueError as exc:
            raise ParseError(f"bad word letter {part!r}") from exc
        if i < 1:
            raise ParseError(f"bad generator index in {part!r}")
        letters.append(-i if inv else i)
    return GroupWord(letters)


def enumerate_words(t: int, max_len: int) -> list[GroupWord]:
    """All reduced words of length <= max_len in length-lexicographic
    order (c before g1 before g1^-1 before g2 ...)."""
    alphabet = [0]
    for i in range(1, t + 1):
        alphabet.extend((i, -i))
    out = [GroupWord.identity()]
    level = [GroupWord.identity()]
    for length in range(1, max_len + 1):
        nxt = []
        for w in level:
            for letter in alphabet:
                ext = GroupWord(w.letters + (letter,))
                if len(ext) == length:
                    nxt.append(ext)
        out.extend(nxt)
        level = nxt
    return out


def sample_reduced_words(
    t: int, max_len: int, count: int, rng: random.Random, min_len: int = 1
) -> list[GroupWord]:
    """Deterministic sample of distinct reduced words (given the rng)."""
    alphabet = [0]
    for i in range(1, t + 1):
        alphabet.extend((i, -i))
    seen: dict[tuple, GroupWord] = {}
    attempts = 0
    while len(seen) < count and attempts < 100 * count:
        attempts += 1
        n = rng.randint(min_len, max_len)
        w = GroupWord(rng.choice(alphabet) for _ in range(n))
        if min_len <= len(w) <= max_len and w.letters not in seen:
            seen[w.letters] = w
    return list(seen.values())


# ---------------------------------------------------------------------------
# ring-generic helpers (elements or one-variable series)


def _is_series(x) -> bool:
    return isinstance(x, FormalSeries)


def _is_zero(x) -> bool:
    return x.is_zero_at_precision() if _is_series(x) else x.is_zero()


def _is_unit(x) -> bool:
    if _is_series(x):
        c = x.coeffs[0]
        return not c.is_zero() and c.valuation_digits() == 0
    return not x.is_zero() and x.valuation_digits() == 0


def _one_like(x):
    if _is_series(x):
        return FormalSeries.one(
            x.params, vars=x.vars, orders=x.orders, k0=x.k0, e0_exp=x.e0_exp
        )
    return x.params.one()


def _zero_like(x):
    if _is_series(x):
        return FormalSeries.zero(
            x.params, vars=x.vars, orders=x.orders, k0=x.k0, e0_exp=x.e0_exp
        )
    return x.params.zero()


def _center_value(x) -> OKElement:
    """Evaluation at the disk centre (U = 0)."""
    return x.coeffs[0] if _is_series(x) else x


def _scalar_div(x, c: OKElement):
    return x.scalar_div(c) if _is_series(x) else x / c


def _power_bounded(x) -> bool:
    return x.is_power_bounded() if _is_series(x) else x.is_integral()


# ---------------------------------------------------------------------------
# matrices


def mat_mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_det(m):
    a, b, c, d = m
    return a * d - b * c


def mat_trace(m):
    return m[0] + m[3]


def mat_inv(m):
    a, b, c, d = m
    di = mat_det(m).inv()
    return (d * di, -(b * di), -(c * di), a * di)


class MatrixRep2:
    """A representation of the free-with-involution group by invertible
    2x2 matrices, with the involution letter pinned to diag(-1, 1)."""

    def __init__(self, images: Sequence[tuple], *, one=None, c_image=None):
        images = tuple(tuple(m) for m in images)
        if one is None:
            if not images:
                raise ValueError("a generator-free representation needs an explicit one")
            one = _one_like(images[0][0])
        zero = _zero_like(one)
        if c_image is not None and tuple(c_image) != (-one, zero, zero, one):
            raise BadConjugationImage(
                "the involution letter must be represented by diag(-1, 1)"
            )
        for k, m in enumerate(images):
            if len(m) != 4:
                raise ValueError("matrix images need four entries")
            if not _is_unit(mat_det(m)):
                raise NonUnit(f"image of g{k + 1} has non-unit determinant")
        self.images = images
        self.one = one
        self.zero = zero
        self.t = len(images)
        self._cache: dict[tuple, tuple] = {(): (one, zero, zero, one)}
        self._letter_cache: dict[int, tuple] = {0: (-one, zero, zero, one)}
        for i, m in enumerate(images, start=1):
            self._letter_cache[i] = m

    def letter_image(self, letter: int):
        m = self._letter_cache.get(letter)
        if m is None:
            if not (-self.t <= letter <= self.t):
                raise ValueError(f"letter {letter} outside the generator range")
            m = mat_inv(self._letter_cache[-letter])
            self._letter_cache[letter] = m
        return m

    def matrix(self, word: GroupWord):
        """Image of a word; prefixes are cached, so enumerations in
        length order cost one multiplication per word."""
        letters = word.letters
        m = self._cache.get(letters)
        if m is not None:
            return m
        prefix = len(letters) - 1
        while prefix > 0 and letters[:prefix] not in self._cache:
            prefix -= 1
        m = self._cache[letters[:prefix]]
        for i in range(prefix, len(letters)):
            m = mat_mul(m, self.letter_image(letters[i]))
            self._cache[letters[: i + 1]] = m
        return m


# ---------------------------------------------------------------------------
# pseudo-representations


class PseudoRep:
    """A Wiles triple: functions A, D on words and Xi on pairs of words,
    valued in a common coefficient ring."""

    def __init__(self, A: Callable, D: Callable, Xi: Callable, one):
        self.A = A
        self.D = D
        self.Xi = Xi
        self.one = one
        self.zero = _zero_like(one)

    @classmethod
    def from_matrix_rep(cls, rho: MatrixRep2) -> PseudoRep:
        """The triple (a, d, b(s)c(t)) read off matrix entries in the
        normalized basis."""

        def A(w):
            return rho.matrix(w)[0]

        def D(w):
            return rho.matrix(w)[3]

        def Xi(w1, w2):
            return rho.matrix(w1)[1] * rho.matrix(w2)[2]

        return cls(A, D, Xi, rho.one)

    @classmethod
    def from_tables(cls, A: dict, D: dict, Xi: dict, one) -> PseudoRep:
        """Finite lookup-table backend; unknown words raise KeyError."""

        def lookup_a(w):
            return A[w.letters]

        def lookup_d(w):
            return D[w.letters]

        def lookup_xi(w1, w2):
            return Xi[(w1.letters, w2.letters)]

        return cls(lookup_a, lookup_d, lookup_xi, one)

    def perturb_xi(self, pair: tuple[GroupWord, GroupWord], delta) -> PseudoRep:
        """A copy with Xi shifted by delta at one pair (for detection
        tests)."""
        base = self.Xi
        w1p, w2p = pair

        def xi(w1, w2):
            v = base(w1, w2)
            if w1 == w1p and w2 == w2p:
                v = v + delta
            return v

        return PseudoRep(self.A, self.D, xi, self.one)

    def trace(self, w: GroupWord):
        return self.A(w) + self.D(w)


@dataclass(frozen=True)
class RelationViolation:
    relation: str
    words: tuple[GroupWord, ...]
    lhs: str
    rhs: str


@dataclass(frozen=True)
class WilesReport:
    checked: dict
    violations: tuple[RelationViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        counts = " ".join(f"{k}={v}" for k, v in sorted(self.checked.items()))
        return f"violations={len(self.violations)} {counts}"


def check_wiles_relations(pi: PseudoRep, tuples: Iterable[tuple]) -> WilesReport:
    """Test the multiplicative, identity and rank-2 relations on sampled
    word tuples.

    Pairs (s, t) drive the two product relations for A and D; quadruples
    (s, t, r, g) drive the Xi product rule and the exchange relation.
    Singletons test the identity normalizations.  Violations are returned
    as data with their witnesses, never raised.
    """
    one = pi.one
    identity = GroupWord.identity()
    violations = []
    checked = {"identity": 0, "pairs": 0, "quads": 0, "singles": 0}

    def expect(relation, words, lhs, rhs):
        if not _is_zero(lhs - rhs):
            violations.append(
                RelationViolation(relation, tuple(words), str(lhs), str(rhs))
            )

    expect("A(1)=1", (identity,), pi.A(identity), one)
    expect("D(1)=1", (identity,), pi.D(identity), one)
    checked["identity"] = 2

    for tup in tuples:
        if len(tup) == 1:
            (w,) = tup
            expect("Xi(w,1)=0", (w,), pi.Xi(w, identity), pi.zero)
            expect("Xi(1,w)=0", (w,), pi.Xi(identity, w), pi.zero)
            checked["singles"] += 1
        elif len(tup) == 2:
            s, t = tup
            expect("A(st)=A(s)A(t)+Xi(s,t)", tup, pi.A(s * t), pi.A(s) * pi.A(t) + pi.Xi(s, t))
            expect("D(st)=D(s)D(t)+Xi(t,s)", tup, pi.D(s * t), pi.D(s) * pi.D(t) + pi.Xi(t, s))
            checked["pairs"] += 1
        elif len(tup) == 4:
            s, t, r, g = tup
            lhs = pi.Xi(s * t, r * g)
            rhs = (
                pi.A(s) * pi.A(g) * pi.Xi(t, r)
                + pi.A(g) * pi.D(t) * pi.Xi(s, r)
                + pi.A(s) * pi.D(r) * pi.Xi(t, g)
                + pi.D(t) * pi.D(r) * pi.Xi(s, g)
            )
            expect("Xi(st,rg) product rule", tup, lhs, rhs)
            expect(
                "Xi(s,t)Xi(r,g)=Xi(s,g)Xi(r,t)",
                tup,
                pi.Xi(s, t) * pi.Xi(r, g),
                pi.Xi(s, g) * pi.Xi(r, t),
            )
            checked["quads"] += 1
        else:
            raise ValueError(f"relation tuples have 1, 2 or 4 words, got {len(tup)}")
    return WilesReport(checked, tuple(violations))


def trace_to_AD(tr: Callable, one) -> tuple[Callable, Callable]:
    """Recover the diagonal functions from a trace in the normalized
    basis: A = (tr(s) - tr(cs))/2 and D = (tr(s) + tr(cs))/2."""
    params = one.params
    half = params.from_int(2).inv()
    c = GroupWord.conjugation()

    def A(w):
        return (tr(w) - tr(c * w)) * half

    def D(w):
        return (tr(w) + tr(c * w)) * half

    return A, D


# ---------------------------------------------------------------------------
# glueing and reconstruction


def glue_crt(
    x: OKElement,
    y: OKElement,
    u1: OKElement,
    u2: OKElement,
    *,
    order: int = DEFAULT_ORDER,
    k0: int = 0,
    e0_exp: int = 0,
) -> FormalSeries:
    """Glue point values across two evaluation primes: the degree <= 1
    series f with f(u1) = x and f(u2) = y, which exists exactly when
    x = y mod (u2 - u1).  Raises Incompatible with the obstruction
    valuation otherwise."""
    params = x.params
    for u in (u1, u2):
        vd = u.valuation_digits()
        if vd is not None and vd <= 0:
            raise OutsideDomain("evaluation points must have positive valuation")
    den = u2 - u1
    if den.is_zero():
        raise CoincidentNodes("evaluation points coincide at precision")
    diff = y - x
    vd_diff = diff.valuation_digits()
    vd_den = den.valuation_digits()
    if vd_diff is not None and vd_diff < vd_den:
        e = params.e
        raise Incompatible(
            f"values differ with valuation {Fraction(vd_diff, e)} but the points "
            f"are congruent to depth {Fraction(vd_den, e)}",
            obstruction_valuation=Fraction(vd_diff, e),
            required_valuation=Fraction(vd_den, e),
        )
    slope = diff / den
    const = x - slope * u1
    return FormalSeries(
        params,
        (const, slope),
        orders=(order,),
        k0=k0,
        e0_exp=e0_exp,
        exact_tail=True,
    )


@dataclass
class ReconstructionResult:
    """Outcome of the rank-2 reconstruction: the matrix representation,
    the selected pair, the p-exponent mu, and the unit factor W with
    Xi(sigma, tau) = p^mu * W."""

    rep: MatrixRep2
    sigma: GroupWord
    tau: GroupWord
    mu: Fraction
    unit: object
    formula_image: Callable = field(repr=False)


def reconstruct(
    pi: PseudoRep,
    t: int,
    search_len: int,
) -> ReconstructionResult:
    """Rebuild a rank-2 matrix representation from a pseudo-representation.

    Scans pairs of words up to the search length in length-lexicographic
    order for the minimal central valuation of Xi, factors that value as
    p^mu times a unit W, and assembles

        g  |->  [[A(g), Xi(g, tau) W^(-1) p^(-mu)], [Xi(sigma, g), D(g)]].

    Raises ApparentlyReducible when Xi vanishes at the centre on every
    searched pair, DenominatorMismatch when mu needs more ramification
    than the ring provides, and NotPowerBounded when no minimal pair
    factors integrally at working precision.
    """
    params = _center_value(pi.one).params
    words = enumerate_words(t, search_len)
    best: Fraction | None = None
    for s, w in itertools.product(words, repeat=2):
        v = _center_value(pi.Xi(s, w)).valuation()
        if v is not None and (best is None or v < best):
            best = v
    if best is None:
        raise ApparentlyReducible(
            f"Xi vanishes at the centre on all {len(words) ** 2} searched pairs"
        )
    mu = best
    if (mu * params.e).denominator != 1:
        raise DenominatorMismatch(
            f"mu = {mu} is not realizable with ramification index {params.e}"
        )
    scale = params.p_power(mu)
    sigma = tau = unit = None
    for s, w in itertools.product(words, repeat=2):
        xi = pi.Xi(s, w)
        if _center_value(xi).valuation() != mu:
            continue
        cand = _scalar_div(xi, scale)
        if _power_bounded(cand) and _is_unit(cand):
            sigma, tau, unit = s, w, cand
            break
    if sigma is None:
        raise NotPowerBounded(
            "no pair of minimal central valuation factors as p^mu times a unit "
            "at this precision"
        )
    unit_inv = unit.inv()

    def formula_image(w: GroupWord):
        return (
            pi.A(w),
            _scalar_div(pi.Xi(w, tau), scale) * unit_inv,
            pi.Xi(sigma, w),
            pi.D(w),
        )

    images = []
    for i in range(1, t + 1):
        m = formula_image(GroupWord.generator(i))
        if not all(_power_bounded(entry) for entry in m):
            raise NotPowerBounded(
                f"reconstructed image of g{i} escapes the integral ring"
            )
        images.append(m)
    one = pi.one
    zero = pi.zero
    cm = formula_image(GroupWord.conjugation())
    expected = (-one, zero, zero, one)
    if any(not _is_zero(a - b) for a, b in zip(cm, expected)):
        raise BadConjugationImage(
            "the pseudo-representation is not normalized: the involution letter "
            "does not reconstruct to diag(-1, 1)"
        )
    rep = MatrixRep2(images, one=one)
    return ReconstructionResult(rep, sigma, tau, mu, unit, formula_image)


def lift_to_series(
    pi: PseudoRep,
    *,
    order: int = DEFAULT_ORDER,
    k0: int = 0,
    e0_exp: int = 0,
) -> PseudoRep:
    """View a constant-valued pseudo-representation inside the series ring."""
    params = pi.one.params

    def lift(x):
        return FormalSeries.constant(
            params, x, orders=(order,), k0=k0, e0_exp=e0_exp
        )

    return PseudoRep(
        lambda w: lift(pi.A(w)),
        lambda w: lift(pi.D(w)),
        lambda w1, w2: lift(pi.Xi(w1, w2)),
        lift(pi.one),
    )


# ---------------------------------------------------------------------------
# matrix-representation file format


def matrix_rep_to_text(rep: MatrixRep2, params: RingParams) -> str:
    """Header ``p e N t`` then one line of four element tokens per
    generator."""
    lines = [f"{params.p} {params.e} {params.prec} {rep.t}"]
    for m in rep.images:
        entries = [x if isinstance(x, OKElement) else _center_value(x) for x in m]
        lines.append(" ".join(x.token() for x in entries))
    return "\n".join(lines) + "\n"


def matrix_rep_from_text(text: str) -> tuple[MatrixRep2, RingParams]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty matrix-representation file")
    head = lines[0].split()
    if len(head) != 4:
        raise ParseError("matrix-representation header must be 'p e N t'")
    try:
        p, e, n, t = (int(x) for x in head)
        params = RingParams(p, e, n)
    except ValueError as exc:
        raise ParseError(f"bad header {lines[0]!r}") from exc
    if len(lines) != 1 + t:
        raise ParseError(f"expected {t} generator lines, found {len(lines) - 1}")
    images = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 4:
            raise ParseError(f"generator line needs 4 entries: {ln!r}")
        images.append(tuple(params.parse(tok) for tok in toks))
    return MatrixRep2(images, one=params.one()), params
