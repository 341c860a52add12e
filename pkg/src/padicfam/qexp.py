"""Data-facing harness for classical eigenform q-expansions: ingestion and
validation, slope and supersingularity checks, the residual-irreducibility
window test, and interpolation of Fourier-coefficient families across
classical weights with an integrality certificate.

Eigensystems are never computed here; families arrive as data files.
Declared facts (for instance mu-invariants quoted from published tables)
are carried as provenance strings, never recomputed.

q-expansion file grammar: a header line ``label N k p neben``, then one
``n a_n`` pair per line (``a_n`` an integer or ``num/den`` rational);
``declare <key> <text>`` lines attach provenance strings and ``#`` starts
a comment.  A family manifest has header ``p e N k0 e0`` followed by
``weight path`` lines, paths relative to the manifest.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    LevelNotCoprime,
    MismatchedRings,
    MissingCoefficient,
    NotNormalized,
    OutsideDomain,
    ParseError,
    ZeroAtPrecision,
)
from .padic import OKElement, RingParams, int_valuation
from .series import DEFAULT_ORDER, FormalSeries, newton_interpolate


def fraction_valuation(q: Fraction | int, p: int) -> Fraction | None:
    q = Fraction(q)
    if q == 0:
        return None
    return Fraction(int_valuation(q.numerator, p) - (int_valuation(q.denominator, p) or 0))


@dataclass(frozen=True)
class QExpansion:
    """A normalized eigenform record: tame level coprime to p, weight >= 2,
    and the Fourier coefficients that are known."""

    label: str
    level: int
    weight: int
    p: int
    neben: str
    coeffs: dict
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.level < 1:
            raise ParseError(f"bad level {self.level}")
        if self.weight < 2:
            raise ParseError(f"weight {self.weight} below the classical range")
        if math.gcd(self.level, self.p) != 1:
            raise LevelNotCoprime(f"level {self.level} shares a factor with p={self.p}")
        a1 = self.coeffs.get(1)
        if a1 is None or Fraction(a1) != 1:
            raise NotNormalized(f"first coefficient is {a1!r}, record is not normalized")

    def coefficient(self, n: int) -> Fraction:
        a = self.coeffs.get(n)
        if a is None:
            raise MissingCoefficient(f"a_{n} is absent from record {self.label!r}")
        return Fraction(a)


def qexp_from_text(text: str) -> QExpansion:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty q-expansion file")
    head = lines[0].split()
    if len(head) != 5:
        raise ParseError("q-expansion header must be 'label N k p neben'")
    label, level_s, k_s, p_s, neben = head
    try:
        level, weight, p = int(level_s), int(k_s), int(p_s)
    except ValueError as exc:
        raise ParseError(f"bad header {lines[0]!r}") from exc
    coeffs: dict = {}
    provenance: dict = {}
    for ln in lines[1:]:
        toks = ln.split()
        if toks[0] == "declare":
            if len(toks) < 3:
                raise ParseError(f"bad declaration {ln!r}")
            provenance[toks[1]] = " ".join(toks[2:])
            continue
        if len(toks) != 2:
            raise ParseError(f"coefficient line must be 'n a_n': {ln!r}")
        try:
            n = int(toks[0])
            a = Fraction(toks[1])
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient line {ln!r}") from exc
        if n < 1:
            raise ParseError(f"coefficient index {n} out of range")
        coeffs[n] = a if a.denominator != 1 else int(a)
    return QExpansion(label, level, weight, p, neben, coeffs, provenance)


def qexp_to_text(f: QExpansion) -> str:
    lines = [f"{f.label} {f.level} {f.weight} {f.p} {f.neben}"]
    for n in sorted(f.coeffs):
        lines.append(f"{n} {Fraction(f.coeffs[n])}")
    for key in sorted(f.provenance):
        lines.append(f"declare {key} {f.provenance[key]}")
    return "\n".join(lines) + "\n"


def ingest_qexp(path: str) -> QExpansion:
    """Read and validate a q-expansion file."""
    with open(path, encoding="utf-8") as fh:
        return qexp_from_text(fh.read())


def slope_of(f: QExpansion) -> Fraction:
    """Valuation of the p-th coefficient (the U_p-eigenvalue surrogate of
    the record)."""
    a_p = f.coefficient(f.p)
    v = fraction_valuation(a_p, f.p)
    if v is None:
        raise ZeroAtPrecision("a_p = 0, the slope is unbounded")
    return v


def check_supersingular(f: QExpansion) -> bool:
    """Whether the residual a_p vanishes, i.e. val(a_p) > 0."""
    v = fraction_valuation(f.coefficient(f.p), f.p)
    return v is None or v > 0


@dataclass(frozen=True)
class WindowVerdict:
    ok: bool
    reason: str

    def __bool__(self):
        return self.ok


def check_edixhoven_window(f: QExpansion) -> WindowVerdict:
    """Residual irreducibility proxy at p: a_p = 0 in the residue field
    together with 2 <= k < p + 1."""
    v = fraction_valuation(f.coefficient(f.p), f.p)
    if v is not None and v <= 0:
        return WindowVerdict(False, "ordinary residual")
    if not 2 <= f.weight < f.p + 1:
        return WindowVerdict(False, "weight outside window")
    return WindowVerdict(True, "a_p vanishes residually and the weight is in window")


def check_up_square_condition(f: QExpansion) -> bool | None:
    """The seed-form nondegeneracy a_p^2 != eps(p) p^(k-1), decidable here
    only for the trivial tame character; None when indeterminate."""
    if f.neben not in ("1", "triv", "trivial"):
        return None
    return f.coefficient(f.p) ** 2 != Fraction(f.p) ** (f.weight - 1)


@dataclass(frozen=True)
class FamilySamples:
    """Classical members of one family: the ring, the disk (k0 and the
    scale exponent), and weight-indexed q-expansion records."""

    params: RingParams
    k0: int
    e0_exp: int
    samples: tuple

    def __post_init__(self):
        seen = set()
        level = neben = None
        for k, f in self.samples:
            if f.p != self.params.p:
                raise MismatchedRings(f"record {f.label!r} is for p={f.p}")
            if k != f.weight:
                raise ParseError(f"record {f.label!r} has weight {f.weight}, bound to {k}")
            if k in seen:
                raise ParseError(f"duplicate weight {k}")
            seen.add(k)
            if level is None:
                level, neben = f.level, f.neben
            elif (f.level, f.neben) != (level, neben):
                raise ParseError("family members must share level and character")
            if k != self.k0:
                vd = (int_valuation(k - self.k0, self.params.p) or 0) * self.params.e
                if vd <= self.e0_exp:
                    raise OutsideDomain(
                        f"weight {k} lies outside the open disk about {self.k0} "
                        f"at scale pi^{self.e0_exp}"
                    )

    def point(self, k: int) -> OKElement:
        return self.params.from_int(k - self.k0).scale_pi(-self.e0_exp)


@dataclass(frozen=True)
class IntegralityReport:
    power_bounded: bool
    max_denominator_exponent: Fraction
    nodes: tuple

    @property
    def ok(self) -> bool:
        return self.power_bounded and all(flag for _, flag in self.nodes)


def interpolate_family(
    fam: FamilySamples, n: int, *, order: int = DEFAULT_ORDER
) -> tuple[FormalSeries, IntegralityReport]:
    """Interpolate the n-th Fourier coefficient across the sampled weights.

    Returns the Newton interpolant through (u_k, a_n(k)) together with the
    integrality certificate and a per-node reproduction check at the
    surviving precision.
    """
    if len(fam.samples) < 2:
        raise ValueError("interpolation needs at least two sampled weights")
    pts = []
    for k, f in sorted(fam.samples, key=lambda kv: kv[0]):
        pts.append((k, fam.point(k), fam.params.from_rational(f.coefficient(n))))
    interp = newton_interpolate(
        fam.params,
        [(u, v) for _, u, v in pts],
        order=order,
        k0=fam.k0,
        e0_exp=fam.e0_exp,
    )
    bounded, worst = interp.power_bounded_check()
    nodes = tuple((k, interp.evaluate(u) == v) for k, u, v in pts)
    return interp, IntegralityReport(bounded, worst, nodes)


# ---------------------------------------------------------------------------
# manifest


def family_from_manifest(path: str) -> FamilySamples:
    """Load a family manifest: ``p e N k0 e0`` then ``weight path`` lines."""
    base = os.path.dirname(os.path.abspath(path))
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh.read().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty family manifest")
    head = lines[0].split()
    if len(head) != 5:
        raise ParseError("manifest header must be 'p e N k0 e0'")
    try:
        params = RingParams(int(head[0]), int(head[1]), int(head[2]))
        k0 = int(head[3])
    except ValueError as exc:
        raise ParseError(f"bad manifest header {lines[0]!r}") from exc
    e0 = params.parse(head[4])
    e0_exp = e0.valuation_digits()
    if e0_exp is None:
        raise ParseError("the manifest scale e0 vanished at precision")
    samples = []
    for ln in lines[1:]:
        toks = ln.split(maxsplit=1)
        if len(toks) != 2:
            raise ParseError(f"manifest line must be 'weight path': {ln!r}")
        try:
            k = int(toks[0])
        except ValueError as exc:
            raise ParseError(f"bad weight in {ln!r}") from exc
        samples.append((k, ingest_qexp(os.path.join(base, toks[1]))))
    return FamilySamples(params, k0, e0_exp, tuple(samples))
