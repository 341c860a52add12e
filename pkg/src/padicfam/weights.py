"""Coordinates on the weight space: classical-point enumeration inside a
disk about a centre weight, slopes, and Nebentypus bookkeeping.

Integral weights k are identified with accessible weight-characters via
(chi, (1+p)^k) <-> (chi, k); radii are restricted to integral powers
p^(-m), which is all an integer congruence class can see.  The default
disk membership test is k = k0 mod p^m, matching the intersection of the
classical weights with the disk of radius exponent m; ``strict=True``
switches to the strictly-smaller disk (congruence mod p^(m+1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyWindow, ZeroAtPrecision
from .padic import OKElement, int_valuation


@dataclass(frozen=True)
class ClassicalPointSet:
    """The finite list of classical weights k <= bound with k > alpha + 1
    and val(k - k0) >= m (or > m when strict)."""

    p: int
    k0: int
    radius_exp: int
    alpha: Fraction
    bound: int
    strict: bool
    points: tuple[int, ...]

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def member(self, k: int) -> bool:
        modulus = self.p ** (self.radius_exp + (1 if self.strict else 0))
        return k <= self.bound and k > self.alpha + 1 and (k - self.k0) % modulus == 0


def classical_points(
    p: int,
    k0: int,
    radius_exp: int,
    alpha: Fraction | int = 0,
    bound: int = 100,
    *,
    strict: bool = False,
) -> ClassicalPointSet:
    """Enumerate the classical weights in the disk of radius p^(-radius_exp)
    about k0, with slope constraint k > alpha + 1, up to ``bound``.

    Raises EmptyWindow when no weight qualifies.
    """
    if radius_exp < 1:
        raise ValueError("radius exponent must be >= 1")
    alpha = Fraction(alpha)
    if alpha < 0:
        raise ValueError("slope must be nonnegative")
    modulus = p ** (radius_exp + (1 if strict else 0))
    points = tuple(
        k for k in range(1, bound + 1) if (k - k0) % modulus == 0 and k > alpha + 1
    )
    if not points:
        raise EmptyWindow(
            f"no weight k = {k0} mod {modulus} with {alpha + 1} < k <= {bound}"
        )
    return ClassicalPointSet(p, k0, radius_exp, alpha, bound, strict, points)


def slope_from_up_eigenvalue(a_p: OKElement | int, p: int | None = None) -> Fraction:
    """Slope of an eigenform: the valuation of its U_p-eigenvalue."""
    if isinstance(a_p, OKElement):
        v = a_p.valuation()
        if v is None:
            raise ZeroAtPrecision("eigenvalue vanishes at precision, slope unbounded")
        return v
    if p is None:
        raise ValueError("an integer eigenvalue needs the prime p")
    v = int_valuation(a_p, p)
    if v is None:
        raise ZeroAtPrecision("eigenvalue is zero, slope unbounded")
    return Fraction(v)


@dataclass(frozen=True)
class NebenCharacter:
    """A weight-k character split as tame part times omega^exponent."""

    tame: str
    exponent: int

    def __str__(self):
        return f"{self.tame}*omega^{self.exponent}"


def neben_decompose(k: int, i: int, p: int, tame: str = "1") -> NebenCharacter:
    """Character of the weight-k member of the family seeded in residue
    class i: the tame tag together with omega^((i - k) mod (p - 1))."""
    if not 0 <= i <= p - 1:
        raise ValueError(f"residue index {i} outside 0..{p - 1}")
    return NebenCharacter(tame, (i - k) % (p - 1))
