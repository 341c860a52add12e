"""Exception types shared across the toolkit.

Every domain failure raises a subclass of :class:`PadicError`, so callers
(and the CLI) can separate mathematical failure modes from programming
errors.  Violations of checked relations are reported as data, never as
exceptions.
"""

from __future__ import annotations


class PadicError(Exception):
    """Base class for all domain errors raised by this package."""


class MismatchedRings(PadicError):
    """Operands live over different ring parameters, truncation orders
    or disk tags."""


class NonUnit(PadicError):
    """Inversion was requested for an element of positive valuation."""


class ZeroResidue(PadicError):
    """The Teichmuller lift of the zero residue class does not exist."""


class DenominatorMismatch(PadicError):
    """A rational exponent is not representable in the chosen
    ramification index."""


class ZeroAtPrecision(PadicError):
    """Every digit of the input vanished at working precision, so the
    requested quantity (valuation, slope, invariant) is undetermined."""


class PrecisionExhausted(PadicError):
    """An operation consumed all remaining digits of precision."""


class NonUnitConstantTerm(PadicError):
    """Series inversion needs a unit constant term."""


class InsufficientTruncation(PadicError):
    """The truncation order is too small for the requested operation."""


class NotPowerBounded(PadicError):
    """A coefficient escaped the ring of integers where integrality was
    required."""


class OutsideDomain(PadicError):
    """Evaluation point lies outside the open disk of convergence."""


class CoincidentNodes(PadicError):
    """Interpolation nodes collide at working precision."""


class Incompatible(PadicError):
    """CRT glueing obstruction: the two values disagree modulo the
    difference of the evaluation points.

    ``obstruction_valuation`` is the valuation of the mismatch,
    ``required_valuation`` the valuation it would need to reach.
    """

    def __init__(self, message, obstruction_valuation=None, required_valuation=None):
        super().__init__(message)
        self.obstruction_valuation = obstruction_valuation
        self.required_valuation = required_valuation


class ApparentlyReducible(PadicError):
    """No searched pair produced a nonzero lower-left product at the disk
    centre; a rank-2 reconstruction cannot be normalized."""


class BadConjugationImage(PadicError):
    """The distinguished involution letter is not represented by
    diag(-1, 1)."""


class NotTorsion(PadicError):
    """The module has positive free rank, so torsion invariants are
    infinite."""


class PrecisionAmbiguous(PadicError):
    """A specialized torsion generator vanished at precision but neither a
    root nor a nonzero valuation could be certified."""


class EmptyWindow(PadicError):
    """No admissible classical weight exists below the requested bound."""


class ParseError(PadicError):
    """A textual input did not match its documented grammar."""


class NotNormalized(PadicError):
    """A q-expansion record must have first coefficient 1."""


class LevelNotCoprime(PadicError):
    """The tame level of a q-expansion record shares a factor with p."""


class MissingCoefficient(PadicError):
    """The requested Fourier coefficient is absent from the record."""
