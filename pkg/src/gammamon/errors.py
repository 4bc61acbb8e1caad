"""Exception hierarchy.

Every failure that carries evidence stores it in ``witness`` so callers
(and the CLI) can print the offending elements.
"""


class GammaMonoidError(Exception):
    """Base class for everything raised by this package."""

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


# -- validation of tables ---------------------------------------------------

class ValidationError(GammaMonoidError, ValueError):
    pass


class BadShape(ValidationError):
    pass


class NotIdentity(ValidationError):
    pass


class NoIdentity(ValidationError):
    pass


class NotCommutative(ValidationError):
    pass


class NotAssociative(ValidationError):
    pass


class NoInverse(ValidationError):
    pass


class NotAbelian(ValidationError):
    pass


class IdentityLaw(ValidationError):
    pass


class CompositionLaw(ValidationError):
    pass


class AdditivityLaw(ValidationError):
    pass


class NotPermutation(ValidationError):
    pass


class NotHomomorphism(ValidationError):
    pass


# -- preconditions and hypotheses ---------------------------------------------

class PreconditionViolated(GammaMonoidError, ValueError):
    pass


class NotSubmonoid(PreconditionViolated):
    pass


class NotAnIdeal(PreconditionViolated):
    pass


class NotSurjective(PreconditionViolated):
    pass


class GroupMismatch(PreconditionViolated):
    pass


class HypothesisViolated(PreconditionViolated):
    pass


class NotRefinementMonoid(HypothesisViolated):
    pass


class NotAtom(PreconditionViolated):
    pass


class NotCompositionSeries(PreconditionViolated):
    pass


class BadParams(PreconditionViolated):
    pass


class SizeLimit(GammaMonoidError):
    pass


class WellDefinednessFailure(GammaMonoidError, AssertionError):
    """A quotient operation depended on the chosen representative.

    Raised only when an internal invariant is broken; for a verified
    order-ideal this indicates a bug.
    """


class ParseError(GammaMonoidError, ValueError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column
