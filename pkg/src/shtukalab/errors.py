"""Exception hierarchy shared by all modules."""


class ShtukaLabError(Exception):
    """Base class for every error raised by shtukalab."""


class NotPrime(ShtukaLabError, ValueError):
    pass


class ReducibleModulus(ShtukaLabError, ValueError):
    pass


class DegreeMismatch(ShtukaLabError, ValueError):
    pass


class TooLarge(ShtukaLabError, ValueError):
    pass


class DimensionMismatch(ShtukaLabError, ValueError):
    pass


class FieldMismatch(ShtukaLabError, ValueError):
    pass


class NotNilpotent(ShtukaLabError, ValueError):
    pass


class WeightIncompatibleRelation(ShtukaLabError, ValueError):
    pass


class NonConfluent(ShtukaLabError, AssertionError):
    pass


class QPowerLeavesSubspace(ShtukaLabError, ValueError):
    pass


class NotBalanced(ShtukaLabError, ValueError):
    pass


class CapExceeded(ShtukaLabError, ValueError):
    pass


class LengthMismatch(ShtukaLabError, ValueError):
    pass


class AxiomViolation(ShtukaLabError, AssertionError):
    """A structure tensor failed one of the Hopf algebra identities."""


class BadElement(ShtukaLabError, ValueError):
    """A field element string or coefficient list could not be parsed."""
