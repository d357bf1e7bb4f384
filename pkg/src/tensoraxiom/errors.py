"""Exception hierarchy shared by every tensoraxiom module."""


class TensorAxiomError(Exception):
    """Base class for all errors raised by the package."""


class MixedFields(TensorAxiomError, TypeError):
    pass


class DivisionByZero(TensorAxiomError, ZeroDivisionError):
    pass


class ShapeMismatch(TensorAxiomError, ValueError):
    pass


class SubspaceNotInAmbient(TensorAxiomError, ValueError):
    pass


class KernelConditionViolated(TensorAxiomError, ValueError):
    """A linear map does not vanish on the subspace it is asked to factor through."""


class MixedCarriers(TensorAxiomError, ValueError):
    """Free vectors over different factor-space pairs were combined."""


class DependentInput(TensorAxiomError, ValueError):
    pass


class FactorSpaceMismatch(TensorAxiomError, ValueError):
    pass


class FactorizationError(TensorAxiomError, ValueError):
    """No linear map through the tensor space reproduces the bilinear map."""


class InconsistentSystem(TensorAxiomError, ValueError):
    pass


class NonRealField(TensorAxiomError, TypeError):
    pass


class UnsupportedTag(TensorAxiomError, ValueError):
    pass


class EnumerationLimit(TensorAxiomError, ValueError):
    """Extreme-point enumeration would exceed the supported dimension."""


class NormOverflow(TensorAxiomError, OverflowError):
    pass


class ParseError(TensorAxiomError, ValueError):
    pass
