"""Exception hierarchy shared by all modules."""


class SympGradeError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(SympGradeError, ValueError):
    pass


class ChainViolation(ShapeError):
    pass


class ModulusTooSmall(ShapeError):
    pass


class ShapeMismatch(SympGradeError, ValueError):
    pass


class NotHyperbolic(SympGradeError, ValueError):
    pass


class NotOrthogonal(SympGradeError, ValueError):
    pass


class SingularSubgroup(SympGradeError, ValueError):
    pass


class BoundExceeded(SympGradeError, RuntimeError):
    pass


class NotCoprime(SympGradeError, ValueError):
    pass


class DivisibilityViolation(SympGradeError, AssertionError):
    """A root-of-unity exponent was not expressible in the expected base.

    Never caused by valid input; seeing it means a bug.
    """


class IllFormedHom(SympGradeError, ValueError):
    pass


class NotIsometry(SympGradeError, ValueError):
    pass


class NotUnimodular(SympGradeError, ValueError):
    pass


class IncompatiblePairs(SympGradeError, ValueError):
    pass


class NotMaximalOrder(SympGradeError, ValueError):
    pass


class RootOrderIncompatible(SympGradeError, ValueError):
    pass


class NotScalarCommutator(SympGradeError, AssertionError):
    pass


class EigenMismatch(SympGradeError, AssertionError):
    pass


class StarMismatch(SympGradeError, AssertionError):
    pass


class NotPureQ(SympGradeError, ValueError):
    pass


class OrderOne(SympGradeError, ValueError):
    pass


class NotNormalizing(SympGradeError, ValueError):
    pass


class AmbiguousMatch(SympGradeError, RuntimeError):
    pass
