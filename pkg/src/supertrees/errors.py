"""Exception hierarchy shared by all modules."""


class SupertreeError(ValueError):
    """Base class for every domain error raised by this package."""


class InvalidDimension(SupertreeError):
    pass


class NonPositiveWeight(SupertreeError):
    pass


class NegativeProduct(SupertreeError):
    pass


class OracleTooLarge(SupertreeError):
    pass


class EmptyEnsemble(SupertreeError):
    pass


class PoleHit(SupertreeError, ZeroDivisionError):
    pass


class OutOfWindow(SupertreeError):
    pass


class NotConverged(SupertreeError, ArithmeticError):
    pass


class WeightUnderflow(SupertreeError):
    pass


class DegenerateInput(SupertreeError):
    pass


class QuadratureFailure(SupertreeError, ArithmeticError):
    pass
