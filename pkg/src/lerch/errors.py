"""Exception hierarchy shared by the library and the CLI."""


class LerchError(Exception):
    """Base class for every error raised by this package."""


class NonInvertible(LerchError, ValueError):
    def __init__(self, value, modulus, index=None):
        self.value = value
        self.modulus = modulus
        self.index = index
        where = "" if index is None else f" at index {index}"
        super().__init__(f"{value} is not invertible modulo {modulus}{where}")


class NotUnitError(LerchError, ValueError):
    pass


class BadModulus(LerchError, ValueError):
    pass


class InternalError(LerchError, ArithmeticError):
    pass


class ConsistencyError(LerchError, AssertionError):
    pass


class DivisibilityError(LerchError, ArithmeticError):
    pass


class UnknownCheck(LerchError, KeyError):
    pass


class NotApplicable(LerchError, ValueError):
    pass


class RangeError(LerchError, ValueError):
    pass


class CheckpointMismatch(LerchError, ValueError):
    pass
