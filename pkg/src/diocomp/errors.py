class DioError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class PolynomialSyntaxError(DioError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ReservedIndexError(DioError, ValueError):
    pass


class MissingAssignmentError(DioError, KeyError):
    def __str__(self):
        return self.args[0] if self.args else "missing assignment"


class NegativeCoefficientError(DioError, ValueError):
    pass


class TowerRepresentationError(DioError, ArithmeticError):
    """Result lies outside the exactly representable tower class."""


class ExtensionError(DioError, ValueError):
    pass


class CompileError(DioError, ValueError):
    pass


class BudgetError(DioError, ArithmeticError):
    pass


class FormatError(DioError, ValueError):
    pass


class RenderError(DioError, ValueError):
    pass
