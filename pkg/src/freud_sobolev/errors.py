"""Exception hierarchy shared by all modules."""


class FreudSobolevError(Exception):
    pass


class ParameterError(FreudSobolevError, ValueError):
    pass


class RangeError(FreudSobolevError, IndexError):
    pass


class DomainError(FreudSobolevError, ValueError):
    pass


class IterationError(FreudSobolevError, ArithmeticError):
    """An iterative method failed to converge.

    ``index`` names where it stopped (eigenvalue index, Newton step, ...).
    """

    def __init__(self, message, index=None, diagnostics=None):
        super().__init__(message)
        self.index = index
        self.diagnostics = diagnostics or {}


class PrecisionEscalation(FreudSobolevError, ArithmeticError):
    """Working precision was insufficient at ``index``.

    Raised with ``capped=True`` when escalation already hit its ceiling.
    """

    def __init__(self, message, index=None, prec=None, capped=False):
        super().__init__(message)
        self.index = index
        self.prec = prec
        self.capped = capped


class PoleError(FreudSobolevError, ZeroDivisionError):
    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point
