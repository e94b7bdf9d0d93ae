"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ``InputError`` -> 1,
``PreconditionError`` -> 2, ``TheoremInconsistency`` -> 3.
"""


class ToricError(Exception):
    pass


class InputError(ToricError, ValueError):
    """Malformed or structurally invalid input."""


class PreconditionError(ToricError, ValueError):
    """Input is well formed but outside the supported setting."""


class DimensionMismatch(InputError):
    pass


class NoSolution(ToricError, ArithmeticError):
    pass


class Underdetermined(ToricError, ArithmeticError):
    pass


class NotFullDimensional(PreconditionError):
    pass


class OriginNotInterior(PreconditionError):
    pass


class UnboundedError(PreconditionError):
    """Raised for unbounded polyhedra; ``ray`` is a recession direction."""

    def __init__(self, ray, message=None):
        self.ray = tuple(ray)
        super().__init__(message or f"unbounded: recession direction {list(self.ray)}")


class InvalidFan(InputError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("invalid fan: " + "; ".join(self.diagnostics))


class NotSmooth(PreconditionError):
    pass


class NotComplete(PreconditionError):
    pass


class NotNef(PreconditionError):
    def __init__(self, certificate, message=None):
        self.certificate = certificate
        super().__init__(message or f"divisor not nef: witness {certificate.witness}")


class TheoremInconsistency(ToricError, AssertionError):
    pass
