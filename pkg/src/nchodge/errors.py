"""Exception types shared across the package.

Every error raised for a mathematically meaningful reason derives from
``NCHodgeError`` so the CLI can map it to exit code 2 ("could not compute").
Verdict-carrying errors (``NotExtendable``, ``NotSpecial``) are mapped to 1.
"""


class NCHodgeError(ValueError):
    pass


# exact algebra
class NotNilpotent(NCHodgeError):
    pass


class NotInvertible(NCHodgeError):
    pass


class ParseError(NCHodgeError):
    def __init__(self, msg, pos=None, text=None):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{msg}{where}")


class DivisionByZeroPolynomial(NCHodgeError):
    pass


# weight filtrations
class NilpotencyBoundViolated(NCHodgeError):
    pass


class InconsistentParity(NCHodgeError):
    pass


# connections
class SingularGauge(NCHodgeError):
    pass


class IrregularAtInfinity(NCHodgeError):
    pass


class IrrationalEigenvalues(NCHodgeError):
    pass


class NoFlatDressing(NCHodgeError):
    pass


class NonLaurentGauge(NCHodgeError):
    pass


class NotQuasiUnipotent(NCHodgeError):
    pass


class NotSpecial(NCHodgeError):
    def __init__(self, degrees):
        self.degrees = tuple(degrees)
        super().__init__(f"skewed extension is not trivial: splitting degrees {self.degrees}")


# rees / blow-up
class NotExtendable(NCHodgeError):
    def __init__(self, degrees):
        self.degrees = tuple(degrees)
        super().__init__(f"restriction to the exceptional line splits as {self.degrees}")


class UnsupportedExtension(NCHodgeError):
    pass


# torus models
class NotConvenient(NCHodgeError):
    pass


class DegenerateFaces(NCHodgeError):
    pass


class WindowTooSmall(NCHodgeError):
    pass


# curve models
class NotTame(NCHodgeError):
    pass


class CritMeetsHorizontal(NCHodgeError):
    pass


VERDICT_ERRORS = (NotExtendable, NotSpecial)
