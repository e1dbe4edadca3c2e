"""Exception hierarchy shared by all modules."""


class PlasmonError(Exception):
    """Base class for every error raised by plasmonres."""


class ConfigError(PlasmonError):
    pass


class NonPositiveIndex(PlasmonError, ValueError):
    pass


# special functions
class NoConvergence(PlasmonError, ArithmeticError):
    pass


class NearPole(PlasmonError, ArithmeticError):
    pass


class DomainError(PlasmonError, ValueError):
    pass


# secular / root finding
class PoleProximity(PlasmonError, ArithmeticError):
    pass


class BoundaryZero(PlasmonError, ArithmeticError):
    """A zero sits on (or numerically too close to) a contour edge."""


class AmbiguousWinding(PlasmonError, ArithmeticError):
    pass


class NewtonDiverged(PlasmonError, ArithmeticError):
    pass


# symbol calculus
class BranchPoint(PlasmonError, ValueError):
    pass


class NoSolution(PlasmonError, ValueError):
    pass


class DivisionNearZero(PlasmonError, ArithmeticError):
    pass


class NoBracket(PlasmonError, ValueError):
    pass


# counting / fields
class EmptyFiber(PlasmonError, ValueError):
    """The plasmon region is empty at some boundary point."""


class IncompleteScan(PlasmonError, RuntimeError):
    pass


class GridTooCoarse(PlasmonError, ValueError):
    pass
