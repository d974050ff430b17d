"""Exception hierarchy shared by all modules."""


class EhrGraphError(Exception):
    """Base class for every error raised by the package."""


class InputError(EhrGraphError):
    """Invalid input data (graph, triangulation, point, ...)."""


class MalformedGraph(InputError):
    pass


class NotOneThree(InputError):
    pass


class Disconnected(InputError):
    pass


class NotTree(InputError):
    pass


class InvalidShape(InputError):
    pass


class TooLarge(InputError):
    pass


class NotEulerian(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class InvalidTrail(InputError):
    pass


class PointNotInQ(InputError):
    pass


class PointOutside(InputError):
    pass


class OddLeafSet(InputError):
    pass


class NotSphere(InputError):
    pass


class MissingLayout(InputError):
    pass


class BudgetExceeded(EhrGraphError):
    """Enumeration visited more search nodes than the configured budget."""


class DegreeMismatch(EhrGraphError):
    """Interpolated constituent disagrees with a held-out sample."""


class CanonicalizationFailed(EhrGraphError):
    pass
