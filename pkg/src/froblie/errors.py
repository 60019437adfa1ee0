"""Exception types shared across the package."""


class FroblieError(Exception):
    """Base class for all library errors."""


class ShapeError(FroblieError):
    """Operands have incompatible shapes or parameters."""


class SingularMatrix(FroblieError):
    """Inversion requested for a matrix without an inverse."""


class NotClosed(FroblieError):
    """A 2-form expected to be closed is not."""


class NotSymplectic(FroblieError):
    """A 2-form expected to be nondegenerate has a nonzero radical."""


class NotOpenOrbit(FroblieError):
    """A covector expected to lie on an open coadjoint orbit does not."""


class NotInChart(FroblieError):
    """A point does not belong to the requested chart of the momentum fibration."""


class PairInvalid(FroblieError):
    """A claimed transverse Lagrangian pair fails its defining properties."""


class PreconditionViolated(FroblieError):
    """A mathematical precondition of an operation fails; the message names it."""
