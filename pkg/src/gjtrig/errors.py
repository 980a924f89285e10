"""Exception hierarchy shared by every module."""


class GJTrigError(Exception):
    """Base class for all library errors."""


class DimensionError(GJTrigError, ValueError):
    pass


class DegeneracyError(GJTrigError, ValueError):
    pass


class NonRealizableError(GJTrigError, ValueError):
    """Cosine data that no set of unit vectors can produce."""


class NotSphericalError(GJTrigError, ValueError):
    pass


class IndeterminateRatioError(GJTrigError, ZeroDivisionError):
    pass


class NotCollapsedError(GJTrigError, ValueError):
    pass


class SamplingError(GJTrigError, RuntimeError):
    pass


class DomainError(GJTrigError, ValueError):
    pass


class PoleError(GJTrigError, ZeroDivisionError):
    pass


class ConstraintError(GJTrigError, ValueError):
    pass


class InadmissibleModulusError(GJTrigError, ValueError):
    pass


class TangentError(GJTrigError, RuntimeError):
    pass


class NotSymmetricError(GJTrigError, ValueError):
    pass


class SeparatrixError(GJTrigError, ValueError):
    pass


class SurfaceError(GJTrigError, ValueError):
    pass


class StiffnessError(GJTrigError, RuntimeError):
    pass
