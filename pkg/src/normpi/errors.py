"""Exception hierarchy shared by all modules."""


class NormPiError(Exception):
    """Base class for every error raised by normpi."""


class DegenerateBody(NormPiError):
    """The symmetric hull of the input has empty interior."""


class ZeroDirection(NormPiError):
    pass


class SingularMap(NormPiError):
    """A linear map is (numerically) not invertible."""


class DomainError(NormPiError):
    pass


class NoConvergence(NormPiError):
    """An iterative procedure hit its cap before reaching tolerance."""


class EmptyArc(NormPiError):
    pass


class NoRoot(NormPiError):
    pass


class PreconditionError(NormPiError):
    pass
