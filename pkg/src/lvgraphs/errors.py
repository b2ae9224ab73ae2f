"""Exception hierarchy shared by the graph, LV and numeric layers."""


class LVGraphError(ValueError):
    pass


class DuplicateVertex(LVGraphError):
    pass


class SelfLoop(LVGraphError):
    pass


class SkewConflict(LVGraphError):
    pass


class UnknownLabel(LVGraphError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)


class WeightDomainMismatch(LVGraphError):
    pass


class NotMorphism(LVGraphError):
    pass


class NotSurjective(LVGraphError):
    pass


class NotLVMorphism(LVGraphError):
    pass


class PreconditionFailed(LVGraphError):
    pass


class TooLarge(LVGraphError):
    pass


class BadParameter(LVGraphError):
    pass


class DimensionMismatch(LVGraphError):
    pass


class BlowUp(LVGraphError, ArithmeticError):
    """Raised when an integration leaves the finite range.

    The partial trajectory computed so far is kept on ``trajectory``.
    """

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory
