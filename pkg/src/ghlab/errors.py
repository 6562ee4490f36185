"""Exception hierarchy shared by every ghlab module."""


class GHLabError(ValueError):
    """Base class for all errors raised by ghlab."""


class MetricAxiomError(GHLabError):
    """A matrix violates one of the metric-space axioms.

    ``indices`` holds the witnessing 0-based point indices.
    """

    kind = "MetricAxiomError"

    def __init__(self, *indices: int):
        self.indices = tuple(indices)
        super().__init__(f"{self.kind}{self.indices}")


class NotSquare(MetricAxiomError):
    kind = "NotSquare"


class NotSymmetric(MetricAxiomError):
    kind = "NotSymmetric"


class NonzeroDiagonal(MetricAxiomError):
    kind = "NonzeroDiagonal"


class NonpositiveOffDiagonal(MetricAxiomError):
    kind = "NonpositiveOffDiagonal"


class TriangleViolation(MetricAxiomError):
    kind = "TriangleViolation"


class NonpositiveScale(GHLabError):
    pass


class EmptySubset(GHLabError):
    pass


class SizeMismatch(GHLabError):
    pass


class SizeTooLargeForEnumeration(GHLabError):
    pass


class EpsilonOutOfRange(GHLabError):
    pass


class NotInBall(GHLabError):
    pass


class PropertyCheckFailed(AssertionError):
    """An internal postcondition failed. Never expected under valid inputs."""


class NotBlockStructured(GHLabError):
    pass


class PsiNotIdentity(GHLabError):
    pass


class NotGeneralPosition(GHLabError):
    pass


class MetricViolation(AssertionError):
    """A remapped metric failed validation. Never expected under valid inputs."""


class NotAPermutation(GHLabError):
    pass


class WitnessConstructionFailed(GHLabError):
    pass


class NotInCone(GHLabError):
    pass


class InvalidClusterSpec(GHLabError):
    pass


class GenerationFailed(GHLabError):
    pass
