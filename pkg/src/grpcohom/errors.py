"""Exception types shared across the package."""


class GrpcohomError(Exception):
    """Base class for package-specific failures."""


class CollectionBudgetExceeded(GrpcohomError):
    """Rewriting step budget ran out; presentation is likely malformed."""


class InconsistentPresentation(GrpcohomError):
    """Power-commutator presentation failed its overlap consistency test."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(f"{len(self.violations)} violated overlap relation(s)")


class ConstructionError(GrpcohomError):
    """A family constructor produced a presentation that fails validation."""


class InvalidFamilyParameters(GrpcohomError, ValueError):
    """Family parameters outside the documented domain."""


class InvalidAction(GrpcohomError, ValueError):
    """Proposed action on a cyclic normal subgroup is not a homomorphism."""


class InvalidGroupSpec(GrpcohomError, ValueError):
    """Unparseable or out-of-domain group specification string."""


class InconsistentProfile(GrpcohomError, ValueError):
    """Tensor-order profile is not realizable by any abelian p-group."""


class ComputationalLimit(GrpcohomError):
    """A degree/step/time budget was hit; carries whatever was completed."""

    def __init__(self, message, partial=None, completed_degree=None):
        super().__init__(message)
        self.partial = partial
        self.completed_degree = completed_degree
