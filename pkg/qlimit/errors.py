"""Custom exception types for qlimit."""


class QLimitError(Exception):
    """Base exception for qlimit."""

    pass


class DomainError(QLimitError):
    """Arguments outside the domain of a function."""

    pass


class PoleError(QLimitError):
    """Argument within the pole guard of an elliptic gamma pole."""

    def __init__(self, k: int, j: int, message: str | None = None):
        self.k = k
        self.j = j
        super().__init__(message or f"argument is at the pole p^-{k} q^-{j}")


class AccuracyError(QLimitError):
    """A truncation or quadrature did not reach the requested accuracy."""

    pass


class DivergenceError(QLimitError):
    """A series fails the ratio test."""

    pass


class DegenerateError(QLimitError):
    """A specialization makes a denominator vanish."""

    pass


class GenericityError(QLimitError):
    """Parameters are too close to a non-generic configuration."""

    pass


class ContourError(QLimitError):
    """A pole lies on the integration contour."""

    def __init__(self, message: str, suggested_radius: float):
        self.suggested_radius = suggested_radius
        super().__init__(f"{message} (try radius {suggested_radius:.6g})")


class ContractError(QLimitError):
    """Caller broke the documented precondition."""

    pass


class ReductionError(QLimitError):
    """Orbit reduction did not terminate."""

    pass


class UnknownIdentityError(QLimitError):
    """No catalog entry with the requested id."""

    pass


class DrawError(QLimitError):
    """No admissible parameter draw found."""

    pass


class TraceError(QLimitError):
    """A limit trace failed to converge."""

    pass
