"""Exception hierarchy shared by all qubitmix modules."""


class QubitMixError(Exception):
    """Base class for every error raised by this package."""


class InvalidStateError(QubitMixError, ValueError):
    """Input is not a valid qubit state (Bloch vector or density matrix)."""


class DomainError(QubitMixError, ValueError):
    """A scalar argument lies outside its admissible range."""


class DegenerateParameterError(DomainError):
    """Parameters at which a closed-form density is undefined (e.g. zero radius)."""


class ContractError(QubitMixError, ValueError):
    """Caller broke a precondition that is not about physics (e.g. unsorted input)."""


class NumericalFailureError(QubitMixError, RuntimeError):
    """Quadrature or another numerical routine failed to converge."""
