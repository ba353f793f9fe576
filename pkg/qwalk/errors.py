"""Exception types raised across the toolkit. Only the CLI turns them into exit codes."""


class QuantumWalkError(Exception):
    """Base class for every error raised by qwalk."""


class LatticeBoundaryError(QuantumWalkError):
    """Walker support reached the lattice edge; the capacity t_max is too small."""


class NormalizationError(QuantumWalkError):
    """A state or distribution that must be normalized is not."""


class DisorderError(QuantumWalkError, ValueError):
    """Invalid disorder specification (degree, kind or map layout)."""


class FitError(QuantumWalkError, ValueError):
    """A power-law fit has too few usable points or invalid data."""


class ConfigError(QuantumWalkError, ValueError):
    """Invalid run configuration. `field` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message

    def __reduce__(self):
        return (type(self), (self.field, self.message))


class EnsembleMemberError(QuantumWalkError):
    """One ensemble member failed; the whole ensemble is aborted."""

    def __init__(self, member: int, seed: int, cause: BaseException):
        super().__init__(f"ensemble member {member} (seed {seed}) failed: {cause}")
        self.member = member
        self.seed = seed
        self.cause = cause

    # joblib ships worker exceptions back through pickle
    def __reduce__(self):
        return (type(self), (self.member, self.seed, self.cause))
