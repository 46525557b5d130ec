# Copyright (c) 2026, nearfield-noise contributors


class NearfieldError(Exception):
    """Base class for every error raised by the package."""



class DomainError(NearfieldError, ValueError):
    """Input outside the physical domain of an operation (omega = 0, z <= 0, ...)."""



class ConfigError(NearfieldError):
    """Invalid command line flags, config file or material table."""



class QuadratureError(NearfieldError):
    """Integration did not reach the requested tolerance within its budget.

    The best estimate is kept so callers can decide to use it anyway.
    """
    def __init__(self, message: str, value, error_estimate: float, evaluations: int):
        super().__init__(f"{message} (value={value!r}, error={error_estimate:.3e}, "
                         f"evaluations={evaluations})")
        self.value = value
        self.error_estimate = error_estimate
        self.evaluations = evaluations



class WignerError(NearfieldError):
    """Density matrix handed to the Wigner transform is not Hermitian."""



class SamplerError(NearfieldError):
    """Initial-state sampler returned something that is not an ensemble."""



class OutputError(NearfieldError):
    """Result document does not match the shipped schema."""
