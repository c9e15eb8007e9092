"""Exception types raised by the geogate package."""


class GeoGateError(Exception):
    """Base class for all geogate errors."""


class InvalidDimensionError(GeoGateError):
    """Operator or state dimension is not acceptable."""


class ContractViolationError(GeoGateError):
    """A numerical contract (hermiticity, unitarity, positivity) failed."""


class InvalidNoiseError(GeoGateError):
    """Negative decoherence rate or malformed noise specification."""


class PathDomainError(GeoGateError):
    """Time argument outside the path's domain."""


class SingularPathError(GeoGateError):
    """Path parameters on the excluded set (chi in {0, pi/2, pi}, ...)."""


class ZeroAreaError(GeoGateError):
    """Requested drive has zero pulse area."""


class UndefinedPhaseError(GeoGateError):
    """Relative phase undefined (orthogonal endpoint states)."""


class PhaseSingularityError(GeoGateError):
    """Dynamical-phase integrand diverges (chi crossing pi/2)."""


class ConfigError(GeoGateError):
    """Malformed experiment configuration."""
