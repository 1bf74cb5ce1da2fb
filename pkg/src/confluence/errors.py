"""Error types shared across the package."""


class ConfluenceError(Exception):
    """Base class for package errors."""


class NonConvergence(ConfluenceError):
    """Adaptive quadrature exhausted its refinement budget."""


class BracketFailure(ConfluenceError):
    """Root bracketing failed; usually signals a corrupted kernel table."""


class QuadratureFailure(ConfluenceError):
    """Heat-potential quadrature exhausted its budget."""


class CFLViolation(ConfluenceError):
    """Supplied grid violates the time-step stability bound."""


class Instability(ConfluenceError):
    """Finite-difference solution left its physical bounds."""


class NoContact(ConfluenceError):
    """Trajectory never reached the front-interaction regime."""


class NoConfluence(ConfluenceError):
    """Finite-difference run never merged its fronts."""


class ResolutionError(ConfluenceError):
    """Grid too coarse for the requested layer width."""


class DegenerateFit(ConfluenceError):
    """Scaling fit impossible (values at the floor or missing)."""


class ParseError(ConfluenceError):
    """Malformed scenario file."""


class ValidationError(ConfluenceError):
    """Scenario violates a structural invariant."""
