"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A constructor or command received an out-of-range parameter."""


class DomainError(ValueError):
    """An evaluation point (or a finite-difference stencil around it) left
    the domain where the object is defined."""


class DegenerateJetError(ValueError):
    """A surface jet failed the immersion requirement |Xs x Xt| > 0."""


class SamplingError(RuntimeError):
    """Every node of a requested grid failed to evaluate."""
