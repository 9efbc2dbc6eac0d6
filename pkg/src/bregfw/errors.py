"""Exception types shared across the package."""


class BregfwError(Exception):
    """Base class for all package errors."""


class DomainError(BregfwError):
    """A point lies outside the domain of a reference function or objective."""


class DimensionMismatch(BregfwError):
    """Vector length does not match the expected dimension."""


class ZeroGradient(BregfwError):
    """Linear minimization requested for a (numerically) zero gradient."""


class InvalidCurvature(BregfwError):
    """A Bregman divergence evaluated to a negative value beyond tolerance."""


class BacktrackOverflow(BregfwError):
    """The smoothness-estimate doubling loop hit its safeguard limit."""

    def __init__(self, iteration, l_value, checks):
        self.iteration = iteration
        self.l_value = l_value
        self.checks = checks
        super().__init__(
            f"backtracking safeguard tripped at iteration {iteration}: "
            f"L={l_value:.6g} after {checks} checks"
        )


class MissingFStar(BregfwError):
    """An optimum-dependent check was requested without a reference value."""


class Incompatible(BregfwError):
    """Divergence domain excludes part of the feasible set."""


class ParseError(BregfwError):
    """Malformed input file."""


class LabelError(BregfwError):
    """Classification labels are not binary +/-1."""


class ConfigError(BregfwError):
    """Invalid experiment configuration."""
