"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class LagrangianError(Exception):
    """Base class for all errors raised by this package."""


class InvariantError(LagrangianError, ValueError):
    """Input data violates a structural invariant (unitarity, symmetry, ...)."""


class ScopeError(LagrangianError, ValueError):
    """Request lies outside what the computation is defined for."""


class DegeneracyError(LagrangianError, ArithmeticError):
    """A point that should be regular has a (numerically) singular differential."""


class VerificationError(LagrangianError, AssertionError):
    """Two independent computations of the same quantity disagree."""
