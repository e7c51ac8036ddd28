"""Exception hierarchy shared by the library and the CLI."""


class HybridParamError(Exception):
    """Root of all errors raised by hybridparam."""


class GraphInputError(HybridParamError, ValueError):
    """Malformed input: bad labels, non-edges, invalid files, epsilon out of range."""


class PreconditionError(HybridParamError, ValueError):
    """An operation precondition does not hold (e.g. M is not a modulator)."""


class UnsupportedError(HybridParamError):
    """Instance exceeds a size cap or asks for an unsupported parameter value."""


class InfeasibleInstanceError(HybridParamError):
    """The instance has no feasible solution."""


class OracleFaultError(HybridParamError, RuntimeError):
    """A decision oracle answered inconsistently during self-reduction."""


class FrameworkError(HybridParamError, RuntimeError):
    """An internal guarantee was violated; always a bug."""
