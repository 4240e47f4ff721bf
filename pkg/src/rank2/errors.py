"""Exception hierarchy shared across the package."""


class Rank2Error(Exception):
    """Base class for all package-specific failures."""


class NonDivisibleExponent(Rank2Error):
    """An exponent map cannot be divided by the requested power."""


class InexactDivision(Rank2Error):
    """Quantum-torus division stalled or left the admissible support box."""


class CapExceeded(Rank2Error):
    """A configured size cap (degree or cluster index) was exceeded."""


class NonTerminating(Rank2Error):
    """Standard-basis elimination ran past its iteration bound."""


class ConvergenceFailure(Rank2Error):
    """The bar-invariant correction loop ran past its iteration bound."""


class MalformedSupport(Rank2Error):
    """A basis element carried a monomial outside its guaranteed shape."""


class PreconditionViolated(Rank2Error):
    """Input violates a documented precondition of the operation."""


class NotFound(Rank2Error):
    """No real-root decomposition was found within the scan window."""


class NegativeEntry(Rank2Error):
    """A slice weight came out negative; the stratum does not exist."""


class EmptyVariety(Rank2Error):
    """Dimension data requested for an empty incidence variety."""


class OutOfRange(Rank2Error):
    """A stratum label lies outside its admissible range."""
