"""Exception types shared across the package."""


class BoolspecError(Exception):
    pass


class SizeGuard(BoolspecError):
    """Requested object exceeds a configured size limit."""


class NotBoolean(BoolspecError):
    """Spectrum does not reconstruct to a +/-1 valued function."""


class DependentMasks(BoolspecError):
    """Parity masks are linearly dependent over GF(2)."""


class SingularMatrix(BoolspecError):
    """Matrix is not invertible over GF(2)."""


class Undefined(BoolspecError):
    """Bound is undefined for the given arguments."""


class NoValidThreshold(BoolspecError):
    """No threshold yields a dimension > 1."""


class InvalidSpec(BoolspecError):
    """Family parameters violate a validity constraint."""


class NoClosedForm(BoolspecError):
    """No explicit spectrum expansion is available for this family."""


class OutOfRange(BoolspecError):
    """Witness parameters violate a precondition."""
