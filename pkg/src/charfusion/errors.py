"""Exception types shared across the package."""


class CapExceeded(RuntimeError):
    """A configured size cap would be exceeded; the computation was refused."""

    def __init__(self, what: str, value: int, cap: int):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what}: {value} exceeds cap {cap}")


class CosetEnumerationError(CapExceeded):
    """Coset table overflow, reported with the number of live cosets."""

    def __init__(self, live: int, cap: int):
        super().__init__("coset enumeration live cosets", live, cap)
        self.live = live


class NotASubgroup(ValueError):
    pass


class NotNormal(ValueError):
    pass


class NotAPGroup(ValueError):
    pass


class TableInconsistency(ArithmeticError):
    """A computed character table failed an exact consistency check."""


class FusionViolation(ValueError):
    """A character is not constant on a pair of G-fused elements."""

    def __init__(self, a, b, message: str = ""):
        self.pair = (a, b)
        super().__init__(message or f"character separates G-conjugate elements {a} and {b}")


class VerdictMismatch(AssertionError):
    """The rank criterion contradicts a theorem whose hypotheses hold."""
