"""Exception types raised across the package."""


class SklyaninError(Exception):
    pass


class ScalarError(SklyaninError, ValueError):
    """Malformed or unsupported exact scalar."""


class ForbiddenParameters(SklyaninError, ValueError):
    """Parameters lie in the excluded set; ``condition`` names the violated clause."""

    def __init__(self, condition: str, params=None):
        self.condition = condition
        self.params = params
        super().__init__(f"forbidden parameters {params}: {condition}")


class CapExceeded(SklyaninError):
    """A search or computation ran past its configured cap."""

    def __init__(self, what: str, cap: int):
        self.what = what
        self.cap = cap
        super().__init__(f"{what} exceeds cap {cap}")


class NotOnCurve(SklyaninError, ValueError):
    pass


class NotOnY(SklyaninError, ValueError):
    pass


class StructureError(SklyaninError, ValueError):
    """Input does not have the structure a routine requires (e.g. 3 does not divide n)."""


class InternalConsistencyError(SklyaninError, AssertionError):
    """Two independent computations disagreed."""


class FalsificationError(SklyaninError, AssertionError):
    """A claimed identity failed on an explicit witness."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)
