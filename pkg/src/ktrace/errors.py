"""Exception types raised across the package."""


class KTraceError(Exception):
    pass


class DivergentOmega(KTraceError):
    """Omega of a character with positive constant term."""


class PoleAtOrigin(KTraceError):
    """A rational function is not holomorphic at z = 0."""


class WindowExceeded(KTraceError):
    """A fermionic index falls outside the materialized window."""


class UnstableLimit(KTraceError):
    """Determinant ratio did not stabilize between consecutive sizes."""


class RepeatedWeights(KTraceError):
    """A torus representation has a weight of multiplicity > 1."""


class LengthViolation(KTraceError):
    """A Schur component is longer than the allowed number of rows."""


class ParseError(KTraceError):
    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += " (expected one of: " + ", ".join(self.expected) + ")"
        super().__init__(detail)
