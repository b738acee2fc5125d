"""Exception types shared across the package."""

__all__ = ["BreakdownDetected", "MatrixMarketError"]


class BreakdownDetected(RuntimeError):
    """A (near-)zero denominator halted a moment recurrence.

    Carries the symbolic name of the offending denominator, the iteration
    index ``k`` at which it died, and the value/scale pair that failed the
    relative floor test.
    """

    def __init__(self, denominator, k, value=None, scale=None):
        self.denominator = denominator
        self.k = k
        self.value = value
        self.scale = scale
        msg = f"breakdown at k={k}: denominator {denominator}"
        if value is not None:
            msg += f" = {value:.3e}"
            if scale:
                msg += f" (local scale {scale:.3e})"
        super().__init__(msg)


class MatrixMarketError(ValueError):
    """Malformed Matrix Market input; ``line_no`` locates the offending line."""

    def __init__(self, path, line_no, reason):
        self.path = str(path)
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"{path}:{line_no}: {reason}")
