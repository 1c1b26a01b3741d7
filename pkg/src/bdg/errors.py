"""Exception types shared across the toolkit."""

from __future__ import annotations


class BdgError(Exception):
    """Base class for all toolkit errors."""


class NotStratified(BdgError):
    def __init__(self, path: tuple[int, ...], reason: str = "") -> None:
        self.path = tuple(path)
        super().__init__(f"not stratified at {list(self.path)}: {reason}")


class BadPath(BdgError):
    pass


class NotApplicable(BdgError):
    pass


class EmptyClause(BdgError):
    pass


class UnassignedVariable(BdgError):
    pass


class RuleError(BdgError):
    """Raised by apply_rule; `kind` names the failure class."""

    def __init__(self, kind: str, msg: str = "") -> None:
        self.kind = kind
        super().__init__(f"{kind}: {msg}" if msg else kind)


class ShapeMismatch(BdgError):
    pass


class DepthOverflow(BdgError):
    pass


class TooLarge(BdgError):
    pass


class IncompatibleStrategy(BdgError):
    pass


class NotWinning(BdgError):
    pass


class NotSatisfying(BdgError):
    pass


class PolarityViolation(BdgError):
    pass


class UncheckedProof(BdgError):
    pass


class UnboundLabel(BdgError):
    pass


class WrongDepth(BdgError):
    pass


class NonStandardForm(BdgError):
    pass


class UnboundInput(BdgError):
    pass
