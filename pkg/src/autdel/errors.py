"""Exception types shared across the package."""


class InputError(ValueError):
    """Bad argument to a graph or group operation."""


class ResourceLimitError(RuntimeError):
    """A configured size cap would be exceeded."""


class Graph6ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class GroupSpecError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class GroupTableError(ValueError):
    """A Cayley table violates a group axiom; ``axiom`` names which one."""

    def __init__(self, axiom: str, detail: str = ""):
        msg = f"invalid group table: {axiom}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.axiom = axiom


class UnsupportedConstruction(ValueError):
    """No construction is available for the requested group pair."""
