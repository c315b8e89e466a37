"""Exception types shared across the package."""


class FqpLabError(Exception):
    """Base class for errors raised by fqplab."""


class ResourceCapError(FqpLabError):
    """A configured size or search cap would be exceeded."""

    def __init__(self, what: str, needed: int, cap: int):
        super().__init__(f"resource cap: {what} needs {needed}, cap is {cap}")
        self.what = what
        self.needed = needed
        self.cap = cap


class AxiomError(FqpLabError):
    """Tables do not define a commutative unital ring (or module)."""


class RingStructureError(FqpLabError):
    """Internal consistency failure, usually a corrupted table."""


class SpecSyntaxError(FqpLabError):
    """A ring spec could not be parsed or evaluated."""

    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.message = message
        self.text = text
        self.pos = pos
        if pos is not None and text:
            message = f"{message} at position {pos}\n  {text}\n  {' ' * pos}^"
        super().__init__(message)
