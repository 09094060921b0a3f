"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class BourbakiError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class AxiomViolation(BourbakiError):
    def __init__(self, axiom: str, witness: tuple, message: str | None = None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"{axiom} violated, witness {witness!r}")


class UnknownElement(BourbakiError, KeyError):
    def __init__(self, element):
        self.element = element
        BourbakiError.__init__(self, f"unknown element {element!r}")

    def __str__(self) -> str:
        return self.args[0]


class CycleDetected(BourbakiError):
    def __init__(self, cycle: tuple):
        self.cycle = cycle
        super().__init__(f"cover relation has a cycle: {' -> '.join(map(str, cycle))}")


class EmptySubset(BourbakiError):
    pass


class HostMismatch(BourbakiError):
    pass


class TooLarge(BourbakiError):
    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"size {size} exceeds the exhaustive limit {limit}")


class NonCanonical(BourbakiError):
    pass


class OrdinalParseError(BourbakiError):
    def __init__(self, position: int, expected: str, text: str = ""):
        self.position = position
        self.expected = expected
        super().__init__(f"at position {position} of {text!r}: expected {expected}")


class NotTotal(BourbakiError):
    pass


class NotProgressive(BourbakiError):
    def __init__(self, witness, image):
        self.witness = witness
        self.image = image
        super().__init__(f"map is not progressive: f({witness!r}) = {image!r} is not >= {witness!r}")


class NotAscending(BourbakiError):
    def __init__(self, witness: tuple):
        self.witness = witness
        super().__init__(f"candidate is not strictly ascending at {witness!r}")


class BaseMismatch(BourbakiError):
    pass


class BudgetExhausted(BourbakiError):
    """Raised with the partial trace when the iteration budget runs out."""

    def __init__(self, trace):
        self.trace = trace
        super().__init__(f"budget exhausted after {len(trace.stages)} stages")


class AccelerationUnavailable(BourbakiError):
    def __init__(self, trace):
        self.trace = trace
        super().__init__("successor budget hit and the provider has no orbit lub for this map")


class InvalidCfg(BourbakiError):
    pass


class SchemaError(Exception):
    """Malformed input document (CLI exit code 2)."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")
