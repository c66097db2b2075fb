"""Exception hierarchy shared across the toolkit."""

from __future__ import annotations


class CaptError(Exception):
    """Base class for all toolkit errors."""


# === structural causal models ===


class ScmError(CaptError):
    """Base class for SCM construction and query errors."""


class CyclicGraphError(ScmError):
    """The causal graph contains a directed cycle."""


class UnknownVariableError(ScmError):
    """A query or CPT referenced a variable that is not in the graph."""


class OutOfRangeStateError(ScmError):
    """A state index fell outside a variable's arity."""


class CptValidationError(ScmError):
    """A CPT row is missing, unnormalized, or malformed."""


class StateSpaceTooLargeError(ScmError):
    """Exact enumeration was requested for a joint larger than the cap."""


class ZeroProbabilityEvidenceError(ScmError):
    """Conditioning event has probability zero under the model."""


class RoleShapeMismatchError(ScmError):
    """An SCM does not match the causal shape required by an identity."""


# === dataset generation ===


class GenerationError(CaptError):
    """An item could not be generated under the requested constraints."""


class UndecidableQueryError(CaptError):
    """Forward chaining decides neither the query nor its negation."""


class OntologyConflictError(CaptError):
    """A derivation assigns both a property and its negation."""


# === symbolization ===


class SymbolizationError(CaptError):
    """Base class for event-intervention errors."""


class EventNotFoundError(SymbolizationError):
    """A declared event string does not occur in the text to transform."""


class UncoveredPlaceholderError(SymbolizationError):
    """A placeholder in the text has no letter code in the assignment."""


class ExtractionFailedError(SymbolizationError):
    """The model-backed event estimator failed verification on every try."""

    def __init__(self, message: str, retry_count: int = 0):
        super().__init__(message)
        self.retry_count = retry_count


# === emission and evaluation ===


class EmitError(CaptError):
    """Dataset emission failed."""


class EventFreedomViolationError(EmitError):
    """A transformed record still contains pool event surface text."""


class EvalError(CaptError):
    """Evaluation could not run over the requested items or modes."""


class EndpointError(CaptError):
    """Transport or HTTP failure talking to a chat-completions endpoint."""


class ParseError(CaptError):
    """A reply or file could not be parsed into the expected shape."""


class ConfigError(CaptError):
    """Bad CLI or config-file input."""
