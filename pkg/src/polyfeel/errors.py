"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all engine failures."""


class PatternError(EngineError):
    """Malformed pattern document or track data."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class StructureError(EngineError):
    """Inadmissible metric-structure request (bad kind/length combination)."""


class ParameterError(EngineError):
    """Swing parameters outside the admissible range."""


class MeasurementError(EngineError):
    """Unusable timing-measurement input."""


class AnalysisError(EngineError):
    """Analysis cannot run on the given track (e.g. no events)."""


class MidiExportError(EngineError):
    """Timeline cannot be encoded as a standard MIDI file."""
