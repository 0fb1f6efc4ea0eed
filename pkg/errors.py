"""
Error types raised by the texture analysis toolkit.
All of them derive from ValueError so callers that only care about bad input
can keep catching ValueError.
"""


class TextureAnalysisError(ValueError):
    """Base class for every error raised by this package."""


# --- Image ingestion ---

class PgmParseError(TextureAnalysisError):
    """PGM decoding failure at a known byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class UnsupportedFormat(PgmParseError):
    pass


class MalformedHeader(PgmParseError):
    pass


class MaxvalTooLarge(PgmParseError):
    pass


class TruncatedData(PgmParseError):
    pass


class InvalidPixelValue(PgmParseError):
    pass


class InvalidLevels(TextureAnalysisError):
    pass


class InvalidRoi(TextureAnalysisError):
    pass


# --- Fractal analysis ---

class EmptySupport(TextureAnalysisError):
    pass


class DegenerateRegression(TextureAnalysisError):
    pass


class ZeroMeasure(TextureAnalysisError):
    pass


# --- GLCM ---

class NoValidPairs(TextureAnalysisError):
    pass


class NotNormalized(TextureAnalysisError):
    pass


# --- Classification / evaluation ---

class TooFewSamples(TextureAnalysisError):
    pass


class DegenerateLabels(TextureAnalysisError):
    pass


class ShapeError(TextureAnalysisError):
    pass


class InvalidLabel(TextureAnalysisError):
    pass


class NoVoters(TextureAnalysisError):
    pass


class EmptyMatrix(TextureAnalysisError):
    pass


class ModelFormatError(TextureAnalysisError):
    pass


# --- Synthesis / configuration ---

class InvalidSpec(TextureAnalysisError):
    pass


class ConfigError(TextureAnalysisError):
    pass
